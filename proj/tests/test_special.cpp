#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chebx/primes.hpp"
#include "chebx/special.hpp"

using namespace chebx;

static const PrecisionContext kCtx(192, 4096);

TEST_CASE("zeta closed forms at even integers") {
    Ball pi = Ball::pi(256);
    REQUIRE(eval_zeta(2.0, kCtx).contains(pi * pi / 6));
    REQUIRE(eval_zeta(4.0, kCtx).contains(pi.pow_ui(4) / 90));
}

TEST_CASE("zeta(3) against the direct-summation oracle") {
    // oracle: sum_{n<=N} n^-3 with tail in [1/(2(N+1)^2), 1/(2N^2)]
    const long N = 1000000;
    long double s = 0;
    for (long n = N; n >= 1; --n) s += 1.0L / ((long double)n * n * n);
    double lo = (double)s + 0.5 / ((double)(N + 1) * (N + 1)) - 1e-13;
    double hi = (double)s + 0.5 / ((double)N * N) + 1e-13;
    Ball z = eval_zeta(3.0, kCtx);
    REQUIRE(z.lower_d() >= lo);
    REQUIRE(z.upper_d() <= hi);
}

TEST_CASE("zeta domain errors") {
    REQUIRE_THROWS_AS(eval_zeta(1.0, kCtx), std::domain_error);
    REQUIRE_THROWS_AS(eval_zeta(0.5, kCtx), std::domain_error);
}

TEST_CASE("zeta'/zeta(2) against the von Mangoldt series oracle") {
    // oracle route: -sum_{n<=1e6} Lambda(n)/n^2 with the stated tail bound
    Ball oracle = zeta_logderiv_series(2.0, 1000000, PrecisionContext(128, 512));
    Ball v = eval_zeta_logderiv(2.0, kCtx);
    REQUIRE(v.overlaps(oracle));
    // known leading digits -0.5699...
    REQUIRE(v.center_d() == Catch::Approx(-0.569961).epsilon(1e-4));
}

TEST_CASE("zeta'/zeta decay at s=40 against the two-term truncation") {
    // -(log 2)/2^40 dominates; allow 10x relative slack for the remainder
    Ball v = eval_zeta_logderiv(40.0, kCtx);
    double lead = -std::log(2.0) / std::pow(2.0, 40.0);
    REQUIRE(v.upper_d() < 0);
    REQUIRE(std::fabs(v.center_d() - lead) < 10.0 * std::fabs(lead));
}

TEST_CASE("zeta'/zeta is negative on (1, infinity)") {
    for (double s : {1.5, 2.0, 3.0, 7.5, 21.0}) REQUIRE(eval_zeta_logderiv(s, kCtx).upper_d() < 0);
    REQUIRE_THROWS_AS(eval_zeta_logderiv(1.2, kCtx), std::domain_error);
}

TEST_CASE("zeta decreases towards 1 on [1.5, inf)") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(1.5, 40.0);
    for (int i = 0; i < 200; ++i) {
        double s1 = u(rng), s2 = u(rng);
        if (s1 > s2) std::swap(s1, s2);
        Ball z1 = eval_zeta(s1, kCtx), z2 = eval_zeta(s2, kCtx);
        REQUIRE(z2.upper_d() <= z1.upper_d() + 2 * z1.radius() + 2 * z2.radius());
    }
}

TEST_CASE("digamma closed forms") {
    Ball g = Ball::euler_gamma(256);
    Ball l2 = Ball::exact_si(2, 256).log();
    REQUIRE(eval_digamma(1.0, kCtx).contains(-g));
    REQUIRE(eval_digamma(0.5, kCtx).contains(-g - l2 * 2));
    REQUIRE(eval_digamma(1.5, kCtx).contains(Ball::exact_si(2, 256) - g - l2 * 2));
    REQUIRE_THROWS_AS(eval_digamma(0.0, kCtx), std::domain_error);
}

TEST_CASE("digamma recurrence psi(x+1) - psi(x) = 1/x") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        double x = u(rng);
        Ball xb = Ball::exact_d(x, 192);
        Ball diff = eval_digamma(xb + 1, kCtx) - eval_digamma(xb, kCtx) - 1 / xb;
        REQUIRE(diff.contains_zero());
    }
}

TEST_CASE("log integral basics") {
    REQUIRE(eval_log_integral(2.0, kCtx).contains_zero());
    Ball li73 = eval_log_integral(73.0, kCtx);
    Ball excess = li73 - Ball::exact_si(73, 192) / Ball::exact_si(73, 192).log();
    REQUIRE(excess.upper_d() <= 6.1);
    REQUIRE_THROWS_AS(eval_log_integral(1.5, kCtx), std::domain_error);
}

TEST_CASE("log integral against a composite-Simpson oracle at x=1000") {
    // Simpson with 10^6 panels; |f''''| <= (6 L^-2 + 22 L^-3 + 42 L^-4 + 24 L^-5)/u^4
    const int NP = 1000000;
    const double a = 2.0, b = 1000.0, h = (b - a) / NP;
    long double acc = 1.0L / std::log(a) + 1.0L / std::log(b);
    for (int i = 1; i < NP; ++i) acc += (i % 2 ? 4.0L : 2.0L) / std::log(a + h * i);
    double simpson = (double)(acc * h / 3.0L);
    double L = std::log(2.0);
    double f4max = (6 / (L * L) + 22 / (L * L * L) + 42 / std::pow(L, 4) + 24 / std::pow(L, 5)) /
                   std::pow(2.0, 4);
    double err = (b - a) * std::pow(h, 4) / 180.0 * f4max + 1e-9;
    Ball li = eval_log_integral(1000.0, kCtx);
    REQUIRE(li.upper_d() >= simpson - err);
    REQUIRE(li.lower_d() <= simpson + err);
}

TEST_CASE("prime sieve") {
    REQUIRE(prime_sieve(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
    REQUIRE(prime_sieve(2) == std::vector<std::uint32_t>{2});
    REQUIRE(prime_sieve(73).size() == 21);
    // enumeration oracle via trial division
    auto naive = [](std::uint32_t limit) {
        std::vector<std::uint32_t> out;
        for (std::uint32_t n = 2; n <= limit; ++n) {
            bool p = true;
            for (std::uint32_t q = 2; q * q <= n; ++q)
                if (n % q == 0) { p = false; break; }
            if (p) out.push_back(n);
        }
        return out;
    };
    REQUIRE(prime_sieve(1000) == naive(1000));
    REQUIRE_THROWS_AS(prime_sieve(1), std::domain_error);
    REQUIRE_THROWS_AS(prime_sieve(kSieveCap + 1), std::domain_error);
}

TEST_CASE("psi, theta, pi accumulators") {
    auto primes = prime_sieve(100);
    auto v1 = psi_theta_pi(1.0, primes);
    REQUIRE(v1.psi.value() == 0.0);
    REQUIRE(v1.theta.value() == 0.0);
    REQUIRE(v1.pi == 0);

    auto v10 = psi_theta_pi(10.0, primes);
    // prime powers <= 10: 2,3,4,5,7,8,9 -> psi = log 2520
    REQUIRE(v10.pi == 4);
    REQUIRE(std::fabs(v10.psi.value() - std::log(2520.0)) <= v10.psi.error_budget() + 1e-12);
    REQUIRE(v10.psi.error_budget() <= 1e-9 * (double)v10.psi.terms);

    auto v73 = psi_theta_pi(73.0, primes);
    double s = (double)v73.pi - v73.theta.value() / std::log(73.0);
    REQUIRE(s <= 5.65);
}

TEST_CASE("psi - theta <= 1.43 sqrt(x) up to 1e5") {
    auto sieve = sieve_to(100000);
    double diff = 0;
    for (std::uint64_t pp : prime_powers(100000, sieve.primes, 2)) {
        std::uint32_t base = 0;
        for (std::uint32_t p : sieve.primes) {
            if ((std::uint64_t)p * p > pp) break;
            if (pp % p == 0) { base = p; break; }
        }
        REQUIRE(base != 0);
        diff += std::log((double)base);
        REQUIRE(diff <= 1.43 * std::sqrt((double)pp));
    }
}

TEST_CASE("convex quadrature refines monotonically") {
    auto f = [](const Ball& u) { return 1 / u.log(); };
    Ball a = Ball::exact_si(2, 128), b = Ball::exact_si(500, 128);
    Ball coarse = integrate_convex(f, a, b, 1e-2, 128).value;
    Ball fine = integrate_convex(f, a, b, 1e-5, 128).value;
    REQUIRE(coarse.contains(fine));
}
