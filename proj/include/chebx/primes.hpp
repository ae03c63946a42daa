#ifndef CHEBX_PRIMES_HPP
#define CHEBX_PRIMES_HPP

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "chebx/ball.hpp"

namespace chebx {

inline constexpr std::uint64_t kSieveCap = 100000000; // 10^8

// Exact, complete, sorted list of primes <= limit.
inline std::vector<std::uint32_t> prime_sieve(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("prime_sieve: limit must be >= 2");
    if (limit > kSieveCap) throw std::domain_error("prime_sieve: limit exceeds cap");
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back((std::uint32_t)i);
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

// Sieve output together with the limit it is complete up to.
struct Sieve {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;
};

inline Sieve sieve_to(std::uint64_t limit) {
    return Sieve{limit, prime_sieve(limit)};
}

// Kahan-compensated sum of log terms with a certified absolute error budget.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    std::uint64_t terms = 0;

    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        abs_sum += std::fabs(v);
        ++terms;
    }
    // per-term: <=2 ulp from libm log, plus compensated-summation error
    double error_budget() const { return 5.0e-16 * abs_sum + 1e-300; }
    double value() const { return sum; }
};

struct ChebyshevValues {
    CompensatedSum psi;   // sum of log p over prime powers p^m <= x
    CompensatedSum theta; // sum of log p over primes p <= x
    std::uint64_t pi = 0; // number of primes <= x
};

// psi_Q(x), theta_Q(x), pi(x) for the rational field.
inline ChebyshevValues psi_theta_pi(double x, const std::vector<std::uint32_t>& primes) {
    ChebyshevValues v;
    if (x < 2) return v;
    for (std::uint32_t p : primes) {
        if (p > x) break;
        double lp = std::log((double)p);
        v.theta.add(lp);
        v.pi++;
        double pk = (double)p;
        while (pk <= x) {
            v.psi.add(lp);
            pk *= p;
            if (pk > 1e18) break;
        }
    }
    return v;
}

// Ball re-evaluation for near-miss escalation.
inline Ball psi_ball(std::uint64_t x, const std::vector<std::uint32_t>& primes, mpfr_prec_t prec) {
    Ball s = Ball::exact_si(0, prec);
    for (std::uint32_t p : primes) {
        if (p > x) break;
        Ball lp = Ball::exact_si((long)p, prec).log();
        std::uint64_t pk = p;
        while (pk <= x) {
            s = s + lp;
            if (pk > x / p) break;
            pk *= p;
        }
    }
    return s;
}

inline Ball theta_ball(std::uint64_t x, const std::vector<std::uint32_t>& primes, mpfr_prec_t prec) {
    Ball s = Ball::exact_si(0, prec);
    for (std::uint32_t p : primes) {
        if (p > x) break;
        s = s + Ball::exact_si((long)p, prec).log();
    }
    return s;
}

// Ascending list of prime powers p^m <= limit (m >= 1), sorted.
inline std::vector<std::uint64_t> prime_powers(std::uint64_t limit,
                                               const std::vector<std::uint32_t>& primes,
                                               unsigned min_exponent = 1) {
    std::vector<std::uint64_t> out;
    for (std::uint32_t p : primes) {
        if (p > limit) break;
        std::uint64_t pk = p;
        unsigned m = 1;
        while (pk <= limit) {
            if (m >= min_exponent) out.push_back(pk);
            if (pk > limit / p) break;
            pk *= p;
            ++m;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace chebx

#endif
