// Acceptance suite: runs every criterion of the finite verification at its
// stated tolerance and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "chebx/bounds.hpp"
#include "chebx/envelope.hpp"
#include "chebx/quadfield.hpp"
#include "chebx/verifier.hpp"
#include "chebx/zerocount.hpp"

using namespace chebx;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    const char* name;
    Clock::time_point t0 = Clock::now();
    explicit Criterion(const char* n) : name(n) {}
    void report(bool pass, const std::string& detail = "") {
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[%s] %-58s (%7.2fs)%s%s\n", pass ? "PASS" : "FAIL", name, secs,
                    detail.empty() ? "" : " ", detail.c_str());
        std::fflush(stdout);
        if (!pass) ++g_failures;
    }
};

bool within_runtime(const Criterion& c, double limit) {
    return std::chrono::duration<double>(Clock::now() - c.t0).count() < limit;
}

} // namespace

int main() {
    auto coeffs = envelope::reference_coefficients();

    // 1. coefficient-table reproduction
    {
        Criterion c("1. coefficient table: >= 47/49 exact, deltas <= 2e-7, < 60 s");
        auto sol = envelope::solve_and_round(PrecisionContext(512, 8192));
        bool deltas_ok = true;
        for (auto& d : sol.deltas) deltas_ok = deltas_ok && (abs(d) <= 2);
        bool pass = sol.exact_matches >= 47 && deltas_ok && within_runtime(c, 60.0);
        c.report(pass, "exact=" + std::to_string(sol.exact_matches) + "/49 at " +
                           std::to_string(sol.bits_used) + " bits");
    }

    // 2. envelope certification + fault injection
    {
        Criterion c("2. envelope certified; faulted a1 rejected with witness, < 10 min");
        auto cert = envelope::certify_envelope(coeffs);
        auto bad = coeffs;
        bad[0] -= mpq_class(1, 1000);
        auto cert_bad = envelope::certify_envelope(bad);
        bool pass = cert.certified && !cert_bad.certified && cert_bad.witness_u.has_value() &&
                    within_runtime(c, 600.0);
        c.report(pass, std::string("roots inner/outer = ") + std::to_string(cert.inner.root_count) +
                           "/" + std::to_string(cert.outer.root_count));
    }

    // 3. the four constant sums
    {
        Criterion c("3. constant sums within the published windows");
        auto s = envelope::compute_constant_sums(coeffs, PrecisionContext(320, 4096));
        bool pass = s.sum_a.lower_d() > 1.3479 && s.sum_a.upper_d() < 1.3480 &&
                    s.sum_rational.upper_d() <= 7.786 && s.sum_digamma_half.upper_d() <= -0.421 &&
                    s.sum_digamma_next.upper_d() <= 0.392;
        c.report(pass);
    }

    // 4. epsilon constants
    {
        Criterion c("4. epsilon_1..4 within the published windows");
        PrecisionContext ctx(320, 4096);
        Ball e1 = envelope::compute_epsilon(1, coeffs, ctx);
        Ball e2 = envelope::compute_epsilon(2, coeffs, ctx);
        Ball e3 = envelope::compute_epsilon(3, coeffs, ctx);
        Ball e4 = envelope::compute_epsilon(4, coeffs, ctx);
        bool pass = e1.lower_d() >= 5.529 && e2.lower_d() >= 0.751 && e3.lower_d() >= 0.313 &&
                    e4.lower_d() >= 0.147 && e4.upper_d() <= 0.151;
        c.report(pass);
    }

    // 5. S(n) monotonicity to the full threshold
    {
        Criterion c("5. S(n+1) < S(n) for n <= 85597 plus group check, < 5 min");
        auto rep = envelope::verify_S_monotone(coeffs, 85597);
        bool pass = rep.ok && within_runtime(c, 300.0);
        c.report(pass, rep.first_violation >= 0
                           ? "violation at n=" + std::to_string(rep.first_violation)
                           : "");
    }

    // 6. zero-count constants table
    {
        Criterion c("6. constants table: 36 entries, fallback dominated, c2 check");
        PrecisionContext ctx(160, 4096);
        bool pass = true;
        for (auto& e : zerocount::reproduce_table(ctx)) {
            if (!(e.d2_ok && e.d3_ok && e.dominates)) {
                pass = false;
                std::printf("    entry d1=%s t0=%s failed (d2=%.6f tab %.3f, d3=%.6f tab %.3f)\n",
                            e.d1.c_str(), e.t0.c_str(), e.d2.center_d(), e.d2_table,
                            e.d3.center_d(), e.d3_table);
            }
        }
        auto k = zerocount::canonical_constants(ctx);
        Ball c2 = k.d2prime + k.d1 * (Ball::pi(160) * 2).log();
        pass = pass && c2.upper_d() <= 2.491;
        c.report(pass);
    }

    // 7. discrete checkpoint suite
    {
        Criterion c("7. sign checkpoints, sixteen cases, trivial ranges, < 1 min");
        auto rep = verify::run_checkpoints();
        for (auto& ck : rep.checks)
            if (!ck.pass) std::printf("    failed: %s (margin %g)\n", ck.name.c_str(), ck.margin);
        c.report(rep.all_pass && within_runtime(c, 60.0),
                 std::to_string(rep.checks.size()) + " checks");
    }

    // 8. exhaustive quadratic sweep
    {
        Criterion c("8. quadratic sweep |d| < 300 exhaustive, < 15 min");
        auto rep = verify::verify_quadratic(300, 100000, true);
        long viol = 0;
        for (auto& f : rep.fields) viol += f.violations;
        bool pass = rep.all_pass && viol == 0 && rep.max_x1 <= 100000 && within_runtime(c, 900.0);
        c.report(pass, std::to_string(rep.fields.size()) + " fields, max x1 = " +
                           std::to_string(rep.max_x1) + ", escalations = " +
                           std::to_string(rep.total_escalations));
    }

    // 9. corollary constants
    {
        Criterion c("9. corollary constant checks on the [193, 1e6] grid");
        auto rep = verify::corollary_constants_check();
        for (auto& ck : rep.checks.checks)
            if (!ck.pass) std::printf("    failed: %s (margin %g)\n", ck.name.c_str(), ck.margin);
        c.report(rep.checks.all_pass);
    }

    // 10. property suites
    {
        Criterion c("10a. enclosure soundness of the evaluation kernel");
        std::mt19937 rng(20240808);
        PrecisionContext lo(96, 4096), hi(224, 4096);
        bool pass = true;
        auto check = [&](const Ball& a, const Ball& b) {
            pass = pass && a.overlaps(b) && a.inflated(a.radius()).contains(b);
        };
        std::uniform_real_distribution<double> zs(1.02, 30.0), ds(0.05, 20.0), ls(2.0, 300.0);
        for (int i = 0; i < 1000; ++i) {
            double s = zs(rng);
            check(eval_zeta(s, lo), eval_zeta(s, hi));
        }
        for (int i = 0; i < 1000; ++i) {
            double s = 1.5 + ds(rng);
            check(eval_zeta_logderiv(s, lo), eval_zeta_logderiv(s, hi));
        }
        for (int i = 0; i < 1000; ++i) {
            double x = ds(rng);
            check(eval_digamma(x, lo), eval_digamma(x, hi));
        }
        for (int i = 0; i < 50; ++i) {
            double x = ls(rng);
            check(eval_log_integral(x, lo, 1e-5), eval_log_integral(x, hi, 1e-6));
        }
        c.report(pass);
    }
    {
        Criterion c("10b. digamma recurrence on 100 random points");
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> u(0.01, 10.0);
        PrecisionContext ctx(192, 4096);
        bool pass = true;
        for (int i = 0; i < 100; ++i) {
            double x = u(rng);
            Ball xb = Ball::exact_d(x, 192);
            pass = pass && (eval_digamma(xb + 1, ctx) - eval_digamma(xb, ctx) - 1 / xb).contains_zero();
        }
        c.report(pass);
    }
    {
        Criterion c("10c. psi - theta <= 1.43 sqrt(x) up to 1e6");
        auto sieve = sieve_to(1000000);
        double diff = 0;
        bool pass = true;
        for (std::uint64_t pp : prime_powers(1000000, sieve.primes, 2)) {
            std::uint32_t base = 0;
            for (std::uint32_t p : sieve.primes) {
                if ((std::uint64_t)p * p > pp) break;
                if (pp % p == 0) { base = p; break; }
            }
            diff += std::log((double)base);
            pass = pass && diff <= 1.43 * std::sqrt((double)pp);
        }
        c.report(pass);
    }
    {
        Criterion c("10d. block inequality for |d| < 300, p <= 1000, l <= 5");
        auto primes = prime_sieve(1000);
        bool pass = true;
        for (long d : verify::fundamental_discriminants(300)) {
            field::QuadraticField F(d);
            for (std::uint32_t p : primes)
                for (unsigned ell = 1; ell <= 5 && pass; ++ell)
                    pass = pass && field::prime_power_block_check(F, p, ell);
        }
        c.report(pass);
    }
    {
        Criterion c("10e. parametric-vs-expanded B_a identity on 200 points");
        std::mt19937 rng(31337);
        std::uniform_real_distribution<double> ux(std::log(61.0), std::log(1e5));
        std::uniform_real_distribution<double> ulc(std::log(3.0), 50.0);
        std::uniform_int_distribution<int> un(2, 32);
        std::uniform_int_distribution<int> u01(0, 1);
        PrecisionContext ctx(160, 2048);
        mpfr_prec_t wp = 160;
        Ball pi = Ball::pi(wp);
        bool pass = true;
        for (int i = 0; i < 200 && pass; ++i) {
            double x = std::exp(ux(rng));
            double lc = ulc(rng);
            int n = un(rng);
            int dc = u01(rng);
            int sg = dc ? n / 2 : u01(rng);
            int r1 = u01(rng) * 2;
            double eps = bounds::epsilon_policy(n);
            Ball xb = Ball::exact_d(x, wp), lcb = Ball::exact_d(lc, wp), eb = Ball::exact_d(eps, wp);
            bounds::ClassProfile cls{dc, dc ? 1 : 2, sg, eps};
            Ball T = bounds::T_of_x(xb);
            Ball route1 = bounds::Ba(xb, T, n, lcb, cls, r1, eb, ctx);
            auto dec = [&](const char* s) { return Ball::from_str(s, wp); };
            Ball lx = xb.log(), sx = xb.sqrt(), lt = (T / (pi * 2)).log();
            Ball route2 = ((dec("5.2") / (pi * 2) / lx).log() / pi - dec("0.296") +
                           dec("1.858") / T + dec("1.075") / sx) *
                              lcb / n +
                          lt.square() / (pi * 2) - lx.square() / (pi * 8) +
                          (2 / pi + dec("1.858") / T) * lt - dec("3.633") + dec("7.729") / T -
                          dec("1.501") / sx +
                          ((xb + 2) / T + (1 - sg) * lx + Ball::exact_si(sg, wp) + dec("8.276") -
                           dec("0.744") * n * dc - dec("0.527") * r1) /
                              (sx * n) +
                          (dec("7.834") + dec("3.779") / T - (dec("0.406") + 1 / (T * 4)) * r1 - eb) / n;
            pass = pass && route1.overlaps(route2);
        }
        c.report(pass);
    }

    std::printf("%s: %d criterion failure(s)\n", g_failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE OK",
                g_failures);
    return g_failures ? 1 : 0;
}
