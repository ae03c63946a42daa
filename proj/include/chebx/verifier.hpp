#ifndef CHEBX_VERIFIER_HPP
#define CHEBX_VERIFIER_HPP

// Orchestration of the finite verification: the discrete sign checkpoints,
// the sixteen lower-bound cases, the trivial-bound ranges (with embedded
// minimal discriminants for degrees 2..8 and a Minkowski floor plus a
// certified bridge over [47, 61] for degrees 9..13), the per-field x1
// thresholds, the exhaustive quadratic sweep, and the corollary constant
// checks.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "chebx/ball.hpp"
#include "chebx/bounds.hpp"
#include "chebx/primes.hpp"
#include "chebx/quadfield.hpp"
#include "chebx/special.hpp"

namespace chebx {
namespace verify {

struct Check {
    std::string name;
    double margin = 0; // certified upper endpoint of the quantity that must be negative,
                       // or lower endpoint of the quantity that must be nonnegative
    bool pass = false;
};

struct CheckpointReport {
    std::vector<Check> checks;
    bool all_pass = true;

    void add(std::string name, double margin, bool pass) {
        checks.push_back({std::move(name), margin, pass});
        all_pass = all_pass && pass;
    }
};

// ---------------------------------------------------------------------------
// double-precision scanning versions of the test functions (certified ball
// evaluations confirm every sign that matters)
// ---------------------------------------------------------------------------
namespace scan {

inline double T_of_x(double x) { return 5.2 * std::sqrt(x) / std::log(x); }

inline double La(double x, double T, int n, double lc, int sg, int dc, int r1, double eps) {
    double sx = std::sqrt(x), lx = std::log(x);
    double lt = std::log(T / (2 * M_PI));
    double F = sx * (lt / M_PI + 1.704 + 1.858 / T) + 1.075;
    double G = sx * (lt * lt / (2 * M_PI) + (2 / M_PI + 1.858 / T) * lt - 1.633 + 7.729 / T) - 1.501;
    double H1 = (x + 2) / T + sx * (7.834 + 3.779 / T) + 8.276;
    double H2 = -sx * ((0.406 + 1 / (4 * T)) * r1 + eps) + (1 - sg) * lx + sg - 0.744 * n * dc -
                0.527 * r1;
    return F * lc + G * n + H1 + H2;
}

inline double DSg(double x, double T, int n, double lc, int sg, int dc) {
    double lx = std::log(x), lt = std::log(T / (2 * M_PI));
    return 2 * (sg - 1) * (lx - 1) + 3 - 0.445 * n + 2.0 * n * dc -
           std::sqrt(x) / T * (1.167 + 0.743 * lc / n + 0.743 * lt) * n;
}

inline double Ba(double x, double T, int n, double lc, int sg, int dc, int r1, double eps) {
    double lx = std::log(x);
    return La(x, T, n, lc, sg, dc, r1, eps) / (n * std::sqrt(x)) - (lx / (2 * M_PI) + 2) * lc / n -
           (lx * lx / (8 * M_PI) + 2);
}

inline double Bb(double x, double T, int n, double lc, int sg, int dc, int r1, double eps,
                 int g_order, double frak) {
    double b = Ba(x, T, n, lc, sg, dc, r1, eps) + DSg(x, T, n, lc, sg, dc) / (n * std::sqrt(x));
    if (g_order <= 1) return b;
    int p = bounds::smallest_prime_divisor(g_order);
    return b + (double)g_order / p * (frak / n) * std::log(x) / std::sqrt(x);
}

} // namespace scan

// ---------------------------------------------------------------------------
// checkpoint suite
// ---------------------------------------------------------------------------

// Known minimal absolute discriminants by degree (classical tables).
inline double min_log_disc(int degree) {
    switch (degree) {
        case 2: return std::log(3.0);
        case 3: return std::log(23.0);
        case 4: return std::log(117.0);
        case 5: return std::log(1609.0);
        case 6: return std::log(9747.0);
        case 7: return std::log(184607.0);
        case 8: return std::log(1257728.0);
        default: throw std::domain_error("min_log_disc: only degrees 2..8 embedded");
    }
}

// Minkowski's bound: log|d| >= 2 log(n^n / n!) + 2 floor(n/2) log(pi/4).
inline Ball minkowski_log_disc(int n, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    mpz_class fact(1);
    for (int i = 2; i <= n; ++i) fact *= i;
    Ball nn = Ball::exact_si(n, wp).log() * n - Ball::from_mpz(fact.get_mpz_t(), wp).log();
    Ball sig = (Ball::pi(wp) / 4).log() * (2 * (n / 2));
    return nn * 2 + sig;
}

// trivial upper bound at one prime power:
//   sqrt(x) [ (log x/2pi + 2) lDL/n + (log^2 x/8pi + 2) ] >= psi_Q(x) - x/n
inline Ball trivial_upper_margin(std::uint64_t pp, const Ball& ldl, int n, bool drop_xn,
                                 const Sieve& sieve, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball x = Ball::exact_si((long)pp, wp);
    Ball pi = Ball::pi(wp);
    Ball lx = x.log();
    Ball lhs = x.sqrt() * ((lx / (pi * 2) + 2) * ldl / n + (lx.square() / (pi * 8) + 2));
    Ball rhs = psi_ball(pp, sieve.primes, wp);
    if (!drop_xn) rhs = rhs - x / n;
    return lhs - rhs;
}

// check the trivial upper bound for all prime powers < x_max; returns the
// worst certified margin (negative = failure), or the first failing prime
// power via *first_fail.
inline double trivial_upper_sweep(const Ball& ldl, int n, std::uint64_t x_max, bool drop_xn,
                                  const Sieve& sieve, const PrecisionContext& ctx,
                                  std::uint64_t* first_fail = nullptr) {
    double worst = 1e300;
    if (first_fail) *first_fail = 0;
    for (std::uint64_t pp : prime_powers(x_max - 1, sieve.primes)) {
        Ball m = trivial_upper_margin(pp, ldl, n, drop_xn, sieve, ctx);
        worst = std::min(worst, m.lower_d());
        if (m.lower_sign() < 0 && first_fail && !*first_fail) *first_fail = pp;
    }
    return worst;
}

// trivial lower bound: (log x/2pi + 2) lDL + (log^2 x/8pi + 2) n >= sqrt(x)
// certified over the whole real interval [1, 16 n^2] by adaptive subdivision.
inline bool trivial_lower_range(const Ball& ldl, int n, const PrecisionContext& ctx,
                                double* worst_margin = nullptr) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    auto margin = [&](const Ball& x) {
        Ball lx = x.log();
        return (lx / (pi * 2) + 2) * ldl + (lx.square() / (pi * 8) + 2) * n - x.sqrt();
    };
    struct Iv { double a, b; };
    std::vector<Iv> stack{{1.0, 16.0 * n * n}};
    double worst = 1e300;
    long steps = 0;
    while (!stack.empty()) {
        Iv iv = stack.back();
        stack.pop_back();
        mpfr_t lo, hi;
        mpfr_inits2(wp, lo, hi, (mpfr_ptr) nullptr);
        mpfr_set_d(lo, iv.a, MPFR_RNDD);
        mpfr_set_d(hi, iv.b, MPFR_RNDU);
        Ball x = Ball::from_endpoints(lo, hi, wp);
        mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
        Ball m = margin(x);
        if (m.lower_sign() > 0) {
            worst = std::min(worst, m.lower_d());
            continue;
        }
        if (++steps > 200000 || iv.b - iv.a < 1e-9) {
            if (worst_margin) *worst_margin = m.lower_d();
            return false;
        }
        double mid = 0.5 * (iv.a + iv.b);
        stack.push_back({iv.a, mid});
        stack.push_back({mid, iv.b});
    }
    if (worst_margin) *worst_margin = worst;
    return true;
}

// certified "B_a < 0 for all real x in [xa, xb]" at a fixed lDL floor,
// together with dBa/dLC < 0 there (so any lDL above the floor also passes).
inline bool ba_bridge(double xa, double xb, int n, const Ball& ldl_floor,
                      const PrecisionContext& ctx, double* worst = nullptr) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    bounds::ClassProfile adverse{0, 2, 0, 0.0};
    auto eval = [&](double a, double b, Ball& ba_out, Ball& dcoef_out) {
        mpfr_t lo, hi;
        mpfr_inits2(wp, lo, hi, (mpfr_ptr) nullptr);
        mpfr_set_d(lo, a, MPFR_RNDD);
        mpfr_set_d(hi, b, MPFR_RNDU);
        Ball x = Ball::from_endpoints(lo, hi, wp);
        mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
        Ball T = bounds::T_of_x(x);
        ba_out = bounds::Ba(x, T, n, ldl_floor, adverse, 0, Ball::exact_si(0, wp), ctx);
        // per-lDL coefficient of B_a with T = T(x):
        //   (1/pi) log((c/2pi)/log x) - 0.296 + 1.858/T + 1.075/sqrt(x), all over n
        Ball lt = (Ball::from_str("5.2", wp) / (pi * 2) / x.log()).log();
        dcoef_out = lt / pi - Ball::from_str("0.296", wp) + Ball::from_str("1.858", wp) / T +
                    Ball::from_str("1.075", wp) / x.sqrt();
    };
    struct Iv { double a, b; };
    std::vector<Iv> stack{{xa, xb}};
    double w = -1e300;
    long steps = 0;
    while (!stack.empty()) {
        Iv iv = stack.back();
        stack.pop_back();
        Ball ba(wp), dc(wp);
        eval(iv.a, iv.b, ba, dc);
        if (ba.upper_sign() < 0 && dc.upper_sign() < 0) {
            w = std::max(w, ba.upper_d());
            continue;
        }
        if (++steps > 20000 || iv.b - iv.a < 1e-9) {
            if (worst) *worst = ba.upper_d();
            return false;
        }
        double mid = 0.5 * (iv.a + iv.b);
        stack.push_back({iv.a, mid});
        stack.push_back({mid, iv.b});
    }
    if (worst) *worst = w;
    return true;
}

// The full checkpoint suite of the finite verification.
inline CheckpointReport run_checkpoints(const PrecisionContext& ctx = PrecisionContext(128, 2048)) {
    CheckpointReport rep;
    mpfr_prec_t wp = ctx.working_bits;
    auto log_of = [&](long v) { return Ball::exact_si(v, wp).log(); };
    auto eps = [&](int n) { return Ball::from_str(n == 1 ? "5.529" : n == 2 ? "0.751" : "0.313", wp); };
    auto zero = Ball::exact_si(0, wp);

    auto ba_check = [&](const char* name, double x, int n, Ball lc, int sg, int dc, int r1,
                        Ball e) {
        Ball xb = Ball::exact_d(x, wp);
        Ball T = bounds::T_of_x(xb);
        bounds::ClassProfile cls{dc, dc ? 1 : 2, sg, 0.0};
        Ball v = bounds::Ba(xb, T, n, lc, cls, r1, e, ctx);
        rep.add(name, v.upper_d(), v.upper_sign() < 0);
    };
    auto bb_check = [&](const char* name, double x, int n, Ball lc, int sg, int dc, int r1,
                        Ball e, int g_order, const Ball* frak = nullptr) {
        Ball xb = Ball::exact_d(x, wp);
        Ball T = bounds::T_of_x(xb);
        bounds::ClassProfile cls{dc, dc ? 1 : 2, sg, 0.0};
        Ball v = bounds::Bb(xb, T, n, lc, cls, r1, e, g_order, ctx, frak);
        rep.add(name, v.upper_d(), v.upper_sign() < 0);
    };

    // --- upper-bound sign checkpoints (Steps 4..6) ---
    ba_check("Ba(61,T,4,4) [nL>=4 anchor]", 61, 4, Ball::exact_si(4, wp), 0, 0, 0, zero);
    ba_check("Ba(71,T,3,log49) [nL=3,r1=3]", 71, 3, log_of(49), 0, 0, 0, eps(3));
    ba_check("Ba(71,T,3,log23) [nL=3,r1=1]", 71, 3, log_of(23), 2, 1, 1, eps(3));
    ba_check("Ba(607,T,2,log300) [nL=2,large disc]", 607, 2, log_of(300), 1, 0, 0, eps(2));
    ba_check("Ba(1e5,T,2,log3) [nL=2,large x]", 1e5, 2, log_of(3), 1, 0, 0, eps(2));

    // --- lower-bound sign checkpoints ---
    bb_check("Bb(144,T,3,log23,|G|=3)", 144, 3, log_of(23), 2, 1, 1, eps(3), 3);
    bb_check("Bb(598,T,2,log300,|G|=2)", 598, 2, log_of(300), 1, 1, 0, eps(2), 2);
    bb_check("Bb(1e5,T,2,log3,|G|=2)", 1e5, 2, log_of(3), 1, 1, 0, eps(2), 2);

    // --- the sixteen lower-bound cases at x = 16 nL^2 ---
    auto sixteen = [&](int n, int g) {
        double x = 16.0 * n * n;
        std::string nm = "case nL=" + std::to_string(n) + " |G|=" + std::to_string(g) +
                         " at x=" + std::to_string((long)x);
        bb_check(nm.c_str(), x, n, Ball::exact_si(n, wp), n / 2, 1, 0, zero, g);
    };
    sixteen(32, 32);
    for (int g = 4; g <= 30; g += 2) sixteen(g, g);
    sixteen(4, 2);

    // --- trivial upper-bound ranges ---
    Sieve sieve = sieve_to(700);
    auto triv_u = [&](const char* name, const Ball& ldl, int n, std::uint64_t xmax, bool strong) {
        double worst = trivial_upper_sweep(ldl, n, xmax, strong, sieve, ctx);
        rep.add(name, worst, worst >= 0);
    };
    triv_u("trivial upper nL=2 (lDL>=log 3, x<71)", log_of(3), 2, 71, false);
    triv_u("trivial upper nL=3 (lDL>=log 23, x<71)", log_of(23), 3, 71, false);
    triv_u("trivial upper nL=4 (lDL>=log 117, x<61)", log_of(117), 4, 61, false);
    triv_u("trivial upper nL=5 (lDL>=log 1609, x<71)", log_of(1609), 5, 71, false);
    triv_u("trivial upper nL=6 (lDL>=log 9747, x<71)", log_of(9747), 6, 71, false);
    triv_u("trivial upper nL=7 (lDL>=log 184607, x<71)", log_of(184607), 7, 71, false);
    triv_u("trivial upper nL=8 (lDL>=log 1257728, x<71)", log_of(1257728), 8, 71, false);
    triv_u("trivial upper nL>=14 (lDL/nL>=2.12, strong, x<71)",
           Ball::from_str("2.12", wp) * 14, 14, 71, true);
    triv_u("trivial upper nL=2 (lDL>=log 300, x<607)", log_of(300), 2, 607, false);

    // degrees 9..13: Minkowski floor covers x < 47, then a certified bridge
    // of B_a < 0 over [47, 61] (decreasing in lDL there) closes the range.
    for (int n = 9; n <= 13; ++n) {
        Ball floor = minkowski_log_disc(n, ctx);
        std::uint64_t first_fail = 0;
        double worst = trivial_upper_sweep(floor, n, 47, false, sieve, ctx, &first_fail);
        std::string nm = "trivial upper nL=" + std::to_string(n) + " (Minkowski floor, x<47)";
        rep.add(nm, worst, worst >= 0 && first_fail == 0);
        double bw = 0;
        bool ok = ba_bridge(47.0, 61.0, n, floor, ctx, &bw);
        nm = "bridge Ba<0 on [47,61] nL=" + std::to_string(n) + " (Minkowski floor)";
        rep.add(nm, bw, ok);
        // floor must also dominate nL so the x >= 61 regime inherits lDL >= nL
        Ball diff = floor - Ball::exact_si(n, wp);
        nm = "Minkowski floor >= nL for nL=" + std::to_string(n);
        rep.add(nm, diff.lower_d(), diff.lower_sign() > 0);
    }

    // --- trivial lower-bound ranges: x <= 16 nL^2 for nL = 2..32 ---
    for (int n = 2; n <= 32; ++n) {
        Ball ldl = n == 2 ? log_of(3) : Ball::exact_si(n, wp);
        double worst = 0;
        bool ok = trivial_lower_range(ldl, n, ctx, &worst);
        std::string nm = "trivial lower nL=" + std::to_string(n) + " (x<=16 nL^2)";
        rep.add(nm, worst, ok);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// per-field thresholds and sweep
// ---------------------------------------------------------------------------

struct FieldCheckConditions {
    field::QuadraticField F;
    double eps2 = 0.751;

    explicit FieldCheckConditions(long d) : F(d) {}

    bool both_negative_scan(double x) const {
        double T = scan::T_of_x(x);
        double lc = F.ldl();
        double ba = scan::Ba(x, T, 2, lc, F.sg_nontrivial(), 0, F.r1, eps2);
        double bb = scan::Bb(x, T, 2, lc, F.sg_trivial(), 1, F.r1, eps2, 2, (double)F.omega());
        return ba < 0 && bb < 0;
    }

    bool both_negative_ball(double x, const PrecisionContext& ctx) const {
        mpfr_prec_t wp = ctx.working_bits;
        Ball xb = Ball::exact_d(x, wp);
        Ball T = bounds::T_of_x(xb);
        Ball lc = Ball::exact_si(std::labs(F.d), wp).log();
        Ball e2 = Ball::from_str("0.751", wp);
        bounds::ClassProfile nontriv{0, 2, F.sg_nontrivial(), 0};
        bounds::ClassProfile triv{1, 1, F.sg_trivial(), 0};
        Ball frak = Ball::exact_si(F.omega(), wp);
        Ball ba = bounds::Ba(xb, T, 2, lc, nontriv, F.r1, e2, ctx);
        Ball bb = bounds::Bb(xb, T, 2, lc, triv, F.r1, e2, 2, ctx, &frak);
        return ba.upper_sign() < 0 && bb.upper_sign() < 0;
    }
};

// smallest integer x >= 61 with both sign conditions certified
inline long find_x1(long d, std::uint64_t x_max = 100000,
                    const PrecisionContext& ctx = PrecisionContext(128, 1024)) {
    FieldCheckConditions c(d);
    for (std::uint64_t x = 61; x <= x_max; ++x) {
        if (c.both_negative_scan((double)x) && c.both_negative_ball((double)x, ctx)) return (long)x;
    }
    throw std::runtime_error("find_x1: no threshold below x_max for d=" + std::to_string(d));
}

struct FieldVerdict {
    long d = 0;
    long x1 = 0;
    bool pass = false;
    long violations = 0;
    long near_miss_escalations = 0;
    double min_margin = 1e300; // over all four inequality sides, after +1 shifts
    long argmin_x = 0;
    std::string first_violation;
};

// every integer x in [1, x1]:
//   -B+1 <= psi_L(x) - x <= B
//   -B+1 <= 2 psi_C(x) - x  and  2 psi(C;x) - x <= B   (nontrivial class)
// with B = sqrt(x) [ (log x/2pi + 2) lDL + 2 (log^2 x/8pi + 2) ].
inline FieldVerdict verify_field(long d, long x1, const Sieve& sieve, bool exhaustive = true,
                                 const PrecisionContext& ctx = PrecisionContext(128, 1024)) {
    field::QuadraticField F(d);
    FieldVerdict out;
    out.d = d;
    out.x1 = x1;
    double lc = F.ldl();

    struct Event { std::uint64_t x; double d_psil, d_psic, d_psifull; };
    std::vector<Event> events;
    for (std::uint32_t p : sieve.primes) {
        if ((long)p > x1) break;
        double lp = std::log((double)p);
        field::PrimeClass pc = field::classify_prime(F.d, p);
        std::uint64_t pk = p;
        unsigned m = 1;
        while ((long)pk <= x1) {
            Event e{pk, 0, 0, 0};
            switch (pc) {
                case field::PrimeClass::Split:
                    e.d_psil = 2 * lp; // nontrivial class gets weight 0 at split primes
                    break;
                case field::PrimeClass::Ramified:
                    e.d_psil = lp;
                    e.d_psifull = 0.5 * lp;
                    break;
                default:
                    if (m % 2 == 0) e.d_psil = 2 * lp;
                    else { e.d_psic = lp; e.d_psifull = lp; }
                    break;
            }
            events.push_back(e);
            if (pk > (std::uint64_t)x1 / p) break;
            pk *= p;
            ++m;
        }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

    CompensatedSum psil, psic, psifull;
    std::size_t ei = 0;
    auto check_margins = [&](std::uint64_t x) -> std::array<double, 4> {
        double sx = std::sqrt((double)x), lx = std::log((double)x);
        double B = sx * ((lx / (2 * M_PI) + 2) * lc + 2 * (lx * lx / (8 * M_PI) + 2));
        double m1 = B - (psil.value() - (double)x);        // psi_L - x <= B
        double m2 = (psil.value() - (double)x) + B - 1;    // -B+1 <= psi_L - x
        double m3 = (2 * psic.value() - (double)x) + B - 1;
        double m4 = B - (2 * psifull.value() - (double)x);
        return {m1, m2, m3, m4};
    };
    auto ball_margins = [&](std::uint64_t x) -> std::array<double, 4> {
        // full recomputation with enclosures
        mpfr_prec_t wp = std::max<mpfr_prec_t>(ctx.working_bits, 192);
        Ball xb = Ball::exact_si((long)x, wp);
        Ball lcb = Ball::exact_si(std::labs(F.d), wp).log();
        Ball lx = xb.log();
        Ball pi = Ball::pi(wp);
        Ball B = xb.sqrt() * ((lx / (pi * 2) + 2) * lcb + (lx.square() / (pi * 8) + 2) * 2);
        auto pv = field::psi_functions(F, field::ConjClass::Nontrivial, (double)x, sieve);
        auto plv = field::psi_L(F, (double)x, sieve);
        auto to_ball = [&](const CompensatedSum& s) {
            return Ball::exact_d(s.value(), wp).inflated(s.error_budget());
        };
        Ball m1 = B - (to_ball(plv) - xb);
        Ball m2 = (to_ball(plv) - xb) + B - 1;
        Ball m3 = (to_ball(pv.psi_c) * 2 - xb) + B - 1;
        Ball m4 = B - (to_ball(pv.psi_full) * 2 - xb);
        return {m1.lower_d(), m2.lower_d(), m3.lower_d(), m4.lower_d()};
    };

    static const char* kSide[4] = {"psi_L upper", "psi_L lower", "2psi_C lower", "2psi(C;.) upper"};
    out.pass = true;
    for (std::uint64_t x = 1; x <= (std::uint64_t)x1; ++x) {
        while (ei < events.size() && events[ei].x == x) {
            if (events[ei].d_psil != 0) psil.add(events[ei].d_psil);
            if (events[ei].d_psic != 0) psic.add(events[ei].d_psic);
            if (events[ei].d_psifull != 0) psifull.add(events[ei].d_psifull);
            ++ei;
        }
        if (!exhaustive) {
            bool at_event = ei < events.size() && events[ei].x == x + 1;
            bool just_after = ei > 0 && events[ei - 1].x == x;
            if (!at_event && !just_after && x != (std::uint64_t)x1 && x != 1) continue;
        }
        auto m = check_margins(x);
        for (int i = 0; i < 4; ++i) {
            if (m[(std::size_t)i] < out.min_margin) {
                out.min_margin = m[(std::size_t)i];
                out.argmin_x = (long)x;
            }
            if (m[(std::size_t)i] < 1e-6) {
                out.near_miss_escalations++;
                auto bm = ball_margins(x);
                if (bm[(std::size_t)i] < 0) {
                    out.violations++;
                    out.pass = false;
                    if (out.first_violation.empty())
                        out.first_violation = "d=" + std::to_string(d) + " x=" + std::to_string(x) +
                                              " side=" + kSide[i] +
                                              " margin=" + std::to_string(bm[(std::size_t)i]);
                }
            }
        }
    }
    return out;
}

// all fundamental discriminants with 0 < |d| < dmax
inline std::vector<long> fundamental_discriminants(long dmax) {
    std::vector<long> out;
    for (long a = 2; a < dmax; ++a) {
        if (field::is_fundamental(a)) out.push_back(a);
        if (field::is_fundamental(-a)) out.push_back(-a);
    }
    return out;
}

struct SweepReport {
    std::vector<FieldVerdict> fields;
    bool all_pass = true;
    long total_escalations = 0;
    long max_x1 = 0;
};

inline SweepReport verify_quadratic(long dmax = 300, std::uint64_t xmax = 100000,
                                    bool exhaustive = true, int threads = 0) {
    auto ds = fundamental_discriminants(dmax);
    SweepReport rep;
    rep.fields.resize(ds.size());
    if (threads <= 0) threads = (int)std::min<unsigned>(std::thread::hardware_concurrency(), 4);
    if (threads < 1) threads = 1;

    // find x1 first (cheap), then sweep to max over the job for one shared sieve
    std::vector<long> x1s(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) x1s[i] = find_x1(ds[i], xmax);
    long mx = *std::max_element(x1s.begin(), x1s.end());
    rep.max_x1 = mx;
    Sieve sieve = sieve_to((std::uint64_t)mx + 2);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ds.size()) break;
            rep.fields[i] = verify_field(ds[i], x1s[i], sieve, exhaustive);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (auto& f : rep.fields) {
        rep.all_pass = rep.all_pass && f.pass;
        rep.total_escalations += f.near_miss_escalations;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// corollary constant checks
// ---------------------------------------------------------------------------

struct CorollaryReport {
    CheckpointReport checks;
};

inline CorollaryReport corollary_constants_check(const PrecisionContext& ctx = PrecisionContext(128, 2048)) {
    CorollaryReport rep;
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    Sieve sieve = sieve_to(1000000);

    // (1) sum_{p<=73} (1 - log p / log 73) <= 5.65
    {
        Ball l73 = Ball::exact_si(73, wp).log();
        Ball s = Ball::exact_si(0, wp);
        long cnt = 0;
        for (std::uint32_t p : sieve.primes) {
            if (p > 73) break;
            s = s + (1 - Ball::exact_si((long)p, wp).log() / l73);
            ++cnt;
        }
        Ball margin = Ball::from_str("5.65", wp) - s;
        rep.checks.add("sum_{p<=73}(1 - log p/log 73) <= 5.65 (21 primes)", margin.lower_d(),
                       margin.lower_sign() > 0 && cnt == 21);
    }
    // (2) int_2^73 du/log u - 73/log 73 <= 6.1
    {
        Ball li = eval_log_integral(73.0, ctx, 1e-6);
        Ball v = li - Ball::exact_si(73, wp) / Ball::exact_si(73, wp).log();
        Ball margin = Ball::from_str("6.1", wp) - v;
        rep.checks.add("int_2^73 du/log u - 73/log 73 <= 6.1", margin.lower_d(),
                       margin.lower_sign() > 0);
    }
    // (3) the two integral bounds on a grid of x in [193, 1e6], with the
    // integrals accumulated incrementally (both integrands are convex and
    // decreasing on [73, oo))
    {
        std::vector<double> grid{193, 250, 320, 400, 520, 680, 880, 1150, 1500, 2000, 2600,
                                 3400, 4400, 5800, 7500, 10000, 14000, 19000, 26000, 35000,
                                 48000, 65000, 90000, 125000, 170000, 230000, 320000, 440000,
                                 600000, 800000, 1000000};
        auto f1 = [&](const Ball& u) {
            Ball lu = u.log();
            return (lu / (pi * 2) + 2) / (u.sqrt() * lu.square());
        };
        auto f2 = [&](const Ball& u) {
            Ball lu = u.log();
            return 1 / (u.sqrt() * lu.square());
        };
        Ball i1 = Ball::exact_si(0, wp), i2 = Ball::exact_si(0, wp);
        double prev = 73;
        bool ok1 = true, ok2 = true, okr_l = true, okr_n = true;
        double w1 = 1e300, w2 = 1e300, wr = 1e300;
        for (double gx : grid) {
            Ball a = Ball::exact_d(prev, wp), b = Ball::exact_d(gx, wp);
            i1 = i1 + integrate_convex(f1, a, b, 2e-4, wp).value;
            i2 = i2 + integrate_convex(f2, a, b, 2e-4, wp).value;
            prev = gx;
            Ball xb = Ball::exact_d(gx, wp);
            Ball sxl = xb.sqrt() / xb.log();
            Ball m1 = sxl - i1;
            Ball m2 = Ball::from_str("0.33", wp) * sxl - i2;
            ok1 = ok1 && m1.lower_sign() > 0;
            ok2 = ok2 && m2.lower_sign() > 0;
            w1 = std::min(w1, m1.lower_d());
            w2 = std::min(w2, m2.lower_d());
            // recombination into the corollary coefficients:
            // lDL: 1/2pi + 2/log x + I1/sqrt(x)            <= 1/2pi + 3/log x
            // nL:  log x/8pi + 4.59/log x + (1 - sqrt(73/x))/(4pi) + 3.43 I2/sqrt(x)
            //                                              <= log x/8pi + 1/4pi + 6/log x
            Ball lx = xb.log();
            Ball sx = xb.sqrt();
            Ball lhs_l = 1 / (pi * 2) + 2 / lx + i1 / sx;
            Ball rhs_l = 1 / (pi * 2) + 3 / lx;
            Ball lhs_n = lx / (pi * 8) + Ball::from_str("4.59", wp) / lx +
                         (1 - (Ball::exact_si(73, wp) / xb).sqrt()) / (pi * 4) +
                         Ball::from_str("3.43", wp) * i2 / sx;
            Ball rhs_n = lx / (pi * 8) + 1 / (pi * 4) + 6 / lx;
            Ball ml = rhs_l - lhs_l;
            Ball mn = rhs_n - lhs_n;
            okr_l = okr_l && ml.lower_sign() > 0;
            okr_n = okr_n && mn.lower_sign() > 0;
            wr = std::min(wr, std::min(ml.lower_d(), mn.lower_d()));
        }
        rep.checks.add("int_73^x (log u/2pi+2)/(sqrt u log^2 u) du <= sqrt x/log x on grid", w1, ok1);
        rep.checks.add("int_73^x du/(sqrt u log^2 u) <= 0.33 sqrt x/log x on grid", w2, ok2);
        rep.checks.add("recombination reproduces the corollary coefficients on grid", wr,
                       okr_l && okr_n);
    }
    // (4) psi - theta <= 1.43 sqrt(x) for x <= 1e6
    {
        double worst = 1e300;
        bool ok = true;
        CompensatedSum diff;
        auto pps = prime_powers(1000000, sieve.primes, 2);
        for (std::uint64_t pp : pps) {
            // base prime of the power
            std::uint64_t base = pp;
            for (std::uint32_t p : sieve.primes) {
                if ((std::uint64_t)p * p > pp) break;
                if (pp % p == 0) { base = p; break; }
            }
            diff.add(std::log((double)base));
            double margin = 1.43 * std::sqrt((double)pp) - diff.value();
            if (margin < worst) worst = margin;
            if (margin < 1e-6) {
                Ball d2 = Ball::exact_d(diff.value(), wp).inflated(diff.error_budget());
                Ball m = Ball::from_str("1.43", wp) * Ball::exact_si((long)pp, wp).sqrt() - d2;
                ok = ok && m.lower_sign() > 0;
            }
        }
        rep.checks.add("psi - theta <= 1.43 sqrt(x) for x <= 1e6", worst, ok && worst > 0);
    }
    return rep;
}

} // namespace verify
} // namespace chebx

#endif
