#ifndef CHEBX_BOUNDS_HPP
#define CHEBX_BOUNDS_HPP

// The explicit density-bound formulas: the main sqrt(x) bound and its
// partial-summation corollary, the parametric terms L_a / F / G / H / H1 /
// H2 / Delta_Sg, the normalized test functions B_a and B_b with the
// ramified-prime-count majorant, and the small auxiliary evaluators they
// consume (S_g, R_C, the ramification term, the omega bound and the
// secondary zero-sum linear form).

#include <stdexcept>

#include "chebx/ball.hpp"
#include "chebx/special.hpp"

namespace chebx {
namespace bounds {

struct ExtensionProfile {
    int n_l = 2;       // absolute degree of L
    int n_k = 1;       // degree of the base field
    double ldl = 0;    // log |disc L|
    int r1 = 0, r2 = 0;
    int g_order = 1;   // |G| = n_l / n_k
    int p_min = 0;     // smallest prime dividing |G| (0 when |G| = 1)
    double omega = 0;  // number of prime ideals dividing the relative discriminant
};

struct ClassProfile {
    int delta_c = 0; // 1 for the trivial class
    int g_order = 1; // order of the chosen g in C
    int sg = 0;      // S_g of the class
    double eps_n = 0;
};

// epsilon_n policy: the guaranteed lower bounds for n <= 3, zero above
// (always safe since eps_n >= 0).
inline double epsilon_policy(int n) {
    switch (n) {
        case 1: return 5.529;
        case 2: return 0.751;
        case 3: return 0.313;
        default: return 0.0;
    }
}

// S_g from the order of g and the place counts.
inline int sg_compute(int g_order, int r1, int r2, int r2_fixed_field) {
    if (g_order < 1) throw std::domain_error("sg_compute: order >= 1");
    int v;
    if (g_order == 1) v = r1 + r2;
    else if (g_order == 2) v = r2 - 2 * r2_fixed_field;
    else v = 0;
    if (v < 0) throw std::domain_error("sg_compute: negative S_g indicates inconsistent inputs");
    return v;
}

inline Ball T_of_x(const Ball& x) {
    if (!(x.lower_d() > 1.0)) throw std::domain_error("T_of_x: requires x > 1");
    mpfr_prec_t wp = x.prec();
    return Ball::from_str("5.2", wp) * x.sqrt() / x.log();
}
inline double T_of_x(double x) {
    if (!(x > 1.0)) throw std::domain_error("T_of_x: requires x > 1");
    return 5.2 * std::sqrt(x) / std::log(x);
}

// sqrt(x) [ (log x / 2pi + 2) lDL + (log^2 x / 8pi + 2) nL ]
inline Ball main_bound(const Ball& x, const Ball& ldl, int n_l, const PrecisionContext& ctx) {
    if (!(x.lower_d() >= 1.0 - 1e-12)) throw std::domain_error("main_bound: requires x >= 1");
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    Ball lx = x.log();
    return x.sqrt() * ((lx / (pi * 2) + 2) * ldl + (lx.square() / (pi * 8) + 2) * n_l);
}

// sqrt(x) [ (1/2pi + 3/log x) lDL + (log x/8pi + 1/4pi + 6/log x) nL ]
inline Ball corollary_bound(const Ball& x, const Ball& ldl, int n_l, const PrecisionContext& ctx) {
    if (!(x.lower_d() >= 2.0 - 1e-12)) throw std::domain_error("corollary_bound: requires x >= 2");
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    Ball lx = x.log();
    return x.sqrt() * ((1 / (pi * 2) + 3 / lx) * ldl +
                       (lx / (pi * 8) + 1 / (pi * 4) + 6 / lx) * n_l);
}

struct ParametricTerms {
    Ball la, f, g, h, h1, h2, delta_sg;
};

// All displayed expressions of the parametric bound, as enclosures.
inline ParametricTerms parametric_bound_terms(const Ball& x, const Ball& T, int n, const Ball& lc,
                                      const ClassProfile& cls, int r1, const Ball& eps_n,
                                      const PrecisionContext& ctx) {
    if (!(x.lower_d() >= 4.0 - 1e-12)) throw std::domain_error("parametric_bound_terms: requires x >= 4");
    if (!(T.lower_d() >= 2 * M_PI - 1e-9)) throw std::domain_error("parametric_bound_terms: requires T >= 2 pi");
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    Ball sx = x.sqrt();
    Ball lx = x.log();
    Ball lt = (T / (pi * 2)).log();
    auto dec = [&](const char* s) { return Ball::from_str(s, wp); };

    ParametricTerms out;
    out.f = sx * (lt / pi + dec("1.704") + dec("1.858") / T) + dec("1.075");
    out.g = sx * (lt.square() / (pi * 2) + (2 / pi + dec("1.858") / T) * lt - dec("1.633") +
                  dec("7.729") / T) -
            dec("1.501");
    out.h1 = (x + 2) / T + sx * (dec("7.834") + dec("3.779") / T) + dec("8.276");
    out.h2 = -sx * ((dec("0.406") + 1 / (T * 4)) * r1 + eps_n) + (1 - cls.sg) * lx +
             Ball::exact_si(cls.sg, wp) - dec("0.744") * n * cls.delta_c - dec("0.527") * r1;
    out.h = out.h1 + out.h2;
    out.la = out.f * lc + out.g * n + out.h;
    out.delta_sg = (2 * (cls.sg - 1)) * (lx - 1) + 3 - dec("0.445") * n +
                   Ball::exact_si(2 * n * cls.delta_c, wp) -
                   (sx / T) * (dec("1.167") + dec("0.743") * lc / n + dec("0.743") * lt) * n;
    return out;
}

// Piecewise majorant for the number of ramified prime ideals.
inline Ball frak_n(const Ball& lc, int g_order, const PrecisionContext& ctx) {
    if (g_order < 1) throw std::domain_error("frak_n: |G| >= 1");
    mpfr_prec_t wp = ctx.working_bits;
    if (g_order == 1) return Ball::exact_si(0, wp);
    if (g_order >= 32)
        return lc / (Ball::exact_si(g_order, wp) - Ball::from_str("8.79", wp)).log();
    bool prime = true;
    for (int q = 2; q * q <= g_order; ++q)
        if (g_order % q == 0) { prime = false; break; }
    if (prime && g_order != 3) return lc / Ball::exact_si(4, wp).log();
    if (g_order == 3) return lc / Ball::exact_si(49, wp).log();
    return Ball::from_str("0.4", wp) + lc / Ball::exact_si(22, wp).log();
}

inline int smallest_prime_divisor(int g) {
    for (int q = 2; q * q <= g; ++q)
        if (g % q == 0) return q;
    return g;
}

inline Ball Ba(const Ball& x, const Ball& T, int n, const Ball& lc, const ClassProfile& cls,
               int r1, const Ball& eps_n, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    auto t = parametric_bound_terms(x, T, n, lc, cls, r1, eps_n, ctx);
    Ball lx = x.log();
    return t.la / (x.sqrt() * n) - (lx / (pi * 2) + 2) * lc / n - (lx.square() / (pi * 8) + 2);
}

// B_b = B_a + DeltaSg/(n sqrt x) + (|G|/p) (frakN/n) (log x / sqrt x);
// frak_value overrides the piecewise majorant (e.g. the true omega).
inline Ball Bb(const Ball& x, const Ball& T, int n, const Ball& lc, const ClassProfile& cls,
               int r1, const Ball& eps_n, int g_order, const PrecisionContext& ctx,
               const Ball* frak_value = nullptr) {
    if (g_order < 1) throw std::domain_error("Bb: |G| >= 1");
    mpfr_prec_t wp = ctx.working_bits;
    Ball frak = frak_value ? *frak_value : frak_n(lc, g_order, ctx);
    auto t = parametric_bound_terms(x, T, n, lc, cls, r1, eps_n, ctx);
    Ball pi = Ball::pi(wp);
    Ball lx = x.log();
    Ball sx = x.sqrt();
    Ball ba = t.la / (sx * n) - (lx / (pi * 2) + 2) * lc / n - (lx.square() / (pi * 8) + 2);
    Ball extra = t.delta_sg / (sx * n);
    if (g_order == 1) return ba + extra;
    int p = smallest_prime_divisor(g_order);
    return ba + extra + Ball::exact_si(g_order, wp) / p * (frak / n) * lx / sx;
}

// omega upper bound from the divisor-count estimate; requires
// lDL > e^{1.1714} nK.
inline Ball omega_bound_robin(const Ball& ldl, int n_k, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball thresh = Ball::from_str("1.1714", wp).exp() * n_k;
    if (!(ldl.lower_d() > thresh.upper_d()))
        throw std::domain_error("omega_bound_robin: requires lDL > e^1.1714 nK");
    Ball den = ldl.log() - Ball::exact_si(n_k, wp).log() - Ball::from_str("1.1714", wp);
    return ldl / den;
}

struct RCValues {
    Ball rc;       // R_C(x)
    Ball rc_prime; // R'_C(x)
};

// Closed forms: R_C = int_0^x log u du - Sg int_1^{x+1} log u du
//                + delta_C (nL/2)[log(x^2-1) + x log((x+1)/(x-1))],
//      R'_C = log x - Sg log(x+1) + delta_C (nL/2) log((x+1)/(x-1)).
inline RCValues rc_eval(const Ball& x, int sg, int delta_c, int n_l, const PrecisionContext&) {
    if (!(x.lower_d() > 1.0)) throw std::domain_error("rc_eval: requires x > 1");
    Ball lx = x.log();
    Ball i0 = x * lx - x;                          // int_0^x log u du
    Ball i1 = (x + 1) * (x + 1).log() - x;         // int_1^{x+1} log u du
    RCValues out;
    out.rc = i0 - i1 * sg;
    out.rc_prime = lx - (x + 1).log() * sg;
    if (delta_c) {
        Ball extra = (x.square() - 1).log() + x * ((x + 1) / (x - 1)).log();
        out.rc = out.rc + extra * n_l / 2;
        out.rc_prime = out.rc_prime + ((x + 1) / (x - 1)).log() * n_l / 2;
    }
    return out;
}

// f1, f2 closed forms used by the remainder-term lemma
inline Ball f1_closed(const Ball& x) {
    Ball xi = 1 / x;
    return (x * (1 - xi * xi).log() + ((1 + xi) / (1 - xi)).log()) / 2;
}
inline Ball f2_closed(const Ball& x) {
    Ball xi = 1 / x;
    Ball one = Ball::exact_si(1, x.prec());
    return one - ((1 - xi * xi).log() + x * ((1 + xi) / (1 - xi)).log()) / 2;
}

// min(|C|/p, 1) * omega * log x
inline Ball ramification_bound(const Ball& x, int c_size, int p_min, double omega,
                               const PrecisionContext& ctx) {
    if (!(x.lower_d() >= 1.0 - 1e-12)) throw std::domain_error("ramification_bound: requires x >= 1");
    mpfr_prec_t wp = ctx.working_bits;
    Ball ratio = Ball::exact_si(c_size, wp) / p_min;
    Ball clamp = min_ball(ratio, Ball::exact_si(1, wp));
    return clamp * Ball::exact_d(omega, wp) * x.log();
}

// 0.5375 lDL - 1.0355 nL + 5.3879 - 0.2635 r1
inline Ball secondary_zero_sum_bound(const Ball& ldl, int n_l, int r1, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    return Ball::from_str("0.5375", wp) * ldl - Ball::from_str("1.0355", wp) * n_l +
           Ball::from_str("5.3879", wp) - Ball::from_str("0.2635", wp) * r1;
}

} // namespace bounds
} // namespace chebx

#endif
