#ifndef CHEBX_ZEROCOUNT_HPP
#define CHEBX_ZEROCOUNT_HPP

// Explicit zero-counting constants for Hecke L-functions: the Stirling
// window g(alpha,T), the argument-variation bound G(alpha,delta,T), the
// Jensen-circle constant C2' with its fallback, D3', the reference table
// of (D1, D2', D3') rows, the certified zero-count window, and the three
// zero-sum bounds consumed by the density estimates.

#include <array>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "chebx/ball.hpp"
#include "chebx/special.hpp"

namespace chebx {
namespace zerocount {

struct CharacterProfile {
    int n_e = 1;          // degree
    int a_chi = 1;        // gamma-factor counts, a + b = n_e
    int b_chi = 0;
    double log_q = 0.0;   // log Q(chi)
    int delta_chi = 0;    // 1 for the trivial character
};

struct ZeroCountParams {
    Ball T0;
    Ball p_strip; // in [-1/2, 0)
    Ball eta;     // in (0, 1/2]

    // derived quantities: a = 1 + eta, R = 1 + eta - p, r = R/(1/2 + eta),
    // delta = sqrt(2)(1/2 + eta), sigma1 = 1/2 + delta
    Ball a() const { return eta + 1; }
    Ball R() const { return eta + 1 - p_strip; }
    Ball r() const { return R() / (eta + Ball::exact_si(1, eta.prec()) / 2); }
    Ball delta() const {
        return Ball::exact_si(2, eta.prec()).sqrt() * (eta + Ball::exact_si(1, eta.prec()) / 2);
    }
    Ball sigma1() const { return Ball::exact_si(1, eta.prec()) / 2 + delta(); }
};

struct ZeroCountConstants {
    Ball d1;
    Ball d2prime;
    Ball d3prime;
    double t0 = 0;
};

// g(alpha, T): the Stirling tail of Im log Gamma((1+2alpha)/4 + iT/2),
// with the theta-term absorbed into the radius.
inline Ball g_alpha(const Ball& alpha, const Ball& T, const PrecisionContext& ctx) {
    if (!(T.lower_d() >= 0.5 - 1e-12)) throw std::domain_error("g_alpha: requires T >= 1/2");
    mpfr_prec_t wp = ctx.working_bits;
    Ball two_alpha = alpha * 2;
    Ball t1 = -(two_alpha - 1) / 4 * ((two_alpha + 1) / (T * 2)).atan();
    Ball t2 = T / 4 * ((two_alpha + 1).square() / (T.square() * 4) + 1).log();
    Ball z2 = (alpha + Ball::exact_si(1, wp) / 2).square() + T.square(); // |1/2+alpha+iT|^2
    Ball t3 = -T / (z2 * 6);
    Ball theta_bound = Ball::exact_si(3, wp) / (z2 * z2.sqrt() * 40);
    Ball g = t1 + t2 + t3;
    return g.inflated(theta_bound.upper_d());
}

inline Ball g_alpha(int alpha, double T, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    return g_alpha(Ball::exact_si(alpha, wp), Ball::exact_d(T, wp), ctx);
}

// Im log Gamma(x + iy) for x, y > 0: upward recurrence in the real part,
// then the complex Stirling series with a certified remainder
//   |R_m| <= |B_2m| / ((2m-1) 2m |w|^{2m-1}) * sec(arg w / 2)^{2m} <= ... * 2^m.
inline Ball im_log_gamma(const Ball& x, const Ball& y, const PrecisionContext& ctx) {
    if (!(x.lower_d() > 0) || !(y.lower_d() > 0))
        throw std::domain_error("im_log_gamma: requires x, y > 0");
    mpfr_prec_t wp = ctx.working_bits + 32;
    double shift_to = std::max(12.0, (double)ctx.working_bits / 6.0);
    Ball acc = Ball::exact_si(0, wp);
    Ball xr = x;
    while (xr.center_d() < shift_to) {
        acc = acc + (y / xr).atan(); // arg(xr + i y)
        xr = xr + 1;
    }
    Ball mod2 = xr.square() + y.square(); // |w|^2
    Ball argw = (y / xr).atan();
    Ball half = Ball::exact_si(1, wp) / 2;
    Ball im = (xr - half) * argw + y * mod2.log() / 2 - y;
    // Bernoulli series: sum B_2k / ((2k-1) 2k) Im(w^{1-2k})
    unsigned mterms = 8 + (unsigned)(ctx.working_bits / 8);
    Ball wre = xr, wim = y;      // w^n
    Ball modpow = mod2;          // |w|^{2n}
    unsigned n = 1;
    for (unsigned k = 1; k <= mterms; ++k) {
        while (n < 2 * k - 1) {
            Ball nre = wre * xr - wim * y;
            Ball nim = wre * y + wim * xr;
            wre = nre;
            wim = nim;
            modpow = modpow * mod2;
            ++n;
        }
        mpq_class c = bernoulli(2 * k) / (mpq_class(2 * k - 1) * (2 * k));
        mpq_t cq; mpq_init(cq); mpq_set(cq, c.get_mpq_t());
        // Im(w^{-(2k-1)}) = -Im(w^{2k-1}) / |w|^{2(2k-1)}
        im = im + Ball::from_mpq(cq, wp) * (-(wim) / modpow);
        mpq_clear(cq);
    }
    // remainder
    {
        unsigned mm = mterms + 1;
        mpq_class c = abs(bernoulli(2 * mm)) / (mpq_class(2 * mm - 1) * (2 * mm));
        mpq_t cq; mpq_init(cq); mpq_set(cq, c.get_mpq_t());
        Ball rem = Ball::from_mpq(cq, wp) / mod2.sqrt().pow_ui(2 * mm - 1);
        mpq_clear(cq);
        double sec_pow = std::ldexp(1.0, (int)mm); // sec(theta/2)^{2m} <= 2^m on Re > 0
        im = im.inflated(detail::mul_up(rem.upper_d(), sec_pow));
    }
    im = im - acc;
    Ball out(ctx.working_bits);
    return out + im;
}

// g(alpha, T) via the exact Im log Gamma route (tight; no theta slack).
inline Ball g_alpha_precise(int alpha, const Ball& T, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits + 16;
    Ball x = Ball::exact_si(1 + 2 * alpha, wp) / 4;
    Ball yh = T / 2;
    Ball ilg = im_log_gamma(x, yh, ctx);
    Ball e = Ball::exact_si(1, wp).exp();
    Ball main = yh * (T / (e * 2)).log();
    Ball corner = Ball::pi(wp) * (2 * alpha - 1) / 8;
    return ilg - main - corner;
}

// G(alpha, delta, T) for alpha in {0, 1}: bound for the argument variation
// of the Gamma factors across the critical line.
inline Ball G_func(int alpha, const Ball& delta, const Ball& T, const PrecisionContext& ctx) {
    if (alpha != 0 && alpha != 1) throw std::domain_error("G_func: alpha must be 0 or 1");
    if (!(T.lower_d() >= 1.0 - 1e-12)) throw std::domain_error("G_func: requires T >= 1");
    mpfr_prec_t wp = ctx.working_bits;
    Ball ah = Ball::exact_si(alpha, wp) + Ball::exact_si(1, wp) / 2; // alpha + 1/2
    Ball am = Ball::exact_si(alpha, wp) - Ball::exact_si(1, wp) / 2; // alpha - 1/2
    Ball T2 = T.square();
    Ball t1 = (am + delta) / 2 * ((ah + delta) / T).atan();
    Ball t2 = (am - delta) / 2 * ((ah - delta) / T).atan();
    Ball t3 = -am * (ah / T).atan();
    Ball d2 = delta.square();
    Ball num = d2 * 2 * (T2 - ah.square()) + d2.square();
    Ball den = (T2 + ah.square()).square();
    Ball t4 = -(T / 4) * (num / den + 1).log();
    Ball t5 = (1 / ((ah + delta).square() + T2).sqrt() + 1 / ((ah - delta).square() + T2).sqrt() +
               2 / (ah.square() + T2).sqrt()) / 4;
    return t1 + t2 + t3 + t4 + t5;
}

// F(delta, T) = 2 atan(1/2T) - atan((1/2+delta)/T) - atan((1/2-delta)/T)
inline Ball F_func(const Ball& delta, const Ball& T, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball half = Ball::exact_si(1, wp) / 2;
    return (1 / (T * 2)).atan() * 2 - ((half + delta) / T).atan() - ((half - delta) / T).atan();
}

// eta solving C1 = (1/2 - p)/(pi log r); values above 1/2 are clamped
// (the resulting C1 is then strictly smaller than the requested one).
inline Ball eta_from(const Ball& c1, const Ball& p_strip, const PrecisionContext& ctx) {
    if (!(c1.lower_d() > 0)) throw std::domain_error("eta_from: C1 must be positive");
    mpfr_prec_t wp = ctx.working_bits;
    Ball h = Ball::exact_si(1, wp) / 2 - p_strip;
    Ball e = h / ((h / (Ball::pi(wp) * c1)).exp() - 1) - Ball::exact_si(1, wp) / 2;
    Ball half = Ball::exact_si(1, wp) / 2;
    if (e.lower_d() > 0.5) return half;
    if (!(e.lower_d() > 0)) throw std::domain_error("eta_from: eta out of range (0, 1/2]");
    return e;
}

// C2' of the Jensen-circle argument (the main formula). The half-circle
// integral of log zeta(a + R cos phi) uses the convex trapezoid-midpoint
// sandwich: the integrand is convex in phi on [0, pi/2] since
// (log zeta)' < 0 < (log zeta)'' on (1, oo).
inline Ball circle_log_zeta_integral(const Ball& a, const Ball& R, const PrecisionContext& ctx,
                                     double tol = 1e-5) {
    mpfr_prec_t wp = ctx.working_bits;
    // per-point accuracy far beyond the quadrature tolerance; keep it cheap
    PrecisionContext inner_ctx(std::min<mpfr_prec_t>(wp, 128), ctx.max_bits);
    auto f = [&, inner_ctx](const Ball& phi) {
        Ball ph = phi;
        // cos enclosure via endpoints (cos is decreasing on [0, pi/2])
        mpfr_t lo, hi, flo, fhi;
        mpfr_inits2(wp, lo, hi, flo, fhi, (mpfr_ptr) nullptr);
        ph.get_lower(lo);
        ph.get_upper(hi);
        mpfr_cos(flo, hi, MPFR_RNDD);
        mpfr_cos(fhi, lo, MPFR_RNDU);
        Ball c = Ball::from_endpoints(flo, fhi, wp);
        mpfr_clears(lo, hi, flo, fhi, (mpfr_ptr) nullptr);
        return eval_zeta(a + R * c, inner_ctx).log();
    };
    Ball zero = Ball::exact_si(0, wp);
    Ball half_pi = Ball::pi(wp) / 2;
    auto q = integrate_convex(f, zero, half_pi, tol / 2, wp);
    return q.value * 2; // symmetric in phi
}

inline Ball compute_fallback_C2(const Ball& eta, const Ball& T0, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball half = Ball::exact_si(1, wp) / 2;
    Ball delta = Ball::exact_si(2, wp).sqrt() * (half + eta);
    Ball sigma1 = half + delta;
    Ball g0 = g_alpha_precise(0, T0, ctx);
    return (g0 + eval_zeta(sigma1, ctx).log() + G_func(0, delta, T0, ctx)) * 2 / Ball::pi(wp);
}

// Eq-style main constant; returns max(main formula, fallback) conservatively
// in the sense that the published constant must dominate the fallback.
struct C2Result {
    Ball value;     // the main formula
    Ball fallback;  // the degenerate-case value
    bool dominates; // value >= fallback certified
};

inline C2Result compute_C2prime(const ZeroCountParams& prm, const PrecisionContext& ctx,
                                double circle_tol = 1e-5) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball half = Ball::exact_si(1, wp) / 2;
    Ball one = Ball::exact_si(1, wp);
    Ball pi = Ball::pi(wp);
    const Ball& eta = prm.eta;
    const Ball& p = prm.p_strip;
    const Ball& T0 = prm.T0;
    Ball a = eta + 1;
    Ball R = eta + 1 - p;
    Ball r = R / (half + eta);
    Ball logr = r.log();
    Ball delta = Ball::exact_si(2, wp).sqrt() * (half + eta);
    Ball sigma1 = half + delta;
    Ball hp = half - p; // 1/2 - p

    Ball term1 = (g_alpha_precise(0, T0, ctx) + eval_zeta(sigma1, ctx).log() +
                  G_func(0, delta, T0, ctx) / 2) *
                 2 / pi;
    Ball circ = circle_log_zeta_integral(a, R, ctx, circle_tol);
    Ball term2 = circ / (pi * 2 * logr);
    Ball bracket = R.square() * 2 + (eta + 2).square() * 2 - pi * R * (eta + 2);
    Ball term3 = hp * bracket / (pi * 4 * T0.square() * logr);
    Ball term4 = -(hp / (pi * logr)) * (pi * 2).log();
    Ball z1eta = eval_zeta(eta + 1, ctx);
    Ball term5 = z1eta.log() / (logr * 2);
    Ball term6 = (eval_zeta(one - p, ctx) / z1eta).log() / (pi * logr);
    Ball term7 = (z1eta / eval_zeta((eta + 1) * 2, ctx)).log() / logr;

    C2Result out;
    out.value = term1 + term2 + term3 + term4 + term5 + term6 + term7;
    out.fallback = compute_fallback_C2(eta, T0, ctx);
    out.dominates = (out.value - out.fallback).lower_sign() >= 0;
    return out;
}

inline Ball compute_D3prime(const ZeroCountParams& prm, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball half = Ball::exact_si(1, wp) / 2;
    Ball one = Ball::exact_si(1, wp);
    Ball pi = Ball::pi(wp);
    const Ball& eta = prm.eta;
    const Ball& p = prm.p_strip;
    const Ball& T0 = prm.T0;
    if (!(p.lower_d() > -1.0)) throw std::domain_error("compute_D3prime: requires p > -1");
    Ball R = eta + 1 - p;
    Ball r = R / (half + eta);
    Ball logr = r.log();
    Ball delta = Ball::exact_si(2, wp).sqrt() * (half + eta);
    Ball t1 = ((one - p) / (one + p)).log() / (pi * logr);
    Ball t2 = F_func(delta, T0, ctx) / pi;
    Ball he = half + eta;
    Ball num = pi * r.square() * he.square() - r * he * 4 + pi * eta.square() + pi * eta * 2 + pi * 2;
    Ball t3 = num / (pi * 2 * T0.square() * logr);
    return t1 + t2 + t3;
}

// ---------------------------------------------------------------------------
// Reference table: 12 rows x T0 in {1, 2pi, 10}. p is the strip parameter
// the constants were derived with; d2/d3 are the published roundings.
// ---------------------------------------------------------------------------

struct TableRow {
    const char* d1;
    struct Col { const char* p; const char* d2; const char* d3; } t0_1, t0_2pi, t0_10;
};

inline const std::array<TableRow, 12>& table_a1() {
    static const std::array<TableRow, 12> t = {{
        {"0.230", {"-0.00070", "16.577", "1.330"}, {"-0.00070", "16.032", "0.033"}, {"-0.00067", "16.004", "0.014"}},
        {"0.247", {"-0.05681", "8.180", "1.435"}, {"-0.05542", "7.614", "0.083"}, {"-0.05404", "7.585", "0.062"}},
        {"0.265", {"-0.14367", "6.416", "1.515"}, {"-0.13792", "5.834", "0.150"}, {"-0.13792", "5.805", "0.129"}},
        {"0.282", {"-0.23355", "5.409", "1.598"}, {"-0.22490", "4.812", "0.213"}, {"-0.22490", "4.783", "0.192"}},
        {"0.299", {"-0.32500", "4.696", "1.699"}, {"-0.31500", "4.083", "0.275"}, {"-0.31500", "4.053", "0.254"}},
        {"0.316", {"-0.42000", "4.158", "1.814"}, {"-0.40000", "3.526", "0.335"}, {"-0.40000", "3.495", "0.313"}},
        {"0.333", {"-0.50000", "3.735", "1.961"}, {"-0.49000", "3.082", "0.400"}, {"-0.48000", "3.050", "0.371"}},
        {"0.350", {"-0.50000", "3.425", "2.185"}, {"-0.50000", "2.731", "0.429"}, {"-0.50000", "2.698", "0.402"}},
        {"0.367", {"-0.50000", "3.206", "2.426"}, {"-0.50000", "2.467", "0.453"}, {"-0.50000", "2.432", "0.423"}},
        {"0.384", {"-0.50000", "3.043", "2.687"}, {"-0.50000", "2.257", "0.478"}, {"-0.50000", "2.221", "0.444"}},
        {"0.401", {"-0.50000", "2.918", "2.966"}, {"-0.50000", "2.083", "0.503"}, {"-0.50000", "2.044", "0.465"}},
        {"0.460", {"-0.50000", "2.666", "4.082"}, {"-0.50000", "1.645", "0.593"}, {"-0.50000", "1.598", "0.540"}},
    }};
    return t;
}

enum class T0Choice { One, TwoPi, Ten };

inline Ball t0_value(T0Choice c, mpfr_prec_t wp) {
    switch (c) {
        case T0Choice::One: return Ball::exact_si(1, wp);
        case T0Choice::TwoPi: return Ball::pi(wp) * 2;
        default: return Ball::exact_si(10, wp);
    }
}
inline const char* t0_label(T0Choice c) {
    switch (c) {
        case T0Choice::One: return "1";
        case T0Choice::TwoPi: return "2pi";
        default: return "10";
    }
}

struct TableEntryResult {
    std::string d1;
    std::string t0;
    Ball eta, p;
    Ball d2, d3, fallback;
    double d2_table = 0, d3_table = 0;
    bool d2_ok = false, d3_ok = false, dominates = false;
};

// Recompute one table entry from (D1, p, T0).
inline TableEntryResult reproduce_entry(int row, T0Choice t0c, const PrecisionContext& ctx,
                                        double circle_tol = 1e-5) {
    const TableRow& tr = table_a1()[(std::size_t)row];
    const TableRow::Col& col = (t0c == T0Choice::One) ? tr.t0_1
                              : (t0c == T0Choice::TwoPi) ? tr.t0_2pi : tr.t0_10;
    mpfr_prec_t wp = ctx.working_bits;
    TableEntryResult res;
    res.d1 = tr.d1;
    res.t0 = t0_label(t0c);
    Ball d1 = Ball::from_str(tr.d1, wp);
    res.p = Ball::from_str(col.p, wp);
    res.eta = eta_from(d1, res.p, ctx);
    ZeroCountParams prm{t0_value(t0c, wp), res.p, res.eta};
    auto c2 = compute_C2prime(prm, ctx, circle_tol);
    res.d2 = c2.value;
    res.fallback = c2.fallback;
    res.dominates = c2.dominates;
    res.d3 = compute_D3prime(prm, ctx);
    res.d2_table = std::strtod(col.d2, nullptr);
    res.d3_table = std::strtod(col.d3, nullptr);
    // published values are roundings-up of the computed constants
    res.d2_ok = res.d2.upper_d() <= res.d2_table + 5e-4 && res.d2.lower_d() >= res.d2_table - 1e-2;
    res.d3_ok = res.d3.upper_d() <= res.d3_table + 5e-4 && res.d3.lower_d() >= res.d3_table - 1e-2;
    return res;
}

// Reproduce every (row, T0) entry, parallelized over entries.
inline std::vector<TableEntryResult> reproduce_table(const PrecisionContext& ctx,
                                                     int threads = 0,
                                                     double circle_tol = 1e-5) {
    struct Job { int row; T0Choice t0; };
    std::vector<Job> jobs;
    for (int row = 0; row < 12; ++row)
        for (auto t : {T0Choice::One, T0Choice::TwoPi, T0Choice::Ten}) jobs.push_back({row, t});
    std::vector<TableEntryResult> out(jobs.size());
    if (threads <= 0) threads = (int)std::min<unsigned>(std::thread::hardware_concurrency(), 4);
    if (threads < 1) threads = 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            out[i] = reproduce_entry(jobs[i].row, jobs[i].t0, ctx, circle_tol);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

// Exploratory (non-canonical) search over the strip parameter p for a given
// D1 and T0: reports the p minimizing the computed C2'. The published rows
// fix p; this scan only illustrates how flat the optimum is.
struct StripSearchResult {
    double best_p = 0;
    Ball best_d2;
    Ball best_d3;
};

inline StripSearchResult search_p_strip(const Ball& d1, T0Choice t0c, const PrecisionContext& ctx,
                                        double step = 1e-3, double circle_tol = 1e-3) {
    mpfr_prec_t wp = ctx.working_bits;
    StripSearchResult best;
    double best_val = 1e300;
    Ball T0 = t0_value(t0c, wp);
    // stop a sliver short of 0: the zeta evaluations need 1 - p bounded away from 1
    for (double p = -0.5; p < -1e-4; p += step) {
        Ball pb = Ball::exact_d(p, wp);
        Ball eta(wp);
        try {
            eta = eta_from(d1, pb, ctx);
        } catch (const std::domain_error&) {
            continue;
        }
        ZeroCountParams prm{T0, pb, eta};
        auto c2 = compute_C2prime(prm, ctx, circle_tol);
        if (c2.value.upper_d() < best_val) {
            best_val = c2.value.upper_d();
            best.best_p = p;
            best.best_d2 = c2.value;
            best.best_d3 = compute_D3prime(prm, ctx);
        }
    }
    if (best_val == 1e300) throw std::runtime_error("search_p_strip: no admissible p");
    return best;
}

// The canonical constants used by the density bounds: row D1 = 0.460 at
// T0 = 2pi, giving c1 = 0.460, c2 = 2.491, c3 = 0.593.
inline ZeroCountConstants canonical_constants(const PrecisionContext& ctx) {
    auto e = reproduce_entry(11, T0Choice::TwoPi, ctx);
    ZeroCountConstants k;
    k.d1 = Ball::from_str("0.460", ctx.working_bits);
    k.d2prime = e.d2;
    k.d3prime = e.d3;
    k.t0 = 2 * M_PI;
    return k;
}

struct WindowResult {
    Ball main;   // (T/pi) log[Q (T/2 pi e)^nE] + 2 delta_chi - (a-b)/4
    Ball radius; // D1 (log Q + nE log T) + D2' nE + delta_chi D3'
};

inline WindowResult ntchi_window(const Ball& T, const CharacterProfile& prof,
                                 const ZeroCountConstants& k, const PrecisionContext& ctx) {
    if (!(T.lower_d() >= k.t0 - 1e-9))
        throw std::domain_error("ntchi_window: T below the constants' T0");
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    Ball logq = Ball::exact_d(prof.log_q, wp);
    Ball logT = T.log();
    // log[Q (T/2 pi e)^nE] = log Q + nE (log(T/2pi) - 1)
    Ball log_main = logq + ((T / (pi * 2)).log() - 1) * prof.n_e;
    WindowResult w;
    w.main = T / pi * log_main + Ball::exact_si(2 * prof.delta_chi, wp) -
             Ball::exact_si(prof.a_chi - prof.b_chi, wp) / 4;
    w.radius = k.d1 * (logq + logT * prof.n_e) + k.d2prime * prof.n_e;
    if (prof.delta_chi) w.radius = w.radius + k.d3prime;
    return w;
}

struct ZeroSumBounds {
    Ball count_bound;    // N_L(T) upper bound
    Ball tail_bound;     // sum_{|g|>=T} 1/|rho|^2 upper bound
    Ball kernel_bound;   // mixed kernel sum upper bound
};

// The three explicit zero-sum estimates at level T >= 2pi, with
// W_L(T) = lDL + n_L log(T/2pi) and the canonical (0.460, 2.491, 0.593) row.
inline ZeroSumBounds zero_sum_bounds(const Ball& T, int n_l, const Ball& ldl, int r1,
                                     const Ball& eps_n, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    if (!(T.lower_d() >= (2 * M_PI) * (1 - 1e-12)))
        throw std::domain_error("zero_sum_bounds: requires T >= 2 pi");
    Ball log_t2pi = (T / (pi * 2)).log();
    Ball W = ldl + log_t2pi * n_l;
    ZeroSumBounds out;
    out.count_bound = T * (1 / pi + Ball::from_str("0.460", wp) / T) * W -
                      T * (1 / pi - Ball::from_str("2.491", wp) / T) * n_l +
                      Ball::from_str("2.593", wp) - Ball::exact_si(r1, wp) / 4;
    out.tail_bound = (1 / pi + Ball::from_str("0.920", wp) / T) * W / T +
                     (1 / pi + Ball::from_str("5.220", wp) / T) * Ball::exact_si(n_l, wp) / T +
                     Ball::from_str("1.186", wp) / T.square();
    Ball lcoef = log_t2pi / pi + Ball::from_str("1.067", wp) + 2 / T;
    Ball ncoef = log_t2pi.square() / (pi * 2) + (2 / T) * (log_t2pi + 1) -
                 Ball::from_str("1.633", wp) - Ball::from_str("0.460", wp) / T +
                 Ball::from_str("1.446", wp) / T.square();
    out.kernel_bound = lcoef * ldl + ncoef * n_l + Ball::from_str("7.834", wp) -
                       Ball::from_str("0.406", wp) * r1 - eps_n;
    return out;
}

} // namespace zerocount
} // namespace chebx

#endif
