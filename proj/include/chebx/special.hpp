#ifndef CHEBX_SPECIAL_HPP
#define CHEBX_SPECIAL_HPP

// Validated special functions: zeta and its first two derivatives by
// Euler-Maclaurin with explicit remainder bounds, zeta'/zeta, digamma,
// the logarithmic integral, and an adaptive enclosure integrator for
// convex integrands.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <queue>
#include <vector>

#include "chebx/ball.hpp"
#include "chebx/primes.hpp"

namespace chebx {

// Exact Bernoulli numbers B_0, B_1, B_2, ... via the classical recurrence
// sum_{j=0}^{m} C(m+1,j) B_j = 0. Cached, grows on demand.
inline const mpq_class& bernoulli(unsigned n) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    static std::vector<mpq_class> cache = {mpq_class(1), mpq_class(-1, 2)};
    while (cache.size() <= n) {
        unsigned m = (unsigned)cache.size();
        // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1,j) B_j
        mpq_class acc(0);
        mpz_class binom(1); // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            acc += mpq_class(binom) * cache[j];
            binom *= (m + 1 - j);
            binom /= (j + 1);
        }
        mpq_class bm = -acc / mpq_class(m + 1);
        bm.canonicalize();
        cache.push_back(bm);
    }
    return cache[n];
}

namespace emdetail {

// log2 of the Euler-Maclaurin remainder bound, evaluated cheaply in doubles.
inline double log2_pochhammer(double s, unsigned j) {
    double acc = 0;
    for (unsigned i = 0; i < j; ++i) acc += std::log2(s + i);
    return acc;
}

inline double log2_tail_bound(double s, unsigned N, unsigned m) {
    double b = 2.0 - (2.0 * m + 1.0) * std::log2(2 * M_PI);
    b += log2_pochhammer(s, 2 * m + 1);
    b += -(s + 2.0 * m) * std::log2((double)N);
    b -= std::log2(s + 2.0 * m);
    return b;
}

// pick (N, m) so the truncation error is below 2^-(bits), roughly
// minimizing the work N + 4m (Bernoulli terms cost more per term)
inline void choose_parameters(double s, long bits, unsigned& N, unsigned& m) {
    unsigned bestN = 0, bestM = 0;
    double best_cost = 1e300;
    for (unsigned NN = 24; NN <= (1u << 22); NN *= 2) {
        unsigned okm = 0;
        double track = 1e300;
        for (unsigned mm = 1; mm <= 3 * NN; ++mm) {
            double lb = log2_tail_bound(s, NN, mm);
            if (lb < -(double)bits) { okm = mm; break; }
            if (lb < track) track = lb;
            else if (lb > track + 40) break; // diverging regime
        }
        if (okm) {
            double cost = (double)NN + 4.0 * okm;
            if (cost < best_cost) { best_cost = cost; bestN = NN; bestM = okm; }
            else break; // costs grow again, stop searching
        }
    }
    if (!bestN) { bestN = 1u << 22; bestM = 3 * bestN; } // caller sees the radius
    N = bestN;
    m = bestM;
}

} // namespace emdetail

// zeta^{(d)}(s) for d = 0,1 and real s > 1, with rigorous remainder.
inline Ball zeta_derivative(int d, const Ball& s, const PrecisionContext& ctx) {
    if (d < 0 || d > 1) throw std::invalid_argument("zeta_derivative: d must be 0 or 1");
    double sd = s.center_d();
    if (!(sd > 1.0) || s.lower_d() <= 1.0)
        throw std::domain_error("zeta_derivative: requires s > 1");

    mpfr_prec_t wp = ctx.working_bits + 32;
    unsigned N, m;
    emdetail::choose_parameters(sd, ctx.working_bits + 16, N, m);

    Ball sw = s; // operands carry at least wp through ops below
    Ball one = Ball::exact_si(1, wp);
    Ball sum = Ball::exact_si(0, wp);

    // main sum over n < N  (term n=1 contributes 1 for d=0, else 0)
    if (d == 0) sum = sum + one;
    for (unsigned n = 2; n < N; ++n) {
        Ball ln = Ball::exact_si((long)n, wp).log();
        Ball nms = (-(sw * ln)).exp(); // n^{-s}
        Ball t = nms;
        for (int i = 0; i < d; ++i) t = t * (-ln);
        sum = sum + t;
    }

    Ball LN = Ball::exact_si((long)N, wp).log();
    Ball Npow_1ms = ((one - sw) * LN).exp(); // N^{1-s}
    Ball Npow_ms = (-(sw * LN)).exp();       // N^{-s}
    Ball sm1 = sw - 1;

    // integral term N^{1-s}/(s-1) and its s-derivative
    if (d == 0) {
        sum = sum + Npow_1ms / sm1;
        sum = sum + Npow_ms / 2;
    } else {
        sum = sum - LN * Npow_1ms / sm1 - Npow_1ms / (sm1 * sm1);
        sum = sum - LN * Npow_ms / 2;
    }

    // Bernoulli corrections: T_k = B_2k/(2k)! P_{2k-1}(s) N^{-s-2k+1}
    // with the d/ds derivative via H1 = sum 1/(s+i).
    Ball P = Ball::exact_si(1, wp);
    Ball H1 = Ball::exact_si(0, wp);
    mpz_class fact(1); // (2k)!
    unsigned built = 0; // 2k-1 factors built so far
    for (unsigned k = 1; k <= m; ++k) {
        while (built < 2 * k - 1) {
            Ball f = sw + (long)built;
            P = P * f;
            H1 = H1 + one / f;
            ++built;
        }
        for (unsigned t = 2 * k - 1; t <= 2 * k; ++t) fact *= t;
        mpq_class coef = bernoulli(2 * k) / mpq_class(fact);
        mpq_t cq;
        mpq_init(cq);
        mpq_set(cq, coef.get_mpq_t());
        Ball C = Ball::from_mpq(cq, wp);
        mpq_clear(cq);
        Ball Npow = ((one - sw - (long)(2 * k)) * LN).exp(); // N^{-s-2k+1} = N^{(1-s)-2k}
        if (d == 0) {
            sum = sum + C * P * Npow;
        } else {
            sum = sum + C * P * (H1 - LN) * Npow;
        }
    }

    // Remainder bound, assembled in log space so that the huge Pochhammer
    // and (2 pi)^(2m+1) factors never overflow the radius arithmetic:
    //   |R_m|  <= 4 (2 pi)^{-(2m+1)} P_{2m+1}(s) N^{-beta} / beta
    //   |R_m'| <= same * (H1_{2m+1} + log N + 1/beta),   beta = s + 2m.
    Ball logP = Ball::exact_si(0, wp);
    {
        Ball Pacc = Ball::exact_si(0, wp);
        for (unsigned i = 0; i < 2 * m + 1; ++i) Pacc = Pacc + (sw + (long)i).log();
        logP = Pacc;
        while (built < 2 * m + 1) {
            Ball f = sw + (long)built;
            H1 = H1 + one / f;
            ++built;
        }
    }
    Ball beta = sw + (long)(2 * m);
    Ball log_bound = Ball::exact_si(4, wp).log() -
                     (Ball::pi(wp) * 2).log() * (long)(2 * m + 1) + logP - beta * LN -
                     beta.log();
    if (d == 1) log_bound = log_bound + (H1 + LN + one / beta).log();
    double bound_up;
    {
        mpfr_t t, e;
        mpfr_inits2(96, t, e, (mpfr_ptr) nullptr);
        log_bound.get_upper(t);
        mpfr_exp(e, t, MPFR_RNDU);
        bound_up = detail::up(mpfr_get_d(e, MPFR_RNDU));
        mpfr_clears(t, e, (mpfr_ptr) nullptr);
    }
    sum = sum.inflated(bound_up);

    // round to requested precision
    Ball out(ctx.working_bits);
    out = out + sum;
    return out;
}

// Enclosure of zeta(s), s real > 1. Accuracy guaranteed for s - 1 >= 5e-4.
inline Ball eval_zeta(const Ball& s, const PrecisionContext& ctx) {
    if (!(s.lower_d() > 1.0 + 1e-6))
        throw std::domain_error("eval_zeta: requires s > 1 (margin 1e-6)");
    PrecisionContext c = ctx;
    Ball z = zeta_derivative(0, s, c);
    for (;;) {
        double rel = z.radius() / std::max(1e-300, std::fabs(z.center_d()));
        if (rel <= std::ldexp(1.0, (int)(8 - ctx.working_bits))) return z;
        if (!c.can_escalate())
            throw precision_exhausted("eval_zeta: target radius unreachable at max_bits");
        c = c.escalated();
        Ball z2 = zeta_derivative(0, s, c);
        // an input ball of nonzero width caps the achievable radius; stop
        // once extra precision no longer helps
        if (z2.radius() > 0.5 * z.radius()) return z2.radius() < z.radius() ? z2 : z;
        z = z2;
    }
}

inline Ball eval_zeta(double s, const PrecisionContext& ctx) {
    return eval_zeta(Ball::exact_d(s, ctx.working_bits), ctx);
}

// zeta'/zeta(s) for s >= 1.5, via the Euler-Maclaurin quotient.
inline Ball eval_zeta_logderiv(const Ball& s, const PrecisionContext& ctx) {
    if (!(s.lower_d() >= 1.5 - 1e-12))
        throw std::domain_error("eval_zeta_logderiv: requires s >= 1.5");
    Ball num = zeta_derivative(1, s, ctx);
    Ball den = zeta_derivative(0, s, ctx);
    return num / den;
}

inline Ball eval_zeta_logderiv(double s, const PrecisionContext& ctx) {
    return eval_zeta_logderiv(Ball::exact_d(s, ctx.working_bits), ctx);
}

// Secondary evaluator: -sum_{n<=N} Lambda(n) n^{-s} with the elementary
// integral tail bound. Converges like N^{1-s}; used as an independent
// cross-check route at moderate accuracy.
inline Ball zeta_logderiv_series(double s, std::uint64_t nmax, const PrecisionContext& ctx) {
    if (!(s >= 1.5)) throw std::domain_error("zeta_logderiv_series: requires s >= 1.5");
    mpfr_prec_t wp = ctx.working_bits;
    auto primes = prime_sieve(nmax);
    Ball sb = Ball::exact_d(s, wp);
    Ball acc = Ball::exact_si(0, wp);
    for (std::uint32_t p : primes) {
        Ball lp = Ball::exact_si((long)p, wp).log();
        std::uint64_t pk = p;
        while (pk <= nmax) {
            Ball t = (-(sb * Ball::exact_d((double)pk, wp).log())).exp();
            acc = acc + lp * t;
            if (pk > nmax / p) break;
            pk *= p;
        }
    }
    // tail: sum_{n>N} Lambda(n) n^{-s} <= N^{1-s} (log N/(s-1) + 1/(s-1)^2)
    Ball N = Ball::exact_d((double)nmax, wp);
    Ball lnN = N.log();
    Ball sm1 = sb - 1;
    Ball tail = ((1 - sb) * lnN).exp() * (lnN / sm1 + 1 / (sm1 * sm1));
    acc = acc.inflated(tail.upper_d());
    return -acc;
}

// digamma(x) = Gamma'/Gamma(x), x > 0: upward recurrence then the
// asymptotic series with the first-omitted-term remainder bound.
inline Ball eval_digamma(const Ball& x, const PrecisionContext& ctx) {
    if (!(x.lower_d() > 0))
        throw std::domain_error("eval_digamma: requires x > 0");
    mpfr_prec_t wp = ctx.working_bits + 32;
    double shift_to = std::max(10.0, (double)ctx.working_bits / 5.0);
    Ball y = x;
    Ball rec = Ball::exact_si(0, wp);
    while (y.center_d() < shift_to) {
        rec = rec + 1 / y;
        y = y + 1;
    }
    // psi(y) = log y - 1/(2y) - sum B_2k/(2k y^2k) + R, |R| <= |B_{2m+2}|/((2m+2) y^{2m+2})
    Ball res = y.log() - 1 / (y * 2);
    Ball y2 = y * y;
    Ball ypow = y2;
    double logy = std::log(y.center_d());
    unsigned mterms = (unsigned)std::ceil((ctx.working_bits + 16) / std::max(2.0, 2.0 * logy / 0.6931));
    mterms = std::min(mterms, 200u);
    for (unsigned k = 1; k <= mterms; ++k) {
        mpq_class c = bernoulli(2 * k) / mpq_class(2 * k);
        mpq_t cq; mpq_init(cq); mpq_set(cq, c.get_mpq_t());
        res = res - Ball::from_mpq(cq, wp) / ypow;
        mpq_clear(cq);
        ypow = ypow * y2;
    }
    mpq_class rb = abs(bernoulli(2 * mterms + 2)) / mpq_class(2 * mterms + 2);
    mpq_t rq; mpq_init(rq); mpq_set(rq, rb.get_mpq_t());
    Ball rem = Ball::from_mpq(rq, wp) / ypow;
    mpq_clear(rq);
    res = res.inflated(rem.upper_d());
    res = res - rec;
    Ball out(ctx.working_bits);
    return out + res;
}

inline Ball eval_digamma(double x, const PrecisionContext& ctx) {
    return eval_digamma(Ball::exact_d(x, ctx.working_bits), ctx);
}

// Adaptive enclosure of int_a^b f for f CONVEX on [a,b]:
// midpoint rule under-estimates, trapezoid over-estimates; refine the
// largest gap until the total enclosure width is below tol.
struct QuadratureResult {
    Ball value;
    std::size_t evaluations = 0;
};

inline QuadratureResult integrate_convex(const std::function<Ball(const Ball&)>& f,
                                         const Ball& a, const Ball& b, double tol,
                                         mpfr_prec_t prec, std::size_t max_segments = 400000) {
    struct Seg {
        Ball lo, hi, flo, fhi, mid, fmid;
        double gap; // upper(trap) - lower(midrule)
    };
    auto make = [&](const Ball& lo, const Ball& hi, const Ball& flo, const Ball& fhi) {
        Seg s{lo, hi, flo, fhi, Ball(prec), Ball(prec), 0};
        s.mid = (lo + hi) / 2;
        s.fmid = f(s.mid);
        Ball w = hi - lo;
        Ball trap = (flo + fhi) / 2 * w;
        Ball midr = s.fmid * w;
        s.gap = trap.upper_d() - midr.lower_d();
        return s;
    };
    auto cmp = [](const Seg& x, const Seg& y) { return x.gap < y.gap; };
    std::priority_queue<Seg, std::vector<Seg>, decltype(cmp)> q(cmp);
    std::size_t evals = 0;
    Ball fa = f(a), fb = f(b);
    evals += 3;
    q.push(make(a, b, fa, fb));
    double total_gap = q.top().gap;
    while (total_gap > tol && !q.empty()) {
        Seg s = q.top();
        q.pop();
        total_gap -= s.gap;
        Seg l = make(s.lo, s.mid, s.flo, s.fmid);
        Seg r = make(s.mid, s.hi, s.fmid, s.fhi);
        evals += 2;
        total_gap += l.gap + r.gap;
        q.push(std::move(l));
        q.push(std::move(r));
        if (q.size() > max_segments)
            throw precision_exhausted("integrate_convex: tolerance unreachable");
    }
    // accumulate: lower = sum midpoint-rule lowers, upper = sum trapezoid uppers
    mpfr_t lo_acc, hi_acc, t;
    mpfr_inits2(prec + 32, lo_acc, hi_acc, t, (mpfr_ptr) nullptr);
    mpfr_set_zero(lo_acc, 1);
    mpfr_set_zero(hi_acc, 1);
    auto fold = [&](const Seg& s) {
        Ball w = s.hi - s.lo;
        Ball midr = s.fmid * w;
        Ball trap = (s.flo + s.fhi) / 2 * w;
        midr.get_lower(t);
        mpfr_add(lo_acc, lo_acc, t, MPFR_RNDD);
        trap.get_upper(t);
        mpfr_add(hi_acc, hi_acc, t, MPFR_RNDU);
    };
    while (!q.empty()) { fold(q.top()); q.pop(); }
    QuadratureResult res{Ball::from_endpoints(lo_acc, hi_acc, prec), evals};
    mpfr_clears(lo_acc, hi_acc, t, (mpfr_ptr) nullptr);
    return res;
}

// Logarithmic integral int_2^x du/log u, x >= 2.
// 1/log u is convex and decreasing on (1, inf).
inline Ball eval_log_integral(const Ball& x, const PrecisionContext& ctx, double tol = 1e-6) {
    if (x.lower_d() < 2.0 - 1e-12)
        throw std::domain_error("eval_log_integral: requires x >= 2");
    mpfr_prec_t wp = ctx.working_bits;
    Ball two = Ball::exact_si(2, wp);
    if (x.upper_d() <= 2.0) return Ball::exact_si(0, wp);
    auto f = [&](const Ball& u) { return 1 / u.log(); };
    return integrate_convex(f, two, x, tol, wp).value;
}

inline Ball eval_log_integral(double x, const PrecisionContext& ctx, double tol = 1e-6) {
    return eval_log_integral(Ball::exact_d(x, ctx.working_bits), ctx, tol);
}

} // namespace chebx

#endif
