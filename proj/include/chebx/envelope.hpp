#ifndef CHEBX_ENVELOPE_HPP
#define CHEBX_ENVELOPE_HPP

// The 49-term majorant F(gamma) = sum a_j f(s_j, gamma) of the zero-sum
// kernel g, with s_j = 1 + j/2: constraint-system construction, high
// precision solve with ceiling to the 1e-7 grid, exact-rational Sturm
// certification of F >= g on all of R, the four constant sums, the
// epsilon_n constants, and monotonicity of S(n) = sum a_j n^{-s_j}.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chebx/ball.hpp"
#include "chebx/ratpoly.hpp"
#include "chebx/special.hpp"

namespace chebx {
namespace envelope {

inline constexpr int kTerms = 49;

// Published reference coefficients, scaled by 1e7.
inline const std::array<const char*, kTerms>& reference_table() {
    static const std::array<const char*, kTerms> t = {
        "67441107",
        "129064216397",
        "-33671827706277",
        "4159437592468632",
        "-315432926321374242",
        "16370077474919646336",
        "-620228745134606597597",
        "17934517713943067903261",
        "-408973952667945326004549",
        "7542955862267902755091933",
        "-114797714164799489558618807",
        "1465278757842284478556905563",
        "-15896327170655789866055422304",
        "148210358380111290581087608810",
        "-1198675077750183343628567667972",
        "8475563352018452380288345356252",
        "-52742543205461653283881602845090",
        "290485125582627204720553754700530",
        "-1422762853575378758435389963062636",
        "6222222002869884071289885659404750",
        "-24380706266315957556815280817594915",
        "85837343646704274150965262557412097",
        "-272183051338763525712916125735803989",
        "778809192744980652056346184699871878",
        "-2013896299428527154913597515037117583",
        "4711532246020032770961059850536842961",
        "-9979971210677326363399566081587309621",
        "19147233119732562826091118305794764779",
        "-33274047709559371113992775342599269485",
        "52358220195286687433763798635287630555",
        "-74548381119823637972378393085833994786",
        "95937426238030011573589993986867291432",
        "-111421834266414109909340554112526772452",
        "116550516507798376160362309501875288819",
        "-109525478172827789046963052436691334874",
        "92171825266689255311105390157515626975",
        "-69194087310394938615774929447065136471",
        "46115594804031958286535245249055216023",
        "-27125577798003271571724298417346235682",
        "13979915122173412958783020578998059040",
        "-6255803435136676900876694551147848415",
        "2402825607446165955037188420531530836",
        "-780487429206171024872362699598861667",
        "210196127819906522271561747433766713",
        "-45668115875651680795706979313599659",
        "7690167072902618888205802917980935",
        "-941636162712117945732981144066824",
        "74577580991057238830195411510057",
        "-2867250294949111291564065810976",
    };
    return t;
}

inline std::vector<mpz_class> reference_numerators() {
    std::vector<mpz_class> v;
    v.reserve(kTerms);
    for (auto* s : reference_table()) v.emplace_back(s);
    return v;
}

// a_j as exact rationals (numerator / 10^7)
inline std::vector<mpq_class> reference_coefficients() {
    std::vector<mpq_class> out;
    const mpz_class scale = mpz_class(10000000);
    for (auto& n : reference_numerators()) {
        mpq_class q(n, scale);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

// Interpolation node set Upsilon (23 points), exact rationals.
inline std::vector<mpq_class> upsilon() {
    auto q = [](long num, long den) { return mpq_class(num, den); };
    return {q(62, 100), q(1, 1),  q(16, 10), q(21, 10), q(28, 10), q(38, 10),
            q(46, 10),  q(58, 10), q(75, 10), q(93, 10), q(129, 10), q(14, 1),
            q(16, 1),   q(17, 1),  q(18, 1),  q(19, 1),  q(20, 1),   q(30, 1),
            q(40, 1),   q(50, 1),  q(100, 1), q(1000, 1), q(10000, 1)};
}

inline long node_weight(int j) { return j + 1; } // 2 s_j - 1 for j = 1..49

// basis function f(s_j, gamma) = 4(2s-1)/((2s-1)^2 + 4 gamma^2)
inline Ball basis_f(int j, const Ball& gamma) {
    long m = node_weight(j);
    Ball g2 = gamma * gamma;
    return Ball::exact_si(4 * m, gamma.prec()) / (g2 * 4 + m * m);
}
inline Ball basis_f_dgamma(int j, const Ball& gamma) {
    long m = node_weight(j);
    Ball den = gamma * gamma * 4 + m * m;
    return Ball::exact_si(-32 * m, gamma.prec()) * gamma / (den * den);
}

// target kernel g and its derivative
inline Ball target_g_inner(const Ball& gamma) {
    return Ball::exact_si(2, gamma.prec()) / (gamma * gamma * 4 + 1).sqrt();
}
inline Ball target_g_outer(const Ball& gamma, const Ball& pi) {
    Ball amp = (pi * pi * 16 + 1).sqrt() * 2; // 2|1+4 pi i|
    return amp / (gamma * gamma * 4 + 1);
}
inline Ball target_g_inner_d(const Ball& gamma) {
    Ball den = (gamma * gamma * 4 + 1);
    return -(gamma * 8) / (den * den.sqrt());
}
inline Ball target_g_outer_d(const Ball& gamma, const Ball& pi) {
    Ball amp = (pi * pi * 16 + 1).sqrt() * 16;
    Ball den = (gamma * gamma * 4 + 1);
    return -(amp * gamma) / (den * den);
}

struct ConstraintSystem {
    std::vector<std::vector<Ball>> a; // 49 x 49
    std::vector<Ball> rhs;            // 49
};

// Rows: F(gamma) = g(gamma) on {0} + Upsilon + {2pi}; F' = g' on Upsilon;
// asymptotic row sum a_j (2 s_j - 1) = |1/2 + 2 pi i|.
inline ConstraintSystem build_constraint_system(const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    Ball pi = Ball::pi(wp);
    Ball twopi = pi * 2;
    ConstraintSystem sys;
    auto add_value_row = [&](const Ball& gamma, bool inner) {
        std::vector<Ball> row;
        row.reserve(kTerms);
        for (int j = 1; j <= kTerms; ++j) row.push_back(basis_f(j, gamma));
        sys.a.push_back(std::move(row));
        sys.rhs.push_back(inner ? target_g_inner(gamma) : target_g_outer(gamma, pi));
    };
    auto ball_of = [&](const mpq_class& q) { return Ball::from_mpq(q.get_mpq_t(), wp); };

    add_value_row(Ball::exact_si(0, wp), true);
    for (auto& up : upsilon()) {
        // nodes are well clear of 2 pi = 6.283...: 5.8 is inner, 7.5 outer
        bool inner = up < mpq_class(63, 10);
        add_value_row(ball_of(up), inner);
    }
    add_value_row(twopi, true); // continuous at the branch point

    for (auto& up : upsilon()) {
        Ball gamma = ball_of(up);
        std::vector<Ball> row;
        row.reserve(kTerms);
        for (int j = 1; j <= kTerms; ++j) row.push_back(basis_f_dgamma(j, gamma));
        sys.a.push_back(std::move(row));
        bool inner = up < mpq_class(63, 10);
        sys.rhs.push_back(inner ? target_g_inner_d(gamma) : target_g_outer_d(gamma, pi));
    }

    std::vector<Ball> asym;
    for (int j = 1; j <= kTerms; ++j) asym.push_back(Ball::exact_si(node_weight(j), wp));
    sys.a.push_back(std::move(asym));
    sys.rhs.push_back((pi * pi * 16 + 1).sqrt() / 2); // sqrt(1/4 + 4 pi^2)
    return sys;
}

// Gaussian elimination with partial pivoting in ball arithmetic.
inline std::vector<Ball> solve_dense(ConstraintSystem sys) {
    const int n = (int)sys.a.size();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0;
        for (int r = col; r < n; ++r) {
            double mag = std::fabs(sys.a[r][col].center_d());
            if (piv < 0 || mag > best) { piv = r; best = mag; }
        }
        if (sys.a[piv][col].contains_zero())
            throw std::runtime_error("constraint system could not be verified regular");
        std::swap(sys.a[col], sys.a[piv]);
        std::swap(sys.rhs[col], sys.rhs[piv]);
        for (int r = col + 1; r < n; ++r) {
            if (sys.a[r][col].contains_zero() && sys.a[r][col].exact()) continue;
            Ball factor = sys.a[r][col] / sys.a[col][col];
            for (int c2 = col + 1; c2 < n; ++c2)
                sys.a[r][c2] = sys.a[r][c2] - factor * sys.a[col][c2];
            sys.rhs[r] = sys.rhs[r] - factor * sys.rhs[col];
            sys.a[r][col] = Ball::exact_si(0, sys.a[r][col].prec());
        }
    }
    std::vector<Ball> x((std::size_t)n);
    for (int r = n - 1; r >= 0; --r) {
        Ball acc = sys.rhs[(std::size_t)r];
        for (int c2 = r + 1; c2 < n; ++c2) acc = acc - sys.a[(std::size_t)r][(std::size_t)c2] * x[(std::size_t)c2];
        x[(std::size_t)r] = acc / sys.a[(std::size_t)r][(std::size_t)r];
    }
    return x;
}

struct SolveResult {
    std::vector<mpz_class> rounded; // ceil(a_j * 1e7), certified
    std::vector<Ball> raw;
    int exact_matches = 0;
    std::vector<mpz_class> deltas; // rounded - reference
    mpfr_prec_t bits_used = 0;
};

// ceil of x * 1e7 certified from an enclosure; nullopt if the enclosure
// straddles a grid boundary.
inline std::optional<mpz_class> certified_ceil_1e7(const Ball& x) {
    mpfr_t lo, hi;
    mpfr_inits2(x.prec() + 64, lo, hi, (mpfr_ptr) nullptr);
    x.get_lower(lo);
    x.get_upper(hi);
    mpfr_mul_ui(lo, lo, 10000000u, MPFR_RNDD);
    mpfr_mul_ui(hi, hi, 10000000u, MPFR_RNDU);
    mpfr_ceil(lo, lo);
    mpfr_ceil(hi, hi);
    std::optional<mpz_class> out;
    if (mpfr_cmp(lo, hi) == 0) {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), lo, MPFR_RNDN);
        out = z;
    }
    mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
    return out;
}

// Solve the 49x49 system, escalating precision until every coefficient
// enclosure is narrower than 1e-8 and its ceiling to the 1e-7 grid is
// unambiguous; reports agreement with the reference table.
inline SolveResult solve_and_round(PrecisionContext ctx) {
    if (ctx.working_bits < 512) ctx.working_bits = 512;
    for (;;) {
        auto sol = solve_dense(build_constraint_system(ctx));
        bool ok = true;
        SolveResult res;
        res.raw = sol;
        res.bits_used = ctx.working_bits;
        for (auto& b : sol) {
            if (b.radius() > 0.5e-8) { ok = false; break; }
            auto z = certified_ceil_1e7(b);
            if (!z) { ok = false; break; }
            res.rounded.push_back(*z);
        }
        if (ok) {
            auto ref = reference_numerators();
            for (int j = 0; j < kTerms; ++j) {
                mpz_class d = res.rounded[(std::size_t)j] - ref[(std::size_t)j];
                res.deltas.push_back(d);
                if (d == 0) res.exact_matches++;
            }
            return res;
        }
        if (!ctx.can_escalate())
            throw precision_exhausted("solve_and_round: coefficient width not achieved");
        ctx = ctx.escalated();
    }
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

struct BranchReport {
    std::string name;
    mpq_class lo;          // interval in u = gamma^2
    std::optional<mpq_class> hi; // empty for +infinity
    int root_count = -1;
    int endpoint_sign_lo = 0;
    int endpoint_sign_hi = 0;
    bool nonnegative = false;
};

struct EnvelopeCertificate {
    bool certified = false;
    std::vector<mpz_class> coefficient_numerators;
    mpq_class pi_lower, pi_upper;
    BranchReport inner, outer;
    bool tail_positive = false;
    bool f_at_zero_positive = false;
    std::optional<mpq_class> witness_u; // point with F^2 < g^2 (or F(0) <= g(0))
    std::string to_text() const;
};

inline void rational_pi_enclosure(mpq_class& lo, mpq_class& hi, mpfr_prec_t bits = 160) {
    mpfr_t p;
    mpfr_init2(p, bits);
    mpz_class zl, zu;
    mpfr_const_pi(p, MPFR_RNDD);
    mpfr_exp_t e = mpfr_get_z_2exp(zl.get_mpz_t(), p);
    lo = mpq_class(zl);
    if (e >= 0) lo *= mpz_class(1) << (unsigned long)e;
    else lo /= mpz_class(1) << (unsigned long)(-e);
    mpfr_const_pi(p, MPFR_RNDU);
    e = mpfr_get_z_2exp(zu.get_mpz_t(), p);
    hi = mpq_class(zu);
    if (e >= 0) hi *= mpz_class(1) << (unsigned long)e;
    else hi /= mpz_class(1) << (unsigned long)(-e);
    mpfr_clear(p);
    lo.canonicalize();
    hi.canonicalize();
}

// Nonnegativity of p on [lo, hi] (hi may be +inf, then the leading
// coefficient must be positive): Sturm count of distinct roots, endpoint
// signs, and an even-multiplicity argument at any isolated root.
inline bool certify_nonnegative(const RationalPoly& p, const mpq_class& lo,
                                const std::optional<mpq_class>& hi, BranchReport& rep,
                                std::optional<mpq_class>& witness) {
    SturmChain ch(p);
    const IntPoly& ip = ch.poly();
    rep.lo = lo;
    rep.hi = hi;
    rep.endpoint_sign_lo = ip.sign_at(lo);
    if (rep.endpoint_sign_lo < 0) { witness = lo; return false; }
    SturmPoint hi_pt = hi ? SturmPoint::at(*hi) : SturmPoint::pos_inf();
    rep.endpoint_sign_hi = hi ? ip.sign_at(*hi) : ip.sign_at_pos_inf();
    if (rep.endpoint_sign_hi < 0) { witness = hi ? *hi : lo; return false; }
    mpq_class lo_shift = lo;
    if (rep.endpoint_sign_lo == 0) {
        // count on (lo, hi] misses nothing; a vanishing left endpoint only
        // needs a nearby sign probe to rule out a downward crossing
        mpq_class eps = hi ? (*hi - lo) / 1000000 : mpq_class(1, 1000000);
        int guard = 0;
        while (ip.sign_at(lo_shift) == 0 && guard < 64) { lo_shift += eps / (1 + guard); ++guard; }
        if (ip.sign_at(lo_shift) < 0) { witness = lo_shift; return false; }
    }
    rep.root_count = ch.count(SturmPoint::at(lo_shift), hi_pt);
    if (rep.root_count == 0) { rep.nonnegative = true; return true; }

    // isolate and check signs around each root
    mpq_class right;
    if (hi) right = *hi;
    else {
        // Cauchy bound on the roots: 1 + max |c_i| / |c_d|
        const IntPoly& q = ip;
        mpq_class m(0);
        for (std::size_t i = 0; i + 1 < q.c.size(); ++i) {
            mpq_class v = abs(mpq_class(q.c[i]) / mpq_class(q.c.back()));
            if (v > m) m = v;
        }
        right = m + 1;
        if (right < lo_shift) { rep.nonnegative = true; return true; }
    }
    auto intervals = isolate_roots(ch, lo_shift, right);
    // sample signs at every isolation endpoint; a strictly-negative value
    // anywhere is a counterexample, otherwise all roots have even
    // multiplicity and p stays nonnegative
    for (auto& iv : intervals) {
        int sa = ip.sign_at(iv.first);
        int sb = ip.sign_at(iv.second);
        if (sa < 0) { witness = iv.first; return false; }
        if (sb < 0) { witness = iv.second; return false; }
        if (sa > 0 && sb > 0) continue; // even multiplicity inside
        // endpoint landed on a root: probe just inside
        mpq_class mid = (iv.first + iv.second) / 2;
        if (ip.sign_at(mid) < 0) { witness = mid; return false; }
    }
    rep.nonnegative = true;
    return true;
}

inline EnvelopeCertificate certify_envelope(const std::vector<mpq_class>& a) {
    if ((int)a.size() != kTerms)
        throw std::invalid_argument("certify_envelope: expected 49 coefficients");
    EnvelopeCertificate cert;
    for (auto& q : a) {
        mpq_class scaled = q * 10000000;
        cert.coefficient_numerators.push_back(scaled.get_num() / scaled.get_den());
    }
    rational_pi_enclosure(cert.pi_lower, cert.pi_upper);

    // D(u) = prod (m_j^2 + 4u); Q_j = D / (m_j^2 + 4u) via prefix/suffix
    std::vector<RationalPoly> factors;
    for (int j = 1; j <= kTerms; ++j)
        factors.push_back(RationalPoly::linear(mpq_class(node_weight(j)) * node_weight(j), 4));
    std::vector<RationalPoly> pre(kTerms + 1), suf(kTerms + 1);
    pre[0] = RationalPoly::constant(1);
    suf[kTerms] = RationalPoly::constant(1);
    for (int i = 0; i < kTerms; ++i) pre[(std::size_t)i + 1] = pre[(std::size_t)i] * factors[(std::size_t)i];
    for (int i = kTerms; i-- > 0;) suf[(std::size_t)i] = suf[(std::size_t)i + 1] * factors[(std::size_t)i];
    const RationalPoly& D = pre[kTerms];

    RationalPoly N; // numerator of F over D
    for (int j = 0; j < kTerms; ++j) {
        mpq_class w = a[(std::size_t)j] * 4 * node_weight(j + 1);
        N = N + (pre[(std::size_t)j] * suf[(std::size_t)j + 1]) * w;
    }

    // Positivity anchor for the squaring step: F(0) > 0 plus F^2 >= g^2 > 0
    // forces F > 0 everywhere, hence F >= g.
    mpq_class f0 = N.eval(0) / D.eval(0);
    cert.f_at_zero_positive = f0 > 0;
    if (f0 <= 0) {
        cert.witness_u = mpq_class(0);
        cert.inner.name = "inner";
        cert.outer.name = "outer";
        return cert;
    }

    RationalPoly one_4u = RationalPoly::linear(1, 4);
    RationalPoly P1 = N * N * one_4u - D * D * 4;
    mpq_class g_out_sq_num = (cert.pi_upper * cert.pi_upper * 16 + 1) * 4;
    RationalPoly P2 = N * N * one_4u * one_4u - D * D * g_out_sq_num;

    mpq_class u_hi = cert.pi_upper * cert.pi_upper * 4; // (2 pi)^2 upper
    mpq_class u_lo = cert.pi_lower * cert.pi_lower * 4;

    cert.inner.name = "inner";
    cert.outer.name = "outer";
    std::optional<mpq_class> wit;
    bool inner_ok = certify_nonnegative(P1, mpq_class(0), u_hi, cert.inner, wit);
    if (!inner_ok) { cert.witness_u = wit; return cert; }
    cert.tail_positive = P2.leading() > 0;
    if (!cert.tail_positive) { cert.witness_u = u_hi * 100; return cert; }
    bool outer_ok = certify_nonnegative(P2, u_lo, std::nullopt, cert.outer, wit);
    if (!outer_ok) { cert.witness_u = wit; return cert; }

    cert.certified = true;
    return cert;
}

inline std::string EnvelopeCertificate::to_text() const {
    std::string s;
    s += "envelope_certificate_version 1\n";
    s += "verdict " + std::string(certified ? "certified" : "failed") + "\n";
    s += "terms " + std::to_string(coefficient_numerators.size()) + "\n";
    for (std::size_t i = 0; i < coefficient_numerators.size(); ++i)
        s += "a_numerator_1e7 " + std::to_string(i + 1) + " " + coefficient_numerators[i].get_str() + "\n";
    s += "pi_lower " + pi_lower.get_num().get_str() + "/" + pi_lower.get_den().get_str() + "\n";
    s += "pi_upper " + pi_upper.get_num().get_str() + "/" + pi_upper.get_den().get_str() + "\n";
    auto emit_branch = [&s](const BranchReport& b) {
        s += "branch " + b.name + "\n";
        s += "  interval_lo " + b.lo.get_num().get_str() + "/" + b.lo.get_den().get_str() + "\n";
        s += "  interval_hi " + (b.hi ? b.hi->get_num().get_str() + "/" + b.hi->get_den().get_str()
                                      : std::string("inf")) + "\n";
        s += "  root_count " + std::to_string(b.root_count) + "\n";
        s += "  endpoint_sign_lo " + std::to_string(b.endpoint_sign_lo) + "\n";
        s += "  endpoint_sign_hi " + std::to_string(b.endpoint_sign_hi) + "\n";
        s += "  nonnegative " + std::string(b.nonnegative ? "yes" : "no") + "\n";
    };
    emit_branch(inner);
    emit_branch(outer);
    s += "tail_positive " + std::string(tail_positive ? "yes" : "no") + "\n";
    s += "f_at_zero_positive " + std::string(f_at_zero_positive ? "yes" : "no") + "\n";
    if (witness_u)
        s += "witness_u " + witness_u->get_num().get_str() + "/" + witness_u->get_den().get_str() + "\n";
    return s;
}

// ---------------------------------------------------------------------------
// Constant sums, epsilon_n, S(n)
// ---------------------------------------------------------------------------

struct ConstantSums {
    Ball sum_a;            // = 1.3479...
    Ball sum_rational;     // sum a_j (2/s_j + 2/(s_j-1)) <= 7.786
    Ball sum_digamma_half; // sum a_j psi(s_j/2) <= -0.421
    Ball sum_digamma_next; // sum a_j psi((s_j+1)/2) <= 0.392
};

inline ConstantSums compute_constant_sums(const std::vector<mpq_class>& a,
                                          const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working_bits;
    mpq_class s1(0), s2(0);
    for (int j = 1; j <= kTerms; ++j) {
        mpq_class sj(j + 2, 2); // s_j = 1 + j/2
        s1 += a[(std::size_t)j - 1];
        s2 += a[(std::size_t)j - 1] * (mpq_class(2) / sj + mpq_class(2) / (sj - 1));
    }
    ConstantSums out;
    out.sum_a = Ball::from_mpq(s1.get_mpq_t(), wp);
    out.sum_rational = Ball::from_mpq(s2.get_mpq_t(), wp);
    Ball d1 = Ball::exact_si(0, wp), d2 = Ball::exact_si(0, wp);
    for (int j = 1; j <= kTerms; ++j) {
        Ball aj = Ball::from_mpq(a[(std::size_t)j - 1].get_mpq_t(), wp);
        Ball sj = Ball::exact_si(j + 2, wp) / 2;
        d1 = d1 + aj * eval_digamma(sj / 2, ctx);
        d2 = d2 + aj * eval_digamma((sj + 1) / 2, ctx);
    }
    out.sum_digamma_half = d1;
    out.sum_digamma_next = d2;
    return out;
}

// epsilon_n = -2 n sum_j a_j (zeta'/zeta)(s_j n)
inline Ball compute_epsilon(unsigned n, const std::vector<mpq_class>& a,
                            const PrecisionContext& ctx) {
    if (n < 1) throw std::domain_error("compute_epsilon: n >= 1");
    mpfr_prec_t wp = ctx.working_bits;
    Ball acc = Ball::exact_si(0, wp);
    for (int j = 1; j <= kTerms; ++j) {
        Ball aj = Ball::from_mpq(a[(std::size_t)j - 1].get_mpq_t(), wp);
        Ball s = Ball::exact_si((long)((j + 2) * n), wp) / 2; // s_j * n
        acc = acc + aj * eval_zeta_logderiv(s, ctx);
    }
    return acc * Ball::exact_si(-2 * (long)n, wp);
}

// guaranteed lower bound published as max(0, lower endpoint)
inline double epsilon_lower_bound(unsigned n, const std::vector<mpq_class>& a,
                                  const PrecisionContext& ctx) {
    double lo = compute_epsilon(n, a, ctx).lower_d();
    return lo > 0 ? lo : 0.0;
}

struct MonotonicityReport {
    bool ok = false;
    long first_violation = -1;       // n with S(n+1) >= S(n), if any
    bool groups_decreasing = false;  // symbolic group check at the threshold
    bool positive = false;           // S(n) > 0 on the swept range
    long threshold = 0;
};

inline constexpr long kGroupThreshold = 85597; // where every group starts decreasing

// (i) exact check that each consecutive group of S(n) decreases for
// n >= kGroupThreshold; (ii) ball sweep S(n+1) < S(n) for n <= sweep_to;
// (iii) S(n) > 0 on the swept range. Full monotonicity of S needs
// sweep_to = kGroupThreshold; smaller values check a prefix only.
inline MonotonicityReport verify_S_monotone(const std::vector<mpq_class>& a,
                                            long sweep_to = kGroupThreshold,
                                            const PrecisionContext& ctx = PrecisionContext(320, 4096)) {
    MonotonicityReport rep;
    long threshold = sweep_to;
    rep.threshold = threshold;

    // --- symbolic group checks at n = kGroupThreshold ---
    // triple (a1, a2, a3): -S'_group * n^{7/2} = (3/2)a1 n + 2 a2 sqrt(n) + (5/2)a3 > 0
    // pairs (a_j, a_{j+1}), j even >= 4:  ((j+2)/2) a_j sqrt(n) + ((j+3)/2) a_{j+1} > 0
    // each bracket is increasing in n, so positivity at the threshold
    // certifies decrease for all n beyond it.
    mpq_class n(kGroupThreshold);
    bool groups = true;
    {
        mpq_class A = mpq_class(3, 2) * a[0] * n + mpq_class(5, 2) * a[2];
        mpq_class B = 2 * a[1]; // positive; inequality A + B sqrt(n) > 0
        if (A >= 0) { /* trivially positive */ }
        else groups = groups && (B * B * n > A * A);
    }
    for (int j = 4; j <= 48; j += 2) {
        mpq_class c1 = mpq_class(j + 2, 2) * a[(std::size_t)j - 1]; // coeff of sqrt(n), positive
        mpq_class c0 = mpq_class(j + 3, 2) * a[(std::size_t)j];     // negative
        if (c1 <= 0) { groups = false; break; }
        if (c0 >= 0) continue;
        if (!(c1 * c1 * n > c0 * c0)) { groups = false; break; }
    }
    rep.groups_decreasing = groups;

    // --- direct sweep over n <= threshold ---
    mpfr_prec_t wp = ctx.working_bits;
    std::vector<Ball> ab;
    for (auto& q : a) ab.push_back(Ball::from_mpq(q.get_mpq_t(), wp));
    auto S = [&](long nn) {
        Ball v = 1 / Ball::exact_si(nn, wp).sqrt(); // n^{-1/2}
        Ball acc = Ball::exact_si(0, wp);
        for (int j = kTerms; j >= 1; --j) acc = (acc + ab[(std::size_t)j - 1]) * v;
        return acc / Ball::exact_si(nn, wp); // (1/n) sum a_j v^j
    };
    rep.positive = true;
    Ball prev = S(1);
    for (long k = 1; k <= threshold; ++k) {
        Ball next = S(k + 1);
        Ball diff = prev - next;
        if (!(prev.lower_sign() > 0)) rep.positive = false;
        if (!(diff.lower_sign() > 0)) {
            // escalate this comparison before declaring a violation
            PrecisionContext hi(ctx.working_bits * 2, ctx.max_bits);
            bool resolved = false;
            while (true) {
                std::vector<Ball> ab2;
                for (auto& q : a) ab2.push_back(Ball::from_mpq(q.get_mpq_t(), hi.working_bits));
                auto S2 = [&](long nn) {
                    Ball v = 1 / Ball::exact_si(nn, hi.working_bits).sqrt();
                    Ball acc = Ball::exact_si(0, hi.working_bits);
                    for (int j = kTerms; j >= 1; --j) acc = (acc + ab2[(std::size_t)j - 1]) * v;
                    return acc / Ball::exact_si(nn, hi.working_bits);
                };
                Ball d2 = S2(k) - S2(k + 1);
                if (d2.lower_sign() > 0) { resolved = true; break; }
                if (d2.upper_sign() < 0) { resolved = false; break; }
                if (!hi.can_escalate()) break;
                hi = hi.escalated();
            }
            if (!resolved) {
                rep.first_violation = k;
                rep.ok = false;
                return rep;
            }
        }
        prev = next;
    }
    rep.ok = rep.groups_decreasing && rep.positive && rep.first_violation < 0;
    return rep;
}

} // namespace envelope
} // namespace chebx

#endif
