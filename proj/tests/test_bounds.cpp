#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chebx/bounds.hpp"

using namespace chebx;
using namespace chebx::bounds;

static const PrecisionContext kCtx(160, 2048);
static const mpfr_prec_t wp = 160;

namespace {

// the expanded form of B_a with T = T(x) = 5.2 sqrt(x)/log(x), an
// independent evaluation route for the identity property
Ball ba_expanded(const Ball& x, int n, const Ball& lc, int sg, int dc, int r1, const Ball& eps) {
    Ball pi = Ball::pi(wp);
    auto dec = [&](const char* s) { return Ball::from_str(s, wp); };
    Ball c = dec("5.2");
    Ball T = T_of_x(x);
    Ball lx = x.log();
    Ball sx = x.sqrt();
    Ball lt = (T / (pi * 2)).log();
    Ball part1 = ((c / (pi * 2) / lx).log() / pi - dec("0.296") + dec("1.858") / T +
                  dec("1.075") / sx) *
                 lc / n;
    Ball part2 = lt.square() / (pi * 2) - lx.square() / (pi * 8) +
                 (2 / pi + dec("1.858") / T) * lt - dec("3.633") + dec("7.729") / T -
                 dec("1.501") / sx;
    Ball part3 = ((x + 2) / T + (1 - sg) * lx + Ball::exact_si(sg, wp) + dec("8.276") -
                  dec("0.744") * n * dc - dec("0.527") * r1) /
                 (sx * n);
    Ball part4 = (dec("7.834") + dec("3.779") / T - (dec("0.406") + 1 / (T * 4)) * r1 - eps) / n;
    return part1 + part2 + part3 + part4;
}

} // namespace

TEST_CASE("main bound specializations") {
    Ball one = Ball::exact_si(1, wp);
    Ball l5 = Ball::exact_si(5, wp).log();
    // x = 1: sqrt and logs collapse to 2 lDL + 2 nL
    REQUIRE(main_bound(one, l5, 2, kCtx).overlaps(l5 * 2 + 4));
    REQUIRE_THROWS_AS(main_bound(Ball::exact_d(0.5, wp), l5, 2, kCtx), std::domain_error);
    // termwise dominance over the older constants (1/pi, 1/2pi) for x > 1
    for (double x : {2.0, 10.0, 1e4}) {
        Ball xb = Ball::exact_d(x, wp);
        Ball pi = Ball::pi(wp);
        Ball lx = xb.log();
        Ball older = xb.sqrt() * ((lx / pi + 2) * l5 + (lx.square() / (pi * 2) + 2) * 2);
        REQUIRE(main_bound(xb, l5, 2, kCtx).upper_d() < older.lower_d());
    }
}

TEST_CASE("corollary bound specializations") {
    Ball l5 = Ball::exact_si(5, wp).log();
    // x = e: log x = 1
    Ball e = Ball::exact_si(1, wp).exp();
    Ball pi = Ball::pi(wp);
    Ball direct = e.sqrt() * ((1 / (pi * 2) + 3) * l5 + (1 / (pi * 8) + 1 / (pi * 4) + 6) * 2);
    REQUIRE(corollary_bound(e, l5, 2, kCtx).overlaps(direct));
    // x = 2 against an independent high-precision substitution
    Ball two = Ball::exact_si(2, 512);
    Ball hp = two.sqrt() * ((1 / (Ball::pi(512) * 2) + 3 / two.log()) * Ball::exact_si(5, 512).log() +
                            (two.log() / (Ball::pi(512) * 8) + 1 / (Ball::pi(512) * 4) +
                             6 / two.log()) *
                                2);
    REQUIRE(corollary_bound(Ball::exact_si(2, wp), Ball::exact_si(5, wp).log(), 2, kCtx).overlaps(hp));
    // monotone in lDL
    Ball x10 = Ball::exact_si(10, wp);
    REQUIRE(corollary_bound(x10, l5, 2, kCtx).upper_d() <
            corollary_bound(x10, l5 * 2, 2, kCtx).lower_d());
    REQUIRE_THROWS_AS(corollary_bound(Ball::exact_d(1.5, wp), l5, 2, kCtx), std::domain_error);
}

TEST_CASE("T(x) properties") {
    Ball e2 = (Ball::exact_si(2, wp)).exp();
    REQUIRE(T_of_x(e2).overlaps(Ball::from_str("5.2", wp) * Ball::exact_si(1, wp).exp() / 2));
    // stationary point of sqrt(x)/log(x) sits at log x = 2, so the minimum
    // of T over (1, oo) is T(e^2) = 5.2 e/2 = 7.067... >= 2 pi
    Ball tmin = T_of_x(e2);
    REQUIRE(tmin.overlaps(Ball::from_str("5.2", wp) * Ball::exact_si(1, wp).exp() / 2));
    REQUIRE(tmin.lower_d() >= 2 * M_PI);
    // T(e^4) = 5.2 e^2/4 also clears 2 pi
    Ball e4 = (Ball::exact_si(4, wp)).exp();
    REQUIRE(T_of_x(e4).overlaps(Ball::from_str("5.2", wp) * Ball::exact_si(2, wp).exp() / 4));
    REQUIRE(T_of_x(e4).lower_d() >= 2 * M_PI);
    for (double x : {1.5, 2.0, 10.0, 7.3, 7.4, 1e5})
        REQUIRE(T_of_x(Ball::exact_d(x, wp)).lower_d() >= tmin.lower_d() - 1e-6);
    REQUIRE(T_of_x(10.0) < T_of_x(100.0));
    REQUIRE_THROWS_AS(T_of_x(Ball::exact_si(1, wp)), std::domain_error);
}

TEST_CASE("parametric terms specializations") {
    Ball x = Ball::exact_si(16, wp);
    Ball T = Ball::pi(wp) * 2;
    ClassProfile cls{0, 2, 1, 0};
    auto t = parametric_bound_terms(x, T, 2, Ball::exact_si(3, wp).log(), cls, 0,
                             Ball::from_str("0.751", wp), kCtx);
    // F at T = 2 pi: log term vanishes
    Ball f_direct = x.sqrt() * (Ball::from_str("1.704", wp) +
                                Ball::from_str("1.858", wp) / (Ball::pi(wp) * 2)) +
                    Ball::from_str("1.075", wp);
    REQUIRE(t.f.overlaps(f_direct));
    // DeltaSg first term vanishes for Sg = 1
    Ball ds_direct = Ball::exact_si(3, wp) - Ball::from_str("0.445", wp) * 2 -
                     (x.sqrt() / T) *
                         (Ball::from_str("1.167", wp) +
                          Ball::from_str("0.743", wp) * Ball::exact_si(3, wp).log() / 2) *
                         2;
    REQUIRE(t.delta_sg.overlaps(ds_direct));
    // H2 direct substitution: r1 = 0, Sg = 0, dC = 0, n = 2, eps = 0.751
    ClassProfile cls0{0, 2, 0, 0};
    auto t2 = parametric_bound_terms(x, T, 2, Ball::exact_si(3, wp).log(), cls0, 0,
                              Ball::from_str("0.751", wp), kCtx);
    Ball h2_direct = -x.sqrt() * Ball::from_str("0.751", wp) + x.log();
    REQUIRE(t2.h2.overlaps(h2_direct));
    REQUIRE(t2.h.overlaps(t2.h1 + t2.h2));
    REQUIRE(t2.la.overlaps(t2.f * Ball::exact_si(3, wp).log() + t2.g * 2 + t2.h));
    REQUIRE_THROWS_AS(parametric_bound_terms(Ball::exact_si(2, wp), T, 2, x, cls, 0, x, kCtx),
                      std::domain_error);
    REQUIRE_THROWS_AS(parametric_bound_terms(x, Ball::exact_si(3, wp), 2, x, cls, 0, x, kCtx),
                      std::domain_error);
}

TEST_CASE("sign checkpoints for the normalized test functions") {
    auto ba_at = [&](double x, int n, double lc, int sg, int dc, int r1, double eps) {
        Ball xb = Ball::exact_d(x, wp);
        ClassProfile cls{dc, dc ? 1 : 2, sg, eps};
        return Ba(xb, T_of_x(xb), n, Ball::exact_d(lc, wp), cls, r1, Ball::exact_d(eps, wp), kCtx);
    };
    REQUIRE(ba_at(61, 4, 4.0, 0, 0, 0, 0).upper_d() < 0);
    REQUIRE(ba_at(1e5, 2, std::log(3.0), 1, 0, 0, 0.751).upper_d() < 0);
    Ball x598 = Ball::exact_si(598, wp);
    ClassProfile triv{1, 1, 1, 0.751};
    Ball bb = Bb(x598, T_of_x(x598), 2, Ball::exact_si(300, wp).log(), triv, 0,
                 Ball::from_str("0.751", wp), 2, kCtx);
    REQUIRE(bb.upper_d() < 0);
}

TEST_CASE("ramified-count majorant") {
    Ball z = Ball::exact_si(0, wp);
    REQUIRE(frak_n(z, 1, kCtx).contains_zero());
    REQUIRE(frak_n(Ball::exact_si(49, wp).log(), 3, kCtx).overlaps(Ball::exact_si(1, wp)));
    REQUIRE(frak_n(z, 4, kCtx).overlaps(Ball::from_str("0.4", wp)));
    // |G| = 5 prime: LC / log 4
    Ball l4 = Ball::exact_si(4, wp).log();
    REQUIRE(frak_n(l4, 5, kCtx).overlaps(Ball::exact_si(1, wp)));
    // |G| = 32: LC / log(32 - 8.79)
    Ball v = frak_n(Ball::exact_si(100, wp), 32, kCtx);
    REQUIRE(v.overlaps(Ball::exact_si(100, wp) /
                       (Ball::exact_si(32, wp) - Ball::from_str("8.79", wp)).log()));
}

TEST_CASE("omega bound") {
    mpfr_prec_t p = wp;
    Ball e2 = Ball::from_str("2.1714", p).exp();
    REQUIRE(omega_bound_robin(e2, 1, kCtx).overlaps(e2)); // denominator is exactly 1
    Ball l10 = Ball::exact_si(10, p).log() * 10;          // log(10^10)
    Ball direct = l10 / (l10.log() - Ball::from_str("1.1714", p));
    REQUIRE(omega_bound_robin(l10, 1, kCtx).overlaps(direct));
    REQUIRE_THROWS_AS(omega_bound_robin(Ball::exact_si(3, p), 1, kCtx), std::domain_error);
    // monotone increasing beyond e^2.1714 nK: finite-difference sign
    double prev = 0;
    for (double v : {9.0, 12.0, 20.0, 50.0}) {
        double cur = omega_bound_robin(Ball::exact_d(v, p), 1, kCtx).center_d();
        REQUIRE(cur > prev);
        prev = cur;
    }
}

TEST_CASE("S_g case split") {
    REQUIRE(sg_compute(1, 2, 0, 0) == 2);
    REQUIRE(sg_compute(2, 0, 1, 0) == 1);
    REQUIRE(sg_compute(5, 4, 2, 1) == 0);
    REQUIRE_THROWS_AS(sg_compute(2, 0, 0, 1), std::domain_error);
    REQUIRE_THROWS_AS(sg_compute(0, 1, 1, 0), std::domain_error);
    // 0 <= Sg <= (nL - r1)/2 + dC r1 over small enumerations
    for (int r1 = 0; r1 <= 4; ++r1)
        for (int r2 = 0; r2 <= 4; ++r2) {
            int nl = r1 + 2 * r2;
            if (nl == 0) continue;
            int s1 = sg_compute(1, r1, r2, 0);
            REQUIRE(s1 <= (nl - r1) / 2 + r1);
            for (int r2e = 0; 2 * r2e <= r2; ++r2e) {
                int s2 = sg_compute(2, r1, r2, r2e);
                REQUIRE(s2 >= 0);
                REQUIRE(s2 <= (nl - r1) / 2);
            }
        }
}

TEST_CASE("remainder-term closed forms") {
    Ball x = Ball::exact_si(7, wp);
    auto rc = rc_eval(x, 0, 0, 2, kCtx);
    REQUIRE(rc.rc_prime.overlaps(x.log()));
    // trivial-class extra term present iff delta_C = 1
    auto rc_t = rc_eval(x, 0, 1, 2, kCtx);
    Ball extra = ((x.square() - 1).log() + x * ((x + 1) / (x - 1)).log());
    REQUIRE((rc_t.rc - rc.rc).overlaps(extra));
    REQUIRE_THROWS_AS(rc_eval(Ball::exact_si(1, wp), 0, 0, 2, kCtx), std::domain_error);

    // f1 series consistency at x = 3: sum_{r<=50} x^{1-2r}/(2r(2r-1)) plus a
    // geometric tail bound against the closed form
    Ball x3 = Ball::exact_si(3, 256);
    Ball series = Ball::exact_si(0, 256);
    for (int r = 50; r >= 1; --r) {
        Ball term = Ball::exact_si(3, 256).pow_ui((unsigned long)(2 * r - 1));
        series = series + 1 / (term * (2 * r) * (2 * r - 1));
    }
    // tail: sum_{r>50} x^{1-2r}/(2r(2r-1)) <= x^{-101}/(102*101) * 1/(1-x^{-2})
    Ball tail = 1 / (Ball::exact_si(3, 256).pow_ui(101) * 102 * 101) /
                (1 - Ball::from_str("0.1111111112", 256));
    Ball closed = f1_closed(x3);
    REQUIRE(closed.upper_d() >= series.lower_d());
    REQUIRE(closed.lower_d() <= (series + tail).upper_d());
    // and f2's closed form satisfies f1 + f2 structure: check value at x=3
    Ball f2v = f2_closed(x3);
    REQUIRE(f2v.lower_d() > 0);
}

TEST_CASE("ramification term bound") {
    REQUIRE(ramification_bound(Ball::exact_si(1, wp), 1, 2, 1, kCtx).contains_zero());
    Ball e = Ball::exact_si(1, wp).exp();
    REQUIRE(ramification_bound(e, 1, 2, 1, kCtx).overlaps(Ball::exact_si(1, wp) / 2));
    // min clamps at 1 when |C| >= p
    REQUIRE(ramification_bound(e, 5, 2, 1, kCtx).overlaps(Ball::exact_si(1, wp)));
}

TEST_CASE("secondary zero-sum linear form") {
    Ball z = Ball::exact_si(0, wp);
    REQUIRE(secondary_zero_sum_bound(z, 0, 0, kCtx).overlaps(Ball::from_str("5.3879", wp)));
    Ball l5 = Ball::exact_si(5, wp).log();
    Ball direct = Ball::from_str("0.5375", wp) * l5 - Ball::from_str("1.0355", wp) * 2 +
                  Ball::from_str("5.3879", wp) - Ball::from_str("0.2635", wp) * 2;
    REQUIRE(secondary_zero_sum_bound(l5, 2, 2, kCtx).overlaps(direct));
}

TEST_CASE("B_a: parametric route equals the expanded route on 200 random points") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> ux(std::log(61.0), std::log(1e5));
    std::uniform_real_distribution<double> ulc(std::log(3.0), 50.0);
    std::uniform_int_distribution<int> un(2, 32);
    std::uniform_int_distribution<int> u01(0, 1);
    for (int i = 0; i < 200; ++i) {
        double x = std::exp(ux(rng));
        double lc = ulc(rng);
        int n = un(rng);
        int dc = u01(rng);
        int sg = dc ? n / 2 : u01(rng);
        int r1 = u01(rng) * std::min(2, n);
        double eps = epsilon_policy(n);
        Ball xb = Ball::exact_d(x, wp);
        Ball lcb = Ball::exact_d(lc, wp);
        Ball eb = Ball::exact_d(eps, wp);
        ClassProfile cls{dc, dc ? 1 : 2, sg, eps};
        Ball route1 = Ba(xb, T_of_x(xb), n, lcb, cls, r1, eb, kCtx);
        Ball route2 = ba_expanded(xb, n, lcb, sg, dc, r1, eb);
        REQUIRE(route1.overlaps(route2));
    }
    // the -0.296 constant is the 1.704 - 2 recombination
    Ball recomb = Ball::from_str("1.704", wp) - 2;
    REQUIRE(recomb.overlaps(Ball::from_str("-0.296", wp)));
}

TEST_CASE("B_a monotone in lDL and in x for x >= 61 (adverse endpoints)") {
    ClassProfile worst{0, 2, 1, 0.751};
    Ball eps = Ball::from_str("0.751", wp);
    std::vector<double> xs{61, 100, 300, 1000, 10000, 100000};
    std::vector<double> lcs{std::log(3.0), 2, 10, 50};
    for (int n : {2, 3, 8, 32}) {
        for (double x : xs) {
            Ball xb = Ball::exact_d(x, wp);
            double prev_hi = 1e300;
            for (double lc : lcs) {
                Ball v = Ba(xb, T_of_x(xb), n, Ball::exact_d(lc, wp), worst, 0, eps, kCtx);
                REQUIRE(v.lower_d() <= prev_hi);
                prev_hi = v.upper_d();
            }
        }
        for (double lc : lcs) {
            double prev_hi = 1e300;
            for (double x : xs) {
                Ball xb = Ball::exact_d(x, wp);
                Ball v = Ba(xb, T_of_x(xb), n, Ball::exact_d(lc, wp), worst, 0, eps, kCtx);
                REQUIRE(v.lower_d() <= prev_hi);
                prev_hi = v.upper_d();
            }
        }
    }
}
