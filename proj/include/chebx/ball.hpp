#ifndef CHEBX_BALL_HPP
#define CHEBX_BALL_HPP

// Midpoint-radius arithmetic on top of MPFR. Every operation returns an
// enclosure: the true image of the input balls is contained in the output
// ball. Centers carry the working precision; radii are doubles rounded
// upward (a tiny radius may be inflated to DBL_TRUE_MIN, never deflated).

#include <mpfr.h>
#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cfloat>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace chebx {

struct PrecisionContext {
    mpfr_prec_t working_bits = 256;
    mpfr_prec_t max_bits = 4096;
    int escalation_factor = 2;

    PrecisionContext() = default;
    PrecisionContext(mpfr_prec_t wb, mpfr_prec_t mb, int esc = 2)
        : working_bits(wb), max_bits(mb), escalation_factor(esc) {
        if (working_bits > max_bits) throw std::invalid_argument("working_bits > max_bits");
        if (escalation_factor < 2) throw std::invalid_argument("escalation_factor < 2");
    }

    PrecisionContext escalated() const {
        PrecisionContext c(*this);
        c.working_bits = std::min<mpfr_prec_t>(max_bits, working_bits * escalation_factor);
        return c;
    }
    bool can_escalate() const { return working_bits < max_bits; }
};

struct precision_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Upward-rounded double helpers. Doubles are correctly rounded to nearest,
// so nudging by |v| 2^-50 plus the smallest subnormal majorizes the exact
// result of one operation regardless of sign.
inline double up(double v) {
    return v + std::fabs(v) * 0x1p-50 + DBL_TRUE_MIN;
}
inline double add_up(double a, double b) { return up(a + b); }
inline double mul_up(double a, double b) { return up(a * b); }
inline double div_up(double a, double b) { return up(a / b); }

} // namespace detail

class Ball {
  public:
    Ball() : rad_(0) { mpfr_init2(c_, 64); mpfr_set_zero(c_, 1); }

    explicit Ball(mpfr_prec_t prec) : rad_(0) {
        mpfr_init2(c_, prec);
        mpfr_set_zero(c_, 1);
    }

    Ball(const Ball& o) : rad_(o.rad_) {
        mpfr_init2(c_, mpfr_get_prec(o.c_));
        mpfr_set(c_, o.c_, MPFR_RNDN);
    }
    Ball(Ball&& o) noexcept : rad_(o.rad_) {
        mpfr_init2(c_, 64);
        mpfr_swap(c_, o.c_);
    }
    Ball& operator=(const Ball& o) {
        if (this != &o) {
            mpfr_set_prec(c_, mpfr_get_prec(o.c_));
            mpfr_set(c_, o.c_, MPFR_RNDN);
            rad_ = o.rad_;
        }
        return *this;
    }
    Ball& operator=(Ball&& o) noexcept {
        mpfr_swap(c_, o.c_);
        rad_ = o.rad_;
        return *this;
    }
    ~Ball() { mpfr_clear(c_); }

    static Ball exact_si(long v, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set_si(b.c_, v, MPFR_RNDN); // exact for |v| < 2^prec
        b.rad_ = 0;
        return b;
    }
    static Ball exact_d(double v, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set_d(b.c_, v, MPFR_RNDN);
        b.rad_ = 0;
        return b;
    }
    // Decimal string, accounting for conversion rounding. mpfr_strtofr
    // reports the rounding direction (mpfr_set_str only reports validity).
    static Ball from_str(const std::string& s, mpfr_prec_t prec) {
        Ball b(prec);
        char* end = nullptr;
        int inexact = mpfr_strtofr(b.c_, s.c_str(), &end, 10, MPFR_RNDN);
        if (end == s.c_str() || *end != '\0')
            throw std::invalid_argument("Ball::from_str: malformed number " + s);
        b.rad_ = (inexact == 0) ? 0 : b.center_ulp();
        return b;
    }
    static Ball from_mpq(const mpq_t q, mpfr_prec_t prec) {
        Ball b(prec);
        int inexact = mpfr_set_q(b.c_, q, MPFR_RNDN);
        b.rad_ = (inexact == 0) ? 0 : b.center_ulp();
        return b;
    }
    static Ball from_mpz(const mpz_t z, mpfr_prec_t prec) {
        Ball b(prec);
        int inexact = mpfr_set_z(b.c_, z, MPFR_RNDN);
        b.rad_ = (inexact == 0) ? 0 : b.center_ulp();
        return b;
    }
    static Ball from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_t mid, half;
        mpfr_init2(mid, prec);
        mpfr_init2(half, 64);
        mpfr_add(mid, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        mpfr_sub(half, hi, lo, MPFR_RNDU);
        mpfr_div_2ui(half, half, 1, MPFR_RNDU);
        mpfr_set(b.c_, mid, MPFR_RNDN);
        double h = mpfr_get_d(half, MPFR_RNDU);
        b.rad_ = detail::add_up(detail::up(h), b.center_ulp());
        mpfr_clear(mid);
        mpfr_clear(half);
        return b;
    }
    static Ball pi(mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_const_pi(b.c_, MPFR_RNDN);
        b.rad_ = b.center_ulp();
        return b;
    }
    static Ball euler_gamma(mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_const_euler(b.c_, MPFR_RNDN);
        b.rad_ = b.center_ulp();
        return b;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(c_); }
    const mpfr_t& center() const { return c_; }
    double radius() const { return rad_; }
    bool exact() const { return rad_ == 0; }

    double center_d() const { return mpfr_get_d(c_, MPFR_RNDN); }

    // Certified endpoints as doubles (outward rounded).
    double lower_d() const {
        double c = mpfr_get_d(c_, MPFR_RNDD);
        return -detail::add_up(-c, rad_);
    }
    double upper_d() const {
        double c = mpfr_get_d(c_, MPFR_RNDU);
        return detail::add_up(c, rad_);
    }

    void get_lower(mpfr_t out) const {
        mpfr_set(out, c_, MPFR_RNDD);
        mpfr_sub_d(out, out, rad_, MPFR_RNDD);
    }
    void get_upper(mpfr_t out) const {
        mpfr_set(out, c_, MPFR_RNDU);
        mpfr_add_d(out, out, rad_, MPFR_RNDU);
    }

    bool is_negative() const { return upper_sign() < 0; }
    bool is_positive() const { return lower_sign() > 0; }
    int upper_sign() const {
        if (mpfr_sgn(c_) < 0) {
            // upper = c + r
            mpfr_t t; mpfr_init2(t, 64);
            get_upper(t);
            int s = mpfr_sgn(t);
            mpfr_clear(t);
            return s;
        }
        return (mpfr_sgn(c_) > 0 || rad_ > 0) ? 1 : 0;
    }
    int lower_sign() const {
        if (mpfr_sgn(c_) > 0) {
            mpfr_t t; mpfr_init2(t, 64);
            get_lower(t);
            int s = mpfr_sgn(t);
            mpfr_clear(t);
            return s;
        }
        return (mpfr_sgn(c_) < 0 || rad_ > 0) ? -1 : 0;
    }

    bool contains_zero() const { return lower_sign() <= 0 && upper_sign() >= 0; }
    bool contains(const Ball& o) const {
        mpfr_t alo, ahi, blo, bhi;
        mpfr_inits2(std::max(prec(), o.prec()) + 64, alo, ahi, blo, bhi, (mpfr_ptr) nullptr);
        get_lower(alo); get_upper(ahi);
        o.get_lower(blo); o.get_upper(bhi);
        bool r = mpfr_cmp(alo, blo) <= 0 && mpfr_cmp(bhi, ahi) <= 0;
        mpfr_clears(alo, ahi, blo, bhi, (mpfr_ptr) nullptr);
        return r;
    }
    bool overlaps(const Ball& o) const {
        mpfr_t ahi, blo;
        mpfr_inits2(std::max(prec(), o.prec()) + 64, ahi, blo, (mpfr_ptr) nullptr);
        get_upper(ahi); o.get_lower(blo);
        bool disjoint = mpfr_cmp(ahi, blo) < 0;
        if (!disjoint) {
            get_lower(ahi); o.get_upper(blo);
            disjoint = mpfr_cmp(blo, ahi) < 0;
        }
        mpfr_clears(ahi, blo, (mpfr_ptr) nullptr);
        return !disjoint;
    }

    Ball inflated(double extra) const {
        Ball b(*this);
        b.rad_ = detail::add_up(b.rad_, extra);
        return b;
    }

    friend Ball operator+(const Ball& a, const Ball& b) {
        Ball r(std::max(a.prec(), b.prec()));
        mpfr_add(r.c_, a.c_, b.c_, MPFR_RNDN);
        r.rad_ = detail::add_up(detail::add_up(a.rad_, b.rad_), r.center_ulp());
        return r;
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        Ball r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.c_, a.c_, b.c_, MPFR_RNDN);
        r.rad_ = detail::add_up(detail::add_up(a.rad_, b.rad_), r.center_ulp());
        return r;
    }
    friend Ball operator-(const Ball& a) {
        Ball r(a);
        mpfr_neg(r.c_, r.c_, MPFR_RNDN);
        return r;
    }
    friend Ball operator*(const Ball& a, const Ball& b) {
        Ball r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.c_, a.c_, b.c_, MPFR_RNDN);
        double ca = a.abs_center_up(), cb = b.abs_center_up();
        double prop = detail::add_up(detail::add_up(detail::mul_up(ca, b.rad_),
                                                    detail::mul_up(cb, a.rad_)),
                                     detail::mul_up(a.rad_, b.rad_));
        r.rad_ = detail::add_up(prop, r.center_ulp());
        return r;
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        double cb_lo = b.abs_center_down();
        if (!(cb_lo > b.rad_))
            throw std::domain_error("ball division: denominator interval contains zero");
        Ball r(std::max(a.prec(), b.prec()));
        mpfr_div(r.c_, a.c_, b.c_, MPFR_RNDN);
        // |x/y - cx/cy| <= (rx + |cx/cy| ry) / (|cy| - ry)
        double q = r.abs_center_up();
        double den = cb_lo - b.rad_; // > 0; subtraction of doubles, round down:
        den = den * (1.0 - 0x1p-50);
        double num = detail::add_up(a.rad_, detail::mul_up(q, b.rad_));
        r.rad_ = detail::add_up(detail::div_up(num, den), r.center_ulp());
        return r;
    }

    friend Ball operator+(const Ball& a, long v) { return a + Ball::exact_si(v, a.prec()); }
    friend Ball operator+(long v, const Ball& a) { return a + Ball::exact_si(v, a.prec()); }
    friend Ball operator-(const Ball& a, long v) { return a - Ball::exact_si(v, a.prec()); }
    friend Ball operator-(long v, const Ball& a) { return Ball::exact_si(v, a.prec()) - a; }
    friend Ball operator*(const Ball& a, long v) { return a * Ball::exact_si(v, a.prec()); }
    friend Ball operator*(long v, const Ball& a) { return a * Ball::exact_si(v, a.prec()); }
    friend Ball operator/(const Ball& a, long v) { return a / Ball::exact_si(v, a.prec()); }
    friend Ball operator/(long v, const Ball& a) { return Ball::exact_si(v, a.prec()) / a; }

    Ball square() const { return (*this) * (*this); }

    // Monotone unary functions evaluated on endpoints with directed rounding.
    Ball sqrt() const {
        return monotone_increasing([](mpfr_t o, const mpfr_t x, mpfr_rnd_t r) {
            if (mpfr_sgn(x) < 0)
                throw std::domain_error("ball sqrt of negative interval");
            mpfr_sqrt(o, x, r);
        });
    }
    Ball log() const {
        return monotone_increasing([](mpfr_t o, const mpfr_t x, mpfr_rnd_t r) {
            if (mpfr_sgn(x) <= 0)
                throw std::domain_error("ball log of non-positive interval");
            mpfr_log(o, x, r);
        });
    }
    Ball exp() const {
        return monotone_increasing([](mpfr_t o, const mpfr_t x, mpfr_rnd_t r) { mpfr_exp(o, x, r); });
    }
    Ball atan() const {
        return monotone_increasing([](mpfr_t o, const mpfr_t x, mpfr_rnd_t r) { mpfr_atan(o, x, r); });
    }
    Ball tanh() const {
        return monotone_increasing([](mpfr_t o, const mpfr_t x, mpfr_rnd_t r) { mpfr_tanh(o, x, r); });
    }

    Ball abs() const {
        Ball r(*this);
        if (mpfr_sgn(r.c_) < 0) mpfr_neg(r.c_, r.c_, MPFR_RNDN);
        if (r.contains_zero()) {
            // fold across zero: [0, |c|+r]
            mpfr_t hi; mpfr_init2(hi, prec() + 16);
            mpfr_abs(hi, c_, MPFR_RNDU);
            mpfr_add_d(hi, hi, rad_, MPFR_RNDU);
            mpfr_t lo; mpfr_init2(lo, prec() + 16);
            mpfr_set_zero(lo, 1);
            Ball out = from_endpoints(lo, hi, prec());
            mpfr_clears(hi, lo, (mpfr_ptr) nullptr);
            return out;
        }
        return r;
    }

    // this^k for integer k >= 0
    Ball pow_ui(unsigned long k) const {
        Ball acc = Ball::exact_si(1, prec());
        Ball base(*this);
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    std::string str(size_t digits = 20) const {
        char buf[128];
        std::string out;
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", (int)std::min<size_t>(digits, 40), c_);
        out = buf;
        std::snprintf(buf, sizeof buf, " +/- %.3g", rad_);
        out += buf;
        return out;
    }
    std::string decimal(mpfr_rnd_t rnd, int digits = 20) const {
        mpfr_t t; mpfr_init2(t, prec() + 64);
        if (rnd == MPFR_RNDD) get_lower(t); else get_upper(t);
        char buf[160];
        mpfr_snprintf(buf, sizeof buf, "%.*R*g", digits, rnd, t);
        mpfr_clear(t);
        return buf;
    }

  private:
    mpfr_t c_;
    double rad_;

    double center_ulp() const {
        // |c| * 2^(1-prec) bounds one rounding of the center, plus underflow guard
        double ac = abs_center_up();
        return detail::add_up(std::ldexp(ac, (int)(1 - (long)prec())), DBL_TRUE_MIN);
    }
    double abs_center_up() const {
        double v = mpfr_get_d(c_, mpfr_sgn(c_) >= 0 ? MPFR_RNDU : MPFR_RNDD);
        return detail::up(std::fabs(v));
    }
    double abs_center_down() const {
        double v = mpfr_get_d(c_, mpfr_sgn(c_) >= 0 ? MPFR_RNDD : MPFR_RNDU);
        return std::fabs(v) * (1.0 - 0x1p-50);
    }

    template <typename F>
    Ball monotone_increasing(F&& f) const {
        mpfr_prec_t p = prec();
        mpfr_t lo, hi, flo, fhi;
        mpfr_inits2(p + 16, lo, hi, (mpfr_ptr) nullptr);
        mpfr_inits2(p, flo, fhi, (mpfr_ptr) nullptr);
        get_lower(lo);
        get_upper(hi);
        try {
            f(flo, lo, MPFR_RNDD);
            f(fhi, hi, MPFR_RNDU);
        } catch (...) {
            mpfr_clears(lo, hi, flo, fhi, (mpfr_ptr) nullptr);
            throw;
        }
        Ball out = from_endpoints(flo, fhi, p);
        mpfr_clears(lo, hi, flo, fhi, (mpfr_ptr) nullptr);
        return out;
    }
};

inline Ball min_ball(const Ball& a, const Ball& b) {
    // enclosure of min(x,y)
    mpfr_t alo, ahi, blo, bhi;
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    mpfr_inits2(p + 16, alo, ahi, blo, bhi, (mpfr_ptr) nullptr);
    a.get_lower(alo); a.get_upper(ahi);
    b.get_lower(blo); b.get_upper(bhi);
    if (mpfr_cmp(alo, blo) > 0) mpfr_swap(alo, blo);
    if (mpfr_cmp(ahi, bhi) > 0) mpfr_swap(ahi, bhi);
    Ball r = Ball::from_endpoints(alo, ahi, p);
    mpfr_clears(alo, ahi, blo, bhi, (mpfr_ptr) nullptr);
    return r;
}

} // namespace chebx

#endif
