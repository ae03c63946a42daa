#ifndef CHEBX_RATPOLY_HPP
#define CHEBX_RATPOLY_HPP

// Exact polynomials over Q (dense, ascending degree) and Sturm-chain real
// root counting/isolation over exact rational intervals, including the
// half-infinite ones.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chebx {

class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RationalPoly constant(const mpq_class& v) { return RationalPoly({v}); }
    // c0 + c1 u
    static RationalPoly linear(const mpq_class& c0, const mpq_class& c1) {
        return RationalPoly({c0, c1});
    }

    bool zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; } // -1 for zero poly
    const mpq_class& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    const mpq_class& leading() const {
        if (c_.empty()) throw std::domain_error("leading of zero polynomial");
        return c_.back();
    }

    RationalPoly operator+(const RationalPoly& o) const {
        std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size()) r[i] += c_[i];
            if (i < o.c_.size()) r[i] += o.c_[i];
        }
        return RationalPoly(std::move(r));
    }
    RationalPoly operator-(const RationalPoly& o) const {
        std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size()) r[i] += c_[i];
            if (i < o.c_.size()) r[i] -= o.c_[i];
        }
        return RationalPoly(std::move(r));
    }
    RationalPoly operator*(const RationalPoly& o) const {
        if (zero() || o.zero()) return RationalPoly();
        std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return RationalPoly(std::move(r));
    }
    RationalPoly operator*(const mpq_class& s) const {
        std::vector<mpq_class> r(c_);
        for (auto& v : r) v *= s;
        return RationalPoly(std::move(r));
    }

    RationalPoly derivative() const {
        if (c_.size() <= 1) return RationalPoly();
        std::vector<mpq_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * mpq_class((unsigned long)i);
        return RationalPoly(std::move(r));
    }

    mpq_class eval(const mpq_class& x) const {
        mpq_class acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

  private:
    std::vector<mpq_class> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

// Integer polynomial used inside the Sturm machinery.
struct IntPoly {
    std::vector<mpz_class> c; // ascending, trimmed

    bool zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    const mpz_class& leading() const { return c.back(); }

    static IntPoly from_rational(const RationalPoly& p) {
        IntPoly out;
        if (p.zero()) return out;
        mpz_class den(1);
        for (auto& q : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        out.c.resize(p.coeffs().size());
        for (std::size_t i = 0; i < out.c.size(); ++i) {
            mpq_class v = p[i] * mpq_class(den);
            out.c[i] = v.get_num(); // denominator is 1 by construction
        }
        out.trim();
        return out;
    }

    IntPoly derivative() const {
        IntPoly r;
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * (unsigned long)i;
        r.trim();
        return r;
    }

    mpz_class content() const {
        mpz_class g(0);
        for (auto& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        return g;
    }
    void make_primitive() {
        if (zero()) return;
        mpz_class g = content();
        if (g > 1)
            for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }

    IntPoly operator*(const IntPoly& o) const {
        IntPoly r;
        if (zero() || o.zero()) return r;
        r.c.assign(c.size() + o.c.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    IntPoly operator-(const IntPoly& o) const {
        IntPoly r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            if (i < c.size()) r.c[i] += c[i];
            if (i < o.c.size()) r.c[i] -= o.c[i];
        }
        r.trim();
        return r;
    }
    IntPoly operator+(const IntPoly& o) const {
        IntPoly r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            if (i < c.size()) r.c[i] += c[i];
            if (i < o.c.size()) r.c[i] += o.c[i];
        }
        r.trim();
        return r;
    }
    IntPoly scaled(const mpz_class& s) const {
        IntPoly r(*this);
        for (auto& v : r.c) v *= s;
        return r;
    }

    // sign of p(a/b), b > 0, via homogeneous evaluation (exact)
    int sign_at(const mpq_class& x) const {
        if (zero()) return 0;
        const mpz_class& a = x.get_num();
        const mpz_class& b = x.get_den();
        // sum c_i a^i b^(d-i)
        mpz_class acc(0), apow(1);
        std::vector<mpz_class> bpow(c.size());
        bpow[c.size() - 1] = 1;
        for (std::size_t i = c.size() - 1; i-- > 0;) bpow[i] = bpow[i + 1] * b;
        for (std::size_t i = 0; i < c.size(); ++i) {
            acc += c[i] * apow * bpow[i];
            apow *= a;
        }
        return sgn(acc);
    }
    int sign_at_pos_inf() const { return zero() ? 0 : sgn(c.back()); }
    int sign_at_neg_inf() const {
        if (zero()) return 0;
        int s = sgn(c.back());
        return (degree() % 2 == 0) ? s : -s;
    }
};

// Endpoint of a counting interval: rational or +/- infinity.
struct SturmPoint {
    enum Kind { NEG_INF, FINITE, POS_INF } kind = FINITE;
    mpq_class value;

    static SturmPoint neg_inf() { return {NEG_INF, {}}; }
    static SturmPoint pos_inf() { return {POS_INF, {}}; }
    static SturmPoint at(const mpq_class& v) { return {FINITE, v}; }
};

class SturmChain {
  public:
    explicit SturmChain(const RationalPoly& p) {
        if (p.zero()) throw std::domain_error("Sturm chain of zero polynomial");
        IntPoly p0 = IntPoly::from_rational(p);
        p0.make_primitive();
        chain_.push_back(p0);
        IntPoly p1 = p0.derivative();
        if (p1.zero()) return; // constant polynomial
        p1.make_primitive();
        chain_.push_back(p1);
        for (;;) {
            IntPoly r = neg_prem(chain_[chain_.size() - 2], chain_.back());
            if (r.zero()) break;
            r.make_primitive();
            chain_.push_back(std::move(r));
        }
    }

    int variations(const SturmPoint& pt) const {
        int var = 0, last = 0;
        for (const auto& p : chain_) {
            int s;
            switch (pt.kind) {
                case SturmPoint::NEG_INF: s = p.sign_at_neg_inf(); break;
                case SturmPoint::POS_INF: s = p.sign_at_pos_inf(); break;
                default: s = p.sign_at(pt.value); break;
            }
            if (s == 0) continue;
            if (last != 0 && s != last) ++var;
            last = s;
        }
        return var;
    }

    // number of distinct real roots in (lo, hi]; requires p(lo) != 0
    int count(const SturmPoint& lo, const SturmPoint& hi) const {
        if (lo.kind == SturmPoint::FINITE && chain_[0].sign_at(lo.value) == 0)
            throw std::domain_error("sturm count: polynomial vanishes at left endpoint");
        return variations(lo) - variations(hi);
    }

    const IntPoly& poly() const { return chain_[0]; }

  private:
    std::vector<IntPoly> chain_;

    // -(f mod g) up to a positive factor, computed fraction-free.
    static IntPoly neg_prem(const IntPoly& f, const IntPoly& g) {
        int df = f.degree(), dg = g.degree();
        if (dg < 0) throw std::domain_error("pseudo-remainder by zero");
        IntPoly r = f;
        const mpz_class& lg = g.leading();
        long steps = 0;
        while (!r.zero() && r.degree() >= dg) {
            long k = r.degree() - dg;
            mpz_class lr = r.leading();
            // r <- lg * r - lr * u^k * g
            for (auto& v : r.c) v *= lg;
            for (int i = 0; i <= dg; ++i) r.c[(std::size_t)(i + k)] -= lr * g.c[(std::size_t)i];
            r.trim();
            ++steps;
        }
        // r == lg^steps * (f mod g); flip to get the Sturm successor and fix
        // the sign when the accumulated multiplier is negative.
        bool mult_neg = (sgn(lg) < 0) && (steps % 2 == 1);
        IntPoly out = r;
        if (!mult_neg)
            for (auto& v : out.c) v = -v;
        (void)df;
        return out;
    }
};

// distinct real roots of p in (lo, hi]; exact count
inline int sturm_count(const RationalPoly& p, const SturmPoint& lo, const SturmPoint& hi) {
    SturmChain ch(p);
    return ch.count(lo, hi);
}

inline int sturm_count(const RationalPoly& p, const mpq_class& lo, const mpq_class& hi) {
    return sturm_count(p, SturmPoint::at(lo), SturmPoint::at(hi));
}

// Disjoint rational intervals (a, b], each containing exactly one distinct
// root of p, covering all roots in (lo, hi]. Bisection endpoints are nudged
// off roots.
inline std::vector<std::pair<mpq_class, mpq_class>>
isolate_roots(const SturmChain& ch, mpq_class lo, mpq_class hi) {
    std::vector<std::pair<mpq_class, mpq_class>> out;
    struct Item { mpq_class a, b; int n; };
    int total = ch.count(SturmPoint::at(lo), SturmPoint::at(hi));
    std::vector<Item> stack{{lo, hi, total}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.n == 0) continue;
        if (it.n == 1) { out.emplace_back(it.a, it.b); continue; }
        mpq_class mid = (it.a + it.b) / 2;
        mpq_class step = (it.b - it.a) / 65536;
        int guard = 0;
        while (ch.poly().sign_at(mid) == 0 && guard < 60) { mid += step; ++guard; }
        if (ch.poly().sign_at(mid) == 0)
            throw std::runtime_error("isolate_roots: could not move off a root");
        int left = ch.count(SturmPoint::at(it.a), SturmPoint::at(mid));
        stack.push_back({it.a, mid, left});
        stack.push_back({mid, it.b, it.n - left});
    }
    return out;
}

} // namespace chebx

#endif
