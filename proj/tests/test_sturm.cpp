#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chebx/ratpoly.hpp"

using namespace chebx;

namespace {

RationalPoly from_ints(std::initializer_list<long> cs) {
    std::vector<mpq_class> v;
    for (long c : cs) v.emplace_back(c);
    return RationalPoly(std::move(v));
}

} // namespace

TEST_CASE("sturm counting basics") {
    // u^2 - 1 on (0, 2]: one root
    REQUIRE(sturm_count(from_ints({-1, 0, 1}), mpq_class(0), mpq_class(2)) == 1);
    // u^2 + 1 on (-10, 10]: none
    REQUIRE(sturm_count(from_ints({1, 0, 1}), mpq_class(-10), mpq_class(10)) == 0);
    // (u-1)^2 on (0, 2]: one distinct root
    REQUIRE(sturm_count(from_ints({1, -2, 1}), mpq_class(0), mpq_class(2)) == 1);
    // zero polynomial rejected
    REQUIRE_THROWS_AS(SturmChain(RationalPoly()), std::domain_error);
    // vanishing left endpoint rejected
    REQUIRE_THROWS_AS(sturm_count(from_ints({0, 1}), mpq_class(0), mpq_class(2)),
                      std::domain_error);
}

TEST_CASE("sturm counting on half-infinite intervals") {
    RationalPoly p = from_ints({-1, 0, 1}); // roots -1, 1
    REQUIRE(sturm_count(p, SturmPoint::neg_inf(), SturmPoint::pos_inf()) == 2);
    REQUIRE(sturm_count(p, SturmPoint::at(mpq_class(0)), SturmPoint::pos_inf()) == 1);
    REQUIRE(sturm_count(p, SturmPoint::at(mpq_class(2)), SturmPoint::pos_inf()) == 0);
}

TEST_CASE("sturm count against constructed root sets", "[slow]") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> nroots(0, 4);
    std::uniform_int_distribution<int> nquad(0, 2);
    std::uniform_int_distribution<long> rnum(-40, 40);
    std::uniform_int_distribution<long> rden(1, 7);
    std::uniform_int_distribution<int> mult(1, 2);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<mpq_class> roots;
        RationalPoly p = RationalPoly::constant(1);
        int nr = nroots(rng);
        for (int i = 0; i < nr; ++i) {
            mpq_class r(rnum(rng), rden(rng));
            int m = mult(rng);
            for (int k = 0; k < m; ++k) p = p * RationalPoly::linear(-r, 1);
            roots.push_back(r);
        }
        int nq = nquad(rng);
        for (int i = 0; i < nq; ++i)
            p = p * RationalPoly(std::vector<mpq_class>{mpq_class(rden(rng)), 0, 1});
        if (p.degree() > 8 || p.degree() < 1) continue;
        // count distinct roots in (-100, 100]
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        if (p.eval(mpq_class(-100)) == 0) continue;
        REQUIRE(sturm_count(p, mpq_class(-100), mpq_class(100)) == (int)roots.size());
    }
}

TEST_CASE("sturm count against bisection sign-change isolation") {
    // independent route: refine until every cell has at most one sign change
    std::mt19937 rng(808);
    std::uniform_int_distribution<long> coef(-9, 9);
    auto signchange_count = [](const RationalPoly& p) {
        // p squarefree (checked by caller): all real roots are sign changes
        std::vector<mpq_class> xs;
        const int grid = 1 << 12;
        int count = 0;
        mpq_class width(200);
        for (int i = 0; i < grid; ++i) {
            mpq_class x0 = mpq_class(-100) + width * i / grid;
            mpq_class x1 = mpq_class(-100) + width * (i + 1) / grid;
            mpq_class v0 = p.eval(x0), v1 = p.eval(x1);
            if (v0 == 0) continue; // counted at the previous cell's right end
            if (v1 == 0) count++;  // right endpoint root: inside (lo, hi]
            else if ((v0 < 0) != (v1 < 0)) count++;
        }
        return count;
    };
    int tested = 0;
    while (tested < 60) {
        std::vector<mpq_class> cs(6);
        for (auto& c : cs) c = coef(rng);
        RationalPoly p(std::move(cs));
        if (p.degree() < 2) continue;
        if (p.eval(mpq_class(-100)) == 0) continue;
        SturmChain ch(p);
        int sc = ch.count(SturmPoint::at(mpq_class(-100)), SturmPoint::at(mpq_class(100)));
        // the naive grid oracle needs simple roots separated by more than a
        // grid cell; isolate and refine first, skip the rare crowded draws
        auto iso = isolate_roots(ch, mpq_class(-100), mpq_class(100));
        mpq_class cell(200, 1 << 12);
        bool resolvable = true;
        for (auto& iv : iso) {
            int guard = 0;
            while (iv.second - iv.first > cell / 4 && guard++ < 80) {
                mpq_class mid = (iv.first + iv.second) / 2;
                if (ch.poly().sign_at(mid) == 0) { iv.first = iv.second = mid; break; }
                if (ch.count(SturmPoint::at(iv.first), SturmPoint::at(mid)) == 1) iv.second = mid;
                else iv.first = mid;
            }
        }
        for (std::size_t i = 1; i < iso.size(); ++i)
            if (iso[i].first - iso[i - 1].second < cell * 2) resolvable = false;
        RationalPoly d = p.derivative();
        for (auto& iv : iso) {
            mpq_class mid = (iv.first + iv.second) / 2;
            if (p.eval(mid) == 0 && d.eval(mid) == 0) resolvable = false;
        }
        if (!resolvable) continue;
        REQUIRE(sc == signchange_count(p));
        ++tested;
    }
}

TEST_CASE("root isolation produces disjoint single-root intervals") {
    // p = (u-1)(u-2)(u-3)
    RationalPoly p = RationalPoly::linear(-1, 1) * RationalPoly::linear(-2, 1) *
                     RationalPoly::linear(-3, 1);
    SturmChain ch(p);
    auto iv = isolate_roots(ch, mpq_class(0), mpq_class(10));
    REQUIRE(iv.size() == 3);
    for (auto& i : iv) REQUIRE(sturm_count(p, i.first, i.second) == 1);
}
