#include <doctest.h>

#include <map>

#include "anglerank/errors.hpp"
#include "anglerank/weil.hpp"
#include "corpus_gen.hpp"
#include "intpoly.hpp"

using namespace anglerank;

namespace {

NewtonPolygon np_of(std::vector<mpz_class> c, long q)
{
    return newton_polygon(parse_weil(c, q));
}

} // namespace

TEST_CASE("parse_weil accepts the worked examples")
{
    WeilPolynomial f = parse_weil({2, -1, 1}, 2);
    CHECK(f.g == 1);
    CHECK(f.p == 2);
    CHECK(f.r == 1);

    // passes the coefficient checks; rejected later by the root-modulus check
    CHECK_NOTHROW(parse_weil({2, -5, 1}, 2));

    WeilPolynomial s = parse_weil({8, 0, 10, 0, 5, 0, 1}, 2);
    CHECK(s.g == 3);
    IntPoly prod = poly::mul(poly::mul(IntPoly{2, -1, 1}, IntPoly{2, 1, 1}), IntPoly{2, 0, 1});
    CHECK(s.coeffs == prod);

    WeilPolynomial q9 = parse_weil({9, 3, 1}, 9);
    CHECK(q9.p == 3);
    CHECK(q9.r == 2);
}

TEST_CASE("parse_weil rejections carry the right error kinds")
{
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };
    CHECK(kind_of([] { parse_weil({2, -1, 2}, 2); }) == ErrorKind::NotMonic);
    CHECK(kind_of([] { parse_weil({1, 1}, 2); }) == ErrorKind::OddDegree);
    CHECK(kind_of([] { parse_weil({1}, 2); }) == ErrorKind::OddDegree);
    CHECK(kind_of([] { parse_weil({6, 0, 1}, 6); }) == ErrorKind::NotPrimePower);
    CHECK(kind_of([] { parse_weil({3, -1, 1}, 2); }) == ErrorKind::FunctionalEquationViolation);
    try {
        parse_weil({4, 1, 0, 1, 1}, 2); // a_1 != q a_3
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FunctionalEquationViolation);
        CHECK(e.detail() == 1);
    }
}

TEST_CASE("newton polygons of the named examples")
{
    NewtonPolygon a = np_of({2, -1, 1}, 2);
    REQUIRE(a.slopes.size() == 2);
    CHECK(a.slopes[0] == std::pair<mpq_class, int>{0, 1});
    CHECK(a.slopes[1] == std::pair<mpq_class, int>{1, 1});

    NewtonPolygon b = np_of({2, 0, 1}, 2);
    REQUIRE(b.slopes.size() == 1);
    CHECK(b.slopes[0] == std::pair<mpq_class, int>{mpq_class(1, 2), 2});

    NewtonPolygon c = np_of({8, 0, 10, 0, 5, 0, 1}, 2);
    REQUIRE(c.slopes.size() == 3);
    CHECK(c.slopes[0] == std::pair<mpq_class, int>{0, 2});
    CHECK(c.slopes[1] == std::pair<mpq_class, int>{mpq_class(1, 2), 2});
    CHECK(c.slopes[2] == std::pair<mpq_class, int>{1, 2});
}

TEST_CASE("newton classification")
{
    CHECK(classify_newton(np_of({2, -1, 1}, 2), 1) == NewtonClass::Ordinary);
    CHECK(classify_newton(np_of({2, 0, 1}, 2), 1) == NewtonClass::Supersingular);
    CHECK(classify_newton(np_of({8, 0, 10, 0, 5, 0, 1}, 2), 3) == NewtonClass::AlmostOrdinary);
    // ordinary x ordinary x ordinary stays ordinary
    IntPoly p = poly::mul(poly::mul(IntPoly{2, -1, 1}, IntPoly{2, 1, 1}), IntPoly{2, 1, 1});
    CHECK(classify_newton(newton_polygon(parse_weil(p, 2)), 3) == NewtonClass::Ordinary);
}

TEST_CASE("base extension matches the worked examples and composes")
{
    WeilPolynomial f = parse_weil({2, 0, 1}, 2);
    WeilPolynomial f2 = base_extend(f, 2);
    CHECK(f2.coeffs == std::vector<mpz_class>{4, 4, 1});
    CHECK(f2.q == 4);

    WeilPolynomial g = parse_weil({2, -1, 1}, 2);
    CHECK(base_extend(g, 1).coeffs == g.coeffs);
    CHECK(base_extend(g, 2).coeffs == std::vector<mpz_class>{4, 3, 1});

    WeilPolynomial s = parse_weil({8, 0, 10, 0, 5, 0, 1}, 2);
    CHECK(base_extend(base_extend(s, 2), 3).coeffs == base_extend(s, 6).coeffs);
}

TEST_CASE("polygon invariants over the generated corpus")
{
    auto corpus = testgen::corpus();
    REQUIRE(corpus.size() >= 100);
    for (const auto& f : corpus) {
        NewtonPolygon np = newton_polygon(f);
        int total = 0;
        for (const auto& [s, m] : np.slopes) {
            total += m;
            CHECK(s >= 0);
            CHECK(s <= 1);
            // symmetry partner
            bool found = false;
            for (const auto& [s2, m2] : np.slopes)
                if (s2 == 1 - s && m2 == m) found = true;
            CHECK(found);
        }
        CHECK(total == 2 * static_cast<int>(f.g));

        // base extension preserves validity
        WeilPolynomial f2 = base_extend(f, 2);
        CHECK(f2.g == f.g);
    }
}

TEST_CASE("product polygons are multiset unions")
{
    IntPoly a = {2, -1, 1}, b = {2, 0, 1};
    WeilPolynomial fa = parse_weil(a, 2), fb = parse_weil(b, 2);
    WeilPolynomial fab = parse_weil(poly::mul(a, b), 2);
    std::map<mpq_class, int> want;
    for (const auto& [s, m] : newton_polygon(fa).slopes) want[s] += m;
    for (const auto& [s, m] : newton_polygon(fb).slopes) want[s] += m;
    std::map<mpq_class, int> got;
    for (const auto& [s, m] : newton_polygon(fab).slopes) got[s] += m;
    CHECK(want == got);
}
