#include "steklov/polynomial.hpp"
#include "steklov/rational.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace steklov;

TEST_CASE("rational helpers") {
    CHECK(to_string(make_rational(2, 4)) == "1/2");
    CHECK(to_string(make_rational(-6, 4)) == "-3/2");
    CHECK(to_string(make_rational(5, 1)) == "5");
    CHECK(parse_rational("5/3") == make_rational(5, 3));
    CHECK(parse_rational("-7") == make_rational(-7));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
    CHECK(factorial(5) == 120);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 7) == 0);
    CHECK(rational_pow(make_rational(2, 3), 3) == make_rational(8, 27));
}

TEST_CASE("polynomial arithmetic is exact") {
    const int d = 3;
    const Poly x1 = Poly::variable(d, 1), x2 = Poly::variable(d, 2);
    Poly third = Poly::constant(d, make_rational(1, 3));
    CHECK(third + third + third == Poly::constant(d, Rational(1)));

    Poly p = x1 * x1 - x2 * x2;
    Poly q = (x1 - x2) * (x1 + x2);
    CHECK(p == q);
    CHECK((p - q).is_zero());

    // (1/2 x1 + 1/3 x2)^2 has exact cross coefficient 1/3
    Poly s = make_rational(1, 2) * x1 + make_rational(1, 3) * x2;
    CHECK((s * s).coefficient({1, 1, 0}) == make_rational(1, 3));
}

TEST_CASE("degree bookkeeping and homogeneous pieces") {
    const int d = 2;
    Poly p = parse_poly("1 + 2 * x1 + 3 * x1 x2 + -1 * x2^2", d);
    CHECK(p.total_degree() == 2);
    CHECK(p.homogeneous_component(0) == Poly::constant(d, Rational(1)));
    CHECK(p.homogeneous_component(1) == parse_poly("2 * x1", d));
    CHECK(p.homogeneous_component(2) == parse_poly("3 * x1 x2 + -1 * x2^2", d));
    CHECK(p.homogeneous_component(5).is_zero());

    Poly sum = Poly::zero(d);
    for (int k = 0; k <= p.total_degree(); ++k) sum += p.homogeneous_component(k);
    CHECK(sum == p);

    CHECK(Poly::zero(d).total_degree() == -1);
}

TEST_CASE("derivatives") {
    const int d = 3;
    Poly p = parse_poly("1/2 * x1^2 x3 + 4 * x2", d);
    CHECK(p.derivative(1) == parse_poly("1 * x1 x3", d));
    CHECK(p.derivative(2) == parse_poly("4", d));
    CHECK(p.derivative(3) == parse_poly("1/2 * x1^2", d));
    CHECK_THROWS_AS(p.derivative(4), std::out_of_range);
}

TEST_CASE("printing follows graded-lex order and round-trips") {
    const int d = 3;
    Poly p(d);
    p.add_term({0, 0, 2}, make_rational(1));
    p.add_term({1, 0, 0}, make_rational(-2, 3));
    p.add_term({0, 0, 0}, make_rational(7));
    const std::string s = to_string(p);
    CHECK(s == "7 + -2/3 * x1 + 1 * x3^2");
    CHECK(parse_poly(s, d) == p);

    auto rng = testing::make_rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        Poly r = testing::random_poly(rng, 4, 5, 6);
        CHECK(parse_poly(to_string(r), 4) == r);
    }
    CHECK(to_string(Poly::zero(2)) == "0");
    CHECK(parse_poly("0", 2).is_zero());
}

TEST_CASE("quadric reduction eliminates the last variable's square") {
    const int d = 3;
    const Poly g = unit_sphere_quadric(d);
    const Poly x3sq = parse_poly("1 * x3^2", d);
    CHECK(reduce_mod_quadric(x3sq, g, 3) == parse_poly("1 + -1 * x1^2 + -1 * x2^2", d));
}

TEST_CASE("quadric reduction is a projection onto the ideal complement") {
    const int d = 3;
    const Poly g = unit_sphere_quadric(d);
    auto rng = testing::make_rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const Poly a = testing::random_poly(rng, d, 5, 5);
        const Poly q = testing::random_poly(rng, d, 3, 4);
        // adding a multiple of g never changes the remainder
        CHECK(reduce_mod_quadric(a + q * g, g, 3) == reduce_mod_quadric(a, g, 3));
        // the remainder has pivot degree <= 1
        const Poly r = reduce_mod_quadric(a, g, 3);
        for (const auto& [m, c] : r.terms()) CHECK(m[2] <= 1);
        // a - r is in the ideal
        CHECK(vanishes_on_quadric(a - r, g, 3));
    }
}

TEST_CASE("vanishing on the sphere matches evaluation at rational points") {
    const int d = 3;
    const Poly g = unit_sphere_quadric(d);
    auto rng = testing::make_rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly q = testing::random_poly(rng, d, 3, 4);
        const Poly member = q * g;
        CHECK(vanishes_on_quadric(member, g, 3));
        const auto x = testing::rational_sphere_point(rng, d);
        CHECK(member.evaluate(x) == 0);

        const Poly a = testing::random_poly(rng, d, 4, 5);
        const Poly r = reduce_mod_quadric(a, g, 3);
        CHECK(a.evaluate(x) == r.evaluate(x));
    }
}

TEST_CASE("quadric reduction rejects a non-monic modulus") {
    const int d = 2;
    const Poly g = parse_poly("2 * x2^2 + -1", d);
    CHECK_THROWS_AS(reduce_mod_quadric(Poly::variable(d, 2), g, 2), std::invalid_argument);
    // x1 x2^2 spoils monicity in x2 as well
    const Poly h = parse_poly("1 * x2^2 + 1 * x1 x2^2", d);
    CHECK_THROWS_AS(reduce_mod_quadric(Poly::variable(d, 2), h, 2), std::invalid_argument);
}

TEST_CASE("automatic pivot selection") {
    const int d = 3;
    // monic quadratic in x2 only
    const Poly g = parse_poly("1 * x2^2 + 1 * x1 + -1", d);
    const Poly member = parse_poly("1 * x1 x2^2 + 1 * x1^2 + -1 * x1", d);
    CHECK(vanishes_on_quadric(member, g));
    const Poly non_member = parse_poly("1 * x2", d);
    CHECK_FALSE(vanishes_on_quadric(non_member, g));
    // no monic quadratic variable at all
    CHECK_THROWS_AS(vanishes_on_quadric(member, parse_poly("1 * x1 x2", d)),
                    std::invalid_argument);
}

TEST_CASE("evaluation and variable scaling") {
    const int d = 2;
    const Poly p = parse_poly("1 * x1^2 + 2 * x1 x2 + 3", d);
    CHECK(p.evaluate({make_rational(1, 2), make_rational(-1)}) ==
          make_rational(1, 4) - 1 + 3);
    // x1 -> 2 x1, x2 -> 1/3 x2
    const Poly s = p.scale_variables({make_rational(2), make_rational(1, 3)});
    CHECK(s == parse_poly("4 * x1^2 + 4/3 * x1 x2 + 3", d));
}

TEST_CASE("monomial validation") {
    CHECK_THROWS_AS(Poly::monomial(2, {1, 2, 3}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(Poly::monomial(2, {-1, 0}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(Poly::variable(2, 0), std::out_of_range);
    CHECK_THROWS_AS(Poly(0), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("1 * x9", 2), std::invalid_argument);
}
