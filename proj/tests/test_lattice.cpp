#include "blowdown/lattice.hpp"

#include <catch_amalgamated.hpp>

using namespace blowdown;

TEST_CASE("rational wire format") {
    CHECK(format_rational(Rational(3, 4)) == "3/4");
    CHECK(format_rational(Rational(-3, 4)) == "-3/4");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(make_rational(6, -4)) == "-3/2");

    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-10/5") == Rational(-2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("exact decimal rendering") {
    CHECK(format_decimal(Rational(61, 16)) == "3.8125");
    CHECK(format_decimal(Rational(1, 3)) == "0.333333");
    CHECK(format_decimal(Rational(2, 3)) == "0.666667");
    CHECK(format_decimal(Rational(-1235, 32)) == "-38.5938");
    CHECK(format_decimal(Rational(0)) == "0");
    CHECK(format_decimal(Rational(1000000)) == "1000000");
    CHECK(format_decimal(Rational(123456789)) == "123457000");
    CHECK(format_decimal(Rational(1, 1000)) == "0.001");
    CHECK(format_decimal(Rational(999999999, 1000)) == "1000000");
    CHECK(format_decimal(Rational(40)) == "40");
}

TEST_CASE("lattice vector primitives") {
    CHECK(is_primitive({0, 1}));
    CHECK(is_primitive({16, 3}));
    CHECK(is_primitive({-1, 0}));
    CHECK_FALSE(is_primitive({0, 0}));
    CHECK_FALSE(is_primitive({2, 4}));
    CHECK(cross(LatticeVec{1, 0}, LatticeVec{0, 1}) == 1);
    CHECK(rot90ccw({1, 0}) == LatticeVec{0, 1});
    CHECK(rot90ccw({0, -1}) == LatticeVec{1, 0});
}

TEST_CASE("unimodular maps") {
    CHECK_THROWS_AS(UnimodularMap(Mat2{2, 0, 0, 1}, RatPoint{0, 0}), std::invalid_argument);

    UnimodularMap f(Mat2{6, -1, 1, 0}, RatPoint{1, 0});
    CHECK(f({0, 0}) == RatPoint{1, 0});
    CHECK(f.map_direction({1, 0}) == LatticeVec{6, 1});

    auto id = f.compose(f.inverse());
    CHECK(id.linear() == Mat2::identity());
    CHECK(id.translation() == RatPoint{0, 0});

    UnimodularMap refl(Mat2{0, 1, 1, 0}, RatPoint{Rational(1, 2), Rational(-3)});
    auto id2 = refl.inverse().compose(refl);
    CHECK(id2.linear() == Mat2::identity());
    CHECK(id2.translation() == RatPoint{0, 0});
}

TEST_CASE("extended gcd and modular inverse") {
    auto [g, s, t] = ext_gcd(240, 46);
    CHECK(g == 2);
    CHECK(s * 240 + t * 46 == 2);
    CHECK(mod_inverse(3, 16) == 11);
    CHECK(mod_inverse(2, 9) == 5);
    CHECK_THROWS_AS(mod_inverse(4, 16), std::invalid_argument);
}
