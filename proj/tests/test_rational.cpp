#include <doctest.h>

#include <sstream>

#include "dop/error.hpp"
#include "dop/rational.hpp"

using namespace dop;

TEST_CASE("construction always canonicalizes") {
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(-4, -8) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(mpz_class(10), mpz_class(4)) == Rational(5, 2));
}

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
    CHECK_THROWS_AS(Rational(mpz_class(3), mpz_class(0)), InvalidArgument);
}

TEST_CASE("string round trip") {
    CHECK(Rational::from_string("5") == Rational(5));
    CHECK(Rational::from_string("-7/3") == Rational(-7, 3));
    CHECK(Rational::from_string("14/21") == Rational(2, 3));
    CHECK(Rational(22, 7).str() == "22/7");
    CHECK(Rational(-4).str() == "-4");
    CHECK(Rational::from_string(Rational(-9, 8).str()) == Rational(-9, 8));
    CHECK_THROWS_AS(Rational::from_string("abc"), InvalidArgument);
    CHECK_THROWS_AS(Rational::from_string("1/0"), InvalidArgument);
    CHECK_THROWS_AS(Rational::from_string(""), InvalidArgument);
}

TEST_CASE("arithmetic") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
    CHECK(Rational(3, 4) / Rational(9, 2) == Rational(1, 6));
    CHECK(-Rational(5, 7) == Rational(-5, 7));
    CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidArgument);
}

TEST_CASE("queries and comparisons") {
    CHECK(Rational(0).is_zero());
    CHECK(Rational(7).is_integer());
    CHECK_FALSE(Rational(7, 2).is_integer());
    CHECK(Rational(-3, 2).sign() == -1);
    CHECK(Rational(1, 2) < Rational(2, 3));
    CHECK(Rational(5, 5) >= Rational(1));
    CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
    CHECK(abs(Rational(-2, 3)) == Rational(2, 3));
    std::ostringstream os;
    os << Rational(-1, 3);
    CHECK(os.str() == "-1/3");
}

TEST_CASE("pow, pochhammer, factorial, shifted binomial") {
    CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(pow(Rational(5, 9), 0) == Rational(1));
    CHECK(pochhammer(Rational(1, 2), 0) == Rational(1));
    CHECK(pochhammer(Rational(1, 2), 3) == Rational(15, 8));
    CHECK(pochhammer(Rational(-2), 4) == Rational(0));
    CHECK(factorial(0) == Rational(1));
    CHECK(factorial(5) == Rational(120));
    CHECK(binom_shifted(3, Rational(0)) == Rational(1));
    CHECK(binom_shifted(2, Rational(1, 2)) == Rational(15, 8));
    CHECK(binom_shifted(0, Rational(7, 3)) == Rational(1));
}
