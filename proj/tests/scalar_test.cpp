#include "doctest.h"

#include "ietlab/scalar.hpp"

using namespace ietlab;

TEST_CASE("rational parse and canonical text") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-4/8").str() == "-1/2");
  CHECK(Rational::parse("+7").str() == "7");
  CHECK(Rational::parse("0/5").str() == "0");
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("a"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
}

TEST_CASE("rational floor rounds toward minus infinity") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-6, 3).floor() == -2);
  CHECK(Rational(0).floor() == 0);
}

TEST_CASE("scalar parse accepts the documented shapes") {
  CHECK(Scalar::parse("1/2") == Scalar(Rational(1, 2)));
  CHECK(Scalar::parse("-1/2+1/2*sqrt(5)") ==
        Scalar(Rational(-1, 2), Rational(1, 2), 5));
  CHECK(Scalar::parse("sqrt(2)") == Scalar::sqrt(2));
  CHECK(Scalar::parse("3*sqrt(5)") == Scalar(Rational(0), Rational(3), 5));
  CHECK(Scalar::parse("1-2/3*sqrt(7)") ==
        Scalar(Rational(1), Rational(-2, 3), 7));
  CHECK_THROWS_AS(Scalar::parse("sqrt(4)"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("sqrt(12)"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("sqrt(0)"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("1+"), ParseError);
}

TEST_CASE("scalar text round trips") {
  for (const char* text : {"0", "-3/4", "7", "3/2-1/2*sqrt(5)",
                           "-1/2+1/2*sqrt(5)", "0+1*sqrt(2)"}) {
    Scalar s = Scalar::parse(text);
    CHECK(Scalar::parse(s.str()) == s);
  }
  CHECK(Scalar::sqrt(2).str() == "0+1*sqrt(2)");
  CHECK((Scalar(1) - Scalar::sqrt(5)).str() == "1-1*sqrt(5)");
}

TEST_CASE("golden ratio algebra is exact") {
  Scalar alpha = (Scalar::sqrt(5) - Scalar(1)) / Scalar(2);
  CHECK(alpha * alpha == Scalar(1) - alpha);          // minimal polynomial
  CHECK(Scalar(1) / alpha == alpha + Scalar(1));      // 1/a = a + 1
  CHECK((Scalar(1) - alpha) / alpha == alpha);        // self-similarity scale
  CHECK(alpha.sign() == 1);
  CHECK((alpha - Scalar(1)).sign() == -1);
}

TEST_CASE("comparisons near convergents are decided exactly") {
  Scalar r2 = Scalar::sqrt(2);
  CHECK(compare(r2, Scalar(Rational(239, 169))) > 0);
  CHECK(compare(r2, Scalar(Rational(577, 408))) < 0);
  CHECK(compare(r2, Scalar(Rational(1393, 985))) > 0);
  CHECK(compare(r2 * r2, Scalar(2)) == 0);
  Scalar a = Scalar(Rational(1, 3)) + Scalar(Rational(1, 6));
  CHECK(a == Scalar(Rational(1, 2)));
}

TEST_CASE("floor of quadratic values") {
  CHECK(Scalar::sqrt(5).floor() == 2);
  CHECK((-Scalar::sqrt(5)).floor() == -3);
  Scalar alpha = (Scalar::sqrt(5) - Scalar(1)) / Scalar(2);
  CHECK((alpha * Scalar(100)).floor() == 61);
  CHECK(floor_div(Scalar(7), Scalar(2)) == 3);
  CHECK(floor_div(-Scalar::sqrt(2), Scalar(1)) == -2);
  CHECK_THROWS_AS(floor_div(Scalar(1), Scalar(0)), DomainError);
}

TEST_CASE("mixed radicands refuse to combine") {
  CHECK_THROWS_AS(Scalar::sqrt(2) + Scalar::sqrt(3), FieldMismatchError);
  CHECK_THROWS_AS(Scalar::sqrt(2) * Scalar::sqrt(5), FieldMismatchError);
  CHECK_NOTHROW(Scalar::sqrt(2) + Scalar(Rational(1, 3)));
  CHECK_THROWS_AS(Scalar::sqrt(7).as_rational(), FieldMismatchError);
}

TEST_CASE("radical parts cancel back into the rationals") {
  Scalar s = Scalar::sqrt(2) - Scalar::sqrt(2);
  CHECK(s.is_rational());
  CHECK(s.radicand() == 0);
  Scalar p = Scalar::sqrt(2) * Scalar::sqrt(2);
  CHECK(p == Scalar(2));
  CHECK(p.is_rational());
}

TEST_CASE("division is exact in the field") {
  Scalar x(Rational(1), Rational(2), 5);   // 1 + 2 sqrt 5
  Scalar y(Rational(3), Rational(-1), 5);  // 3 - sqrt 5
  CHECK((x / y) * y == x);
  CHECK_THROWS_AS(x / Scalar(0), DomainError);
}

TEST_CASE("bracket encloses the value tightly") {
  Scalar alpha = (Scalar::sqrt(5) - Scalar(1)) / Scalar(2);
  auto [lo, hi] = alpha.bracket(64);
  CHECK(compare(Scalar(lo), alpha) <= 0);
  CHECK(compare(Scalar(hi), alpha) >= 0);
  Rational width = hi - lo;
  Rational cap = Rational(1, 2) * Rational(mpz_class(1), mpz_class(1) << 64);
  CHECK(width <= cap);
  auto [rlo, rhi] = Scalar(Rational(2, 3)).bracket();
  CHECK(rlo == Rational(2, 3));
  CHECK(rhi == Rational(2, 3));
}

TEST_CASE("radicand validity") {
  CHECK(is_valid_radicand(2));
  CHECK(is_valid_radicand(3));
  CHECK(is_valid_radicand(5));
  CHECK(is_valid_radicand(6765));
  CHECK_FALSE(is_valid_radicand(0));
  CHECK_FALSE(is_valid_radicand(1));
  CHECK_FALSE(is_valid_radicand(4));
  CHECK_FALSE(is_valid_radicand(12));
  CHECK_FALSE(is_valid_radicand(18));
}

TEST_CASE("to_double stays close") {
  Scalar alpha = (Scalar::sqrt(5) - Scalar(1)) / Scalar(2);
  CHECK(alpha.to_double() == doctest::Approx(0.6180339887498949).epsilon(1e-14));
}
