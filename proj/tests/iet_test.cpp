#include "doctest.h"

#include "ietlab/iet.hpp"

using namespace ietlab;

namespace {

Scalar golden_alpha() { return (Scalar::sqrt(5) - Scalar(1)) / Scalar(2); }

Iet golden() {
  Scalar a = golden_alpha();
  return Iet(Permutation({2, 1}), ExchangeLengths({Scalar(1) - a, a}));
}

}  // namespace

TEST_CASE("exchange lengths validate positivity") {
  CHECK_THROWS_AS(ExchangeLengths({Scalar(0), Scalar(1)}), InvalidLengthsError);
  CHECK_THROWS_AS(ExchangeLengths({Scalar(-1)}), InvalidLengthsError);
  CHECK_THROWS_AS(ExchangeLengths(std::vector<Scalar>{}), InvalidLengthsError);
  ExchangeLengths l({Scalar(Rational(1, 3)), Scalar(Rational(1, 6))});
  CHECK(l.total() == Scalar(Rational(1, 2)));
  CHECK_FALSE(l.normalized());
  CHECK(l.normalized_copy().total() == Scalar(1));
  CHECK(l.normalized_copy()[1] == Scalar(Rational(2, 3)));
  CHECK(l[1] == Scalar(Rational(1, 3)));  // 1-based
}

TEST_CASE("golden rotation moves the origin by alpha") {
  Iet E = golden();
  Scalar a = golden_alpha();
  CHECK(E.evaluate(Scalar(0)) == a);
  CHECK(E.evaluate(Scalar(1) - a) == Scalar(0));
  CHECK(E(Scalar(Rational(1, 2))) == Scalar(Rational(1, 2)) + a - Scalar(1));
  CHECK(E.displacement(1) == a);
  CHECK(E.displacement(2) == a - Scalar(1));
  CHECK(E.domain() == HalfOpen{Scalar(0), Scalar(1)});
  CHECK(E.interval_index(Scalar(0)) == 1);
  CHECK(E.interval_index(Scalar(1) - a) == 2);
}

TEST_CASE("interval in position i lands on slot pi(i)") {
  // pi = (3 1 2), lambda = (1/2, 1/4, 1/4): slot widths follow the inverse.
  Iet E(Permutation({3, 1, 2}),
        ExchangeLengths({Scalar(Rational(1, 2)), Scalar(Rational(1, 4)),
                         Scalar(Rational(1, 4))}));
  CHECK(E.continuity_interval(1) ==
        HalfOpen{Scalar(0), Scalar(Rational(1, 2))});
  CHECK(E.image_interval(1) == HalfOpen{Scalar(Rational(1, 2)), Scalar(1)});
  CHECK(E.image_interval(2) == HalfOpen{Scalar(0), Scalar(Rational(1, 4))});
  CHECK(E.image_interval(3) ==
        HalfOpen{Scalar(Rational(1, 4)), Scalar(Rational(1, 2))});
  CHECK(E.evaluate(Scalar(0)) == Scalar(Rational(1, 2)));
  CHECK(E.evaluate(Scalar(Rational(1, 2))) == Scalar(0));
  CHECK(E.evaluate(Scalar(Rational(3, 4))) == Scalar(Rational(1, 4)));
  CHECK(E.evaluate(Scalar(Rational(3, 5))) == Scalar(Rational(1, 10)));
  // image intervals partition the domain
  Scalar total(0);
  for (int i = 1; i <= 3; ++i) total += E.image_interval(i).length();
  CHECK(total == Scalar(1));
}

TEST_CASE("breakpoints are the length prefix sums") {
  Iet E(Permutation({2, 1}),
        ExchangeLengths({Scalar(Rational(1, 3)), Scalar(Rational(2, 3))}));
  CHECK(E.breakpoint(0) == Scalar(0));
  CHECK(E.breakpoint(1) == Scalar(Rational(1, 3)));
  CHECK(E.breakpoint(2) == Scalar(1));
}

TEST_CASE("inverse undoes the exchange") {
  Iet E(Permutation({3, 1, 2}),
        ExchangeLengths({Scalar(Rational(1, 2)), Scalar(Rational(1, 4)),
                         Scalar(Rational(1, 4))}));
  Iet F = E.inverse();
  for (long num = 0; num < 20; ++num) {
    Scalar x(Rational(num, 20));
    CHECK(F.evaluate(E.evaluate(x)) == x);
    CHECK(E.evaluate(F.evaluate(x)) == x);
  }
  CHECK(E.inverse().inverse() == E);
}

TEST_CASE("points outside the domain are rejected") {
  Iet E = golden();
  CHECK_THROWS_AS(E.evaluate(Scalar(1)), OutOfDomainError);
  CHECK_THROWS_AS(E.evaluate(Scalar(-1)), OutOfDomainError);
  CHECK_THROWS_AS(E.interval_index(Scalar(2)), OutOfDomainError);
}

TEST_CASE("origin shifts the whole picture") {
  Scalar third(Rational(1, 3));
  Iet E(Permutation({2, 1}),
        ExchangeLengths({Scalar(Rational(1, 2)), Scalar(Rational(1, 2))}),
        third);
  CHECK(E.domain() == HalfOpen{third, third + Scalar(1)});
  CHECK(E.evaluate(third) == third + Scalar(Rational(1, 2)));
  CHECK(E.evaluate(third + Scalar(Rational(1, 2))) == third);
  CHECK_THROWS_AS(E.evaluate(Scalar(0)), OutOfDomainError);
}

TEST_CASE("orbit symbols match direct iteration both ways") {
  Iet E = golden();
  Iet Einv = E.inverse();
  Scalar x(Rational(1, 7));
  Itinerary itin = orbit_symbols(E, x, -6, 9);
  CHECK(itin.lo() == -6);
  CHECK(itin.hi() == 9);
  CHECK(itin.base == x);
  Scalar fwd = x;
  for (long j = 0; j <= 9; ++j) {
    CHECK(itin.symbol_at(j) == E.interval_index(fwd));
    fwd = E.evaluate(fwd);
  }
  Scalar bwd = x;
  for (long j = -1; j >= -6; --j) {
    bwd = Einv.evaluate(bwd);
    CHECK(itin.symbol_at(j) == E.interval_index(bwd));
  }
  CHECK_THROWS_AS(itin.symbol_at(10), DomainError);
  CHECK_THROWS_AS(itin.symbol_at(-7), DomainError);
}

TEST_CASE("keane check separates rational from irrational rotations") {
  KeaneReport clean = keane_check(golden(), 1000);
  CHECK_FALSE(clean.collision_found);

  Iet rat(Permutation({2, 1}),
          ExchangeLengths({Scalar(Rational(3, 4)), Scalar(Rational(1, 4))}));
  KeaneReport hit = keane_check(rat, 1000);
  CHECK(hit.collision_found);
  CHECK(hit.steps >= 1);
  CHECK(hit.steps <= 4);
}

TEST_CASE("equality is structural") {
  CHECK(golden() == golden());
  Iet other(Permutation({2, 1}),
            ExchangeLengths({Scalar(Rational(1, 2)), Scalar(Rational(1, 2))}));
  CHECK_FALSE(golden() == other);
}
