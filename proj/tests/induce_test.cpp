#include "doctest.h"

#include "ietlab/induce.hpp"

using namespace ietlab;

namespace {

Scalar golden_alpha() { return (Scalar::sqrt(5) - Scalar(1)) / Scalar(2); }

Iet golden() {
  Scalar a = golden_alpha();
  return Iet(Permutation({2, 1}), ExchangeLengths({Scalar(1) - a, a}));
}

}  // namespace

TEST_CASE("first return of the golden rotation onto [0, alpha)") {
  Scalar a = golden_alpha();
  InducedSystem sys = induce(golden(), HalfOpen{Scalar(0), a});
  REQUIRE(sys.piece_count() == 2);

  // Left piece waits one excursion, right piece returns immediately.
  const InducedPiece& left = sys.piece(1);
  CHECK(left.source == HalfOpen{Scalar(0), Scalar(1) - a});
  CHECK(left.return_steps == 1);
  CHECK(left.return_word == std::vector<int>{1, 2});
  CHECK(left.displacement == Scalar(2) * a - Scalar(1));

  const InducedPiece& right = sys.piece(2);
  CHECK(right.source == HalfOpen{Scalar(1) - a, a});
  CHECK(right.return_steps == 0);
  CHECK(right.return_word == std::vector<int>{2});
  CHECK(right.displacement == a - Scalar(1));

  // Images tile the window.
  CHECK(left.image() == HalfOpen{Scalar(2) * a - Scalar(1), a});
  CHECK(right.image() == HalfOpen{Scalar(0), Scalar(2) * a - Scalar(1)});

  // The return map is again a two-interval exchange, same combinatorics.
  const Iet& ind = sys.induced_iet();
  CHECK(ind.perm() == Permutation({2, 1}));
  CHECK(ind.domain() == HalfOpen{Scalar(0), a});
  CHECK(ind.lengths()[1] == Scalar(1) - a);
  CHECK(ind.lengths()[2] == Scalar(2) * a - Scalar(1));

  // Return times weighted by piece lengths tile the full domain.
  CHECK(sys.orbit_tile_measure() == Scalar(1));
}

TEST_CASE("induced map equals the composed power on each piece") {
  Iet E = golden();
  InducedSystem sys = induce(E, HalfOpen{Scalar(Rational(1, 5)),
                                         Scalar(Rational(3, 5))});
  CHECK(sys.orbit_tile_measure() == Scalar(1));
  for (int k = 1; k <= sys.piece_count(); ++k) {
    const InducedPiece& p = sys.piece(k);
    Scalar x = p.source.midpoint();
    Scalar y = x;
    for (long s = 0; s <= p.return_steps; ++s) {
      CHECK(E.interval_index(y) == p.return_word[static_cast<std::size_t>(s)]);
      y = E.evaluate(y);
    }
    CHECK(y == x + p.displacement);
    CHECK(sys.window().contains(y));
    for (long s = 1; s <= p.return_steps; ++s) {
      // Intermediate iterates stay strictly outside the window.
      Scalar z = x;
      for (long t = 0; t < s; ++t) z = E.evaluate(z);
      CHECK_FALSE(sys.window().contains(z));
    }
    CHECK(p.image() == HalfOpen{p.source.lo + p.displacement,
                                p.source.hi + p.displacement});
    CHECK(sys.induced_iet().evaluate(x) == y);
  }
}

TEST_CASE("rational rotation induction tiles exactly") {
  Iet E(Permutation({2, 1}),
        ExchangeLengths({Scalar(Rational(5, 8)), Scalar(Rational(3, 8))}));
  InducedSystem sys = induce(E, HalfOpen{Scalar(0), Scalar(Rational(1, 8))});
  CHECK(sys.orbit_tile_measure() == Scalar(1));
  // Rotation by 3/8: every return time is 2 or 3 (floor(8/3) and up).
  for (const InducedPiece& p : sys.pieces()) {
    CHECK(p.return_steps >= 1);
    CHECK(p.return_steps <= 7);
    CHECK(static_cast<long>(p.return_word.size()) == p.return_steps + 1);
  }
}

TEST_CASE("three interval exchange induction") {
  Iet E(Permutation({3, 1, 2}),
        ExchangeLengths({Scalar(Rational(1, 2)), Scalar(Rational(1, 4)),
                         Scalar(Rational(1, 4))}));
  InducedSystem sys = induce(E, HalfOpen{Scalar(0), Scalar(Rational(1, 4))});
  // This exchange is the period-two rotation x -> x + 1/2, so the return
  // orbit of the window tiles half the circle, not all of it.
  CHECK(sys.orbit_tile_measure() == Scalar(Rational(1, 2)));
  const Iet& ind = sys.induced_iet();
  CHECK(ind.domain() == HalfOpen{Scalar(0), Scalar(Rational(1, 4))});
  // The induced map is itself a bijection of the window.
  Scalar total(0);
  for (int i = 1; i <= ind.n(); ++i) total += ind.image_interval(i).length();
  CHECK(total == Scalar(Rational(1, 4)));
}

TEST_CASE("bad windows and starvation are reported") {
  Iet E = golden();
  CHECK_THROWS_AS(induce(E, HalfOpen{Scalar(Rational(1, 2)), Scalar(Rational(1, 2))}),
                  DomainError);
  CHECK_THROWS_AS(induce(E, HalfOpen{Scalar(Rational(1, 2)), Scalar(2)}),
                  DomainError);
  CHECK_THROWS_AS(induce(E, HalfOpen{Scalar(0), Scalar(Rational(1, 10))}, 2),
                  NonReturnError);
}
