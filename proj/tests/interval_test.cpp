#include "doctest.h"

#include "ietlab/interval.hpp"

using namespace ietlab;

namespace {
HalfOpen iv(long an, long ad, long bn, long bd) {
  return {Scalar(Rational(an, ad)), Scalar(Rational(bn, bd))};
}
}  // namespace

TEST_CASE("half open basics") {
  HalfOpen a = iv(0, 1, 1, 2);
  CHECK_FALSE(a.empty());
  CHECK(a.length() == Scalar(Rational(1, 2)));
  CHECK(a.contains(Scalar(0)));
  CHECK(a.contains(Scalar(Rational(499, 1000))));
  CHECK_FALSE(a.contains(Scalar(Rational(1, 2))));  // right end open
  CHECK(a.midpoint() == Scalar(Rational(1, 4)));
  HalfOpen empty = iv(1, 2, 1, 2);
  CHECK(empty.empty());
  CHECK(empty.length() == Scalar(0));
  HalfOpen inverted = iv(2, 3, 1, 3);
  CHECK(inverted.empty());
}

TEST_CASE("intersection collapses empties to nullopt") {
  auto r = intersect(iv(0, 1, 1, 2), iv(1, 4, 3, 4));
  REQUIRE(r.has_value());
  CHECK(*r == iv(1, 4, 1, 2));
  CHECK_FALSE(intersect(iv(0, 1, 1, 4), iv(1, 2, 1, 1)).has_value());
  CHECK_FALSE(intersect(iv(0, 1, 1, 4), iv(1, 4, 1, 2)).has_value());  // touch
}

TEST_CASE("interval set normalizes, merges, measures") {
  IntervalSet s({iv(1, 2, 1, 1), iv(0, 1, 1, 2)});  // adjacent out of order
  CHECK(s.size() == 1);
  CHECK(s.pieces()[0] == iv(0, 1, 1, 1));
  CHECK(s.measure() == Scalar(1));

  IntervalSet t({iv(0, 1, 1, 4), iv(1, 2, 3, 4), iv(1, 8, 1, 4)});
  CHECK(t.size() == 2);
  CHECK(t.measure() == Scalar(Rational(1, 2)));
  CHECK(t.contains(Scalar(Rational(1, 8))));
  CHECK_FALSE(t.contains(Scalar(Rational(3, 8))));
  CHECK_FALSE(t.contains(Scalar(Rational(3, 4))));

  IntervalSet empty;
  CHECK(empty.empty());
  CHECK(empty.measure() == Scalar(0));
  IntervalSet fromEmpty(iv(1, 2, 1, 2));
  CHECK(fromEmpty.empty());
}

TEST_CASE("interval set algebra") {
  IntervalSet s({iv(0, 1, 1, 2), iv(3, 4, 1, 1)});
  IntervalSet cut = s.intersect(iv(1, 4, 7, 8));
  CHECK(cut.size() == 2);
  CHECK(cut.measure() == Scalar(Rational(1, 4)) + Scalar(Rational(1, 8)));

  IntervalSet other({iv(1, 4, 4, 5)});
  IntervalSet both = s.intersect(other);
  CHECK(both.measure() == Scalar(Rational(1, 4)) + Scalar(Rational(1, 20)));

  IntervalSet u = s.unite(other);
  CHECK(u.size() == 1);
  CHECK(u.measure() == Scalar(1));

  IntervalSet moved = s.translate(Scalar(Rational(1, 100)));
  CHECK(moved.measure() == s.measure());
  CHECK(moved.pieces()[0].lo == Scalar(Rational(1, 100)));
}

TEST_CASE("interval set with quadratic endpoints") {
  Scalar alpha = (Scalar::sqrt(5) - Scalar(1)) / Scalar(2);
  IntervalSet s({HalfOpen{Scalar(0), Scalar(1) - alpha},
                 HalfOpen{Scalar(1) - alpha, alpha}});
  CHECK(s.size() == 1);  // adjacent pieces merge exactly
  CHECK(s.measure() == alpha);
  CHECK(s.contains(Scalar(1) - alpha));
  CHECK_FALSE(s.contains(alpha));
}
