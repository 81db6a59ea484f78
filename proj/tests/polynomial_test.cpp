#include "doctest.h"

#include <cmath>

#include "ietlab/polynomial.hpp"

using namespace ietlab;

namespace {

Poly from_ints(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return Poly(std::move(c));
}

ZPoly z_from_ints(std::initializer_list<long> ascending) {
  ZPoly f;
  for (long v : ascending) f.c.emplace_back(v);
  f.trim();
  return f;
}

// True if iv covers r, honoring the open/exact semantics.
bool covers(const RootInterval& iv, const Rational& r) {
  if (iv.exact) return iv.lo == r;
  return iv.lo < r && r < iv.hi;
}

// Chebyshev-style recursion t_{k+1} = x * t_k - t_{k-1} started from 2, x:
// the trace of the k-th power of a unimodular matrix with trace x.
Poly dickson(int k) {
  Poly prev = from_ints({2});
  Poly cur = Poly::x();
  for (int i = 1; i < k; ++i) {
    Poly next = Poly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return k == 0 ? prev : cur;
}

}  // namespace

TEST_CASE("arithmetic and printing") {
  Poly p = from_ints({-1, 0, 1});  // x^2 - 1
  Poly q = from_ints({1, 1});      // x + 1
  CHECK(p.degree() == 2);
  CHECK((p + q) == from_ints({0, 1, 1}));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  CHECK((q * q) == from_ints({1, 2, 1}));
  CHECK((-q) == from_ints({-1, -1}));
  CHECK((q * Rational(3)) == from_ints({3, 3}));
  CHECK(p.derivative() == from_ints({0, 2}));
  CHECK(p.evaluate(Rational(3)) == Rational(8));
  CHECK(p.evaluate(2.0) == 3.0);
  CHECK(Poly::x().str() == "x");
  CHECK(from_ints({2}).str() == "2");
  CHECK(p.str() == "x^2 - 1");
  // Leading zeros trim away on construction.
  CHECK(Poly(std::vector<Rational>{Rational(5), Rational(0)}).degree() == 0);
}

TEST_CASE("primitive part clears denominators and content") {
  std::vector<Rational> c{Rational(1, 2), Rational(0), Rational(3, 2)};
  ZPoly f = primitive_part(Poly(std::move(c)));  // (1 + 3x^2)/2
  REQUIRE(f.degree() == 2);
  CHECK(f.c[0] == 1);
  CHECK(f.c[1] == 0);
  CHECK(f.c[2] == 3);

  // Content 6 divides out; leading coefficient forced positive.
  ZPoly g = primitive_part(from_ints({-6, 0, -12}));
  CHECK(g.c[0] == 1);
  CHECK(g.c[2] == 2);
}

TEST_CASE("signs at rational points are exact") {
  ZPoly f = z_from_ints({-2, 0, 1});  // x^2 - 2
  CHECK(sign_at(f, Rational(1)) == -1);
  CHECK(sign_at(f, Rational(2)) == 1);
  CHECK(sign_at(f, Rational(141421356, 100000000)) == -1);
  CHECK(sign_at(f, Rational(141421357, 100000000)) == 1);
  CHECK(sign_at(z_from_ints({0, 1}), Rational(0)) == 0);
  CHECK(z_derivative(f).c == std::vector<mpz_class>{0, 2});
}

TEST_CASE("integer gcd of polynomials") {
  ZPoly a = z_from_ints({-1, 0, 1});      // (x-1)(x+1)
  ZPoly b = z_from_ints({1, 2, 1});       // (x+1)^2
  ZPoly g = z_gcd(a, b);
  CHECK(g.c == std::vector<mpz_class>{1, 1});
  // Coprime pair gives a constant.
  CHECK(z_gcd(z_from_ints({-2, 0, 1}), z_from_ints({-3, 0, 1})).degree() == 0);
}

TEST_CASE("squarefree certificate and decomposition") {
  ZPoly sf = z_from_ints({-2, 0, 1});
  CHECK(squarefree_certificate(sf));
  ZPoly sq = z_from_ints({0, 0, -2, 0, 1});  // x^2 (x^2 - 2)
  CHECK_FALSE(squarefree_certificate(sq));

  auto parts = squarefree_decomposition(sq);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first.c == std::vector<mpz_class>{-2, 0, 1});
  CHECK(parts[0].second == 1);
  CHECK(parts[1].first.c == std::vector<mpz_class>{0, 1});
  CHECK(parts[1].second == 2);

  // Reassembling the factors recovers the primitive polynomial.
  Poly prod = from_ints({1});
  for (const auto& [gz, mult] : parts) {
    std::vector<Rational> rc;
    for (const mpz_class& v : gz.c) rc.emplace_back(v);
    Poly gp{std::move(rc)};
    for (int i = 0; i < mult; ++i) prod = prod * gp;
  }
  CHECK(primitive_part(prod).c == sq.c);
}

TEST_CASE("root isolation brackets sqrt(2) tightly") {
  ZPoly f = z_from_ints({-2, 0, 1});
  auto roots = isolate_real_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(covers(roots[0], Rational(-141421356, 100000000)));
  CHECK(covers(roots[1], Rational(141421356, 100000000)));

  Rational width(mpz_class(1), mpz_class(mpz_class(1) << 40));
  RootInterval fine = refine_root(f, roots[1], width);
  CHECK(fine.hi - fine.lo <= width);
  auto [lo, hi] = Scalar::sqrt(2).bracket(40);
  CHECK(fine.lo < hi);
  CHECK(lo < fine.hi);
}

TEST_CASE("dyadic roots may come back exact") {
  ZPoly f = z_from_ints({0, -4, 0, 4});  // 4x(x-1)(x+1) scaled: 4x^3 - 4x
  auto roots = isolate_real_roots(f);
  REQUIRE(roots.size() == 3);
  Rational expect[3] = {Rational(-1), Rational(0), Rational(1)};
  for (int i = 0; i < 3; ++i) {
    CHECK(covers(roots[i], expect[i]));
    if (roots[i].exact) CHECK(roots[i].lo == roots[i].hi);
  }
}

TEST_CASE("ten spread out integer roots are separated") {
  Poly p = from_ints({1});
  for (long r = 1; r <= 10; ++r)
    p = p * Poly(std::vector<Rational>{Rational(-r), Rational(1)});
  auto roots = isolate_real_roots(primitive_part(p));
  REQUIRE(roots.size() == 10);
  for (long r = 1; r <= 10; ++r) {
    CHECK(covers(roots[r - 1], Rational(r)));
    if (r > 1) CHECK(roots[r - 2].hi <= roots[r - 1].lo);
  }
}

TEST_CASE("degenerate isolation inputs") {
  CHECK_THROWS_AS(isolate_real_roots(ZPoly{}), IsolationError);
  CHECK(isolate_real_roots(z_from_ints({7})).empty());
  // No real roots at all.
  CHECK(isolate_real_roots(z_from_ints({1, 0, 1})).empty());
}

TEST_CASE("restricted search boxes drop outside roots") {
  ZPoly f = z_from_ints({-9, 0, 1});  // roots at -3 and 3
  CHECK(isolate_real_roots(f, 1).empty());
  CHECK(isolate_real_roots(f, 2).size() == 2);
}

TEST_CASE("trace polynomial of a long power factors cleanly") {
  Poly t50 = dickson(50) - from_ints({2});
  ZPoly f = primitive_part(t50);
  CHECK(f.degree() == 50);
  CHECK_FALSE(squarefree_certificate(f));
  auto parts = squarefree_decomposition(f);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first.degree() == 2);
  CHECK(parts[0].second == 1);
  CHECK(parts[0].first.c == std::vector<mpz_class>{-4, 0, 1});
  CHECK(parts[1].first.degree() == 24);
  CHECK(parts[1].second == 2);

  // Simple roots come from x^2 - 4; the doubled ones are 2 cos(k pi / 25).
  auto dbl = isolate_real_roots(parts[1].first);
  REQUIRE(dbl.size() == 24);
  Rational width(1, 1000000000000L);
  for (int k = 1; k <= 24; ++k) {
    RootInterval iv = refine_root(parts[1].first, dbl[k - 1], width);
    double root = 2.0 * std::cos((25 - k) * M_PI / 25.0);
    double lo = iv.lo.to_double(), hi = iv.hi.to_double();
    CHECK(lo - 1e-9 <= root);
    CHECK(root <= hi + 1e-9);
  }
}
