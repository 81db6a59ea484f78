#pragma once

#include <utility>
#include <vector>

#include "ietlab/scalar.hpp"

namespace ietlab {

// Dense univariate polynomial with exact rational coefficients, coeff(i)
// multiplying x^i; the zero polynomial has degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rational constant);
  explicit Poly(std::vector<Rational> coeffs);
  static Poly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly derivative() const;
  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  std::string str() const;  // human form, highest degree first

 private:
  void trim();
  std::vector<Rational> c_;
};

// Integer polynomial, same layout; the workhorse for root isolation.
struct ZPoly {
  std::vector<mpz_class> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
};

// Primitive integer multiple of p (denominators cleared, content removed,
// positive leading coefficient). Roots are preserved.
ZPoly primitive_part(const Poly& p);
ZPoly z_derivative(const ZPoly& f);
// Exact sign of f at a rational point.
int sign_at(const ZPoly& f, const Rational& x);

// gcd over Z via the primitive Euclidean sequence; result primitive with
// positive leading coefficient.
ZPoly z_gcd(ZPoly a, ZPoly b);

// True only with a proof: gcd(f, f') is constant modulo some good prime,
// which certifies squarefreeness over Q. False means "not decided here".
bool squarefree_certificate(const ZPoly& f);

// Yun decomposition f = prod g_i^i (up to content), returned as pairs
// (g_i, i) with g_i squarefree, pairwise coprime, nonconstant.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f);

// One real root of f in the dyadic interval (lo, hi), or exactly at a dyadic
// point when exact is set (then lo == hi == the root).
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact = false;
};

// All real roots of a squarefree integer polynomial, each in its own
// isolating interval with dyadic endpoints, sorted increasingly. The zero
// polynomial throws IsolationError; a nonzero constant has no roots.
// bound_exp >= 0 restricts the search to (-2^bound_exp, 2^bound_exp); roots
// outside are silently missed, so the caller must know they all lie inside.
// The default derives a Cauchy bound covering every root.
std::vector<RootInterval> isolate_real_roots(const ZPoly& f, int bound_exp = -1);

// Shrinks an isolating interval by dyadic bisection until hi - lo <= width
// (no-op for exact roots). The interval must bracket a sign change.
RootInterval refine_root(const ZPoly& f, RootInterval iv, const Rational& width);

}  // namespace ietlab
