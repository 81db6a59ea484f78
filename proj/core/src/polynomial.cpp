#include "ietlab/polynomial.hpp"

#include <algorithm>
#include <set>

#include "ietlab/errors.hpp"

namespace ietlab {

Poly::Poly(Rational constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return c_[i];
}

const Rational& Poly::leading() const { return c_.at(c_.size() - 1); }

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = out[i] + c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] = out[i] + o.c_[i];
  return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const Rational& v : c_) out.push_back(-v);
  return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      out[i + j] = out[i + j] + c_[i] * o.c_[j];
  }
  return Poly(std::move(out));
}

Poly Poly::operator*(const Rational& s) const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const Rational& v : c_) out.push_back(v * s);
  return Poly(std::move(out));
}

Poly Poly::derivative() const {
  std::vector<Rational> out;
  for (int i = 1; i <= degree(); ++i) out.push_back(c_[i] * Rational(i));
  return Poly(std::move(out));
}

Rational Poly::evaluate(const Rational& x) const {
  Rational acc(0);
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

double Poly::evaluate(double x) const {
  double acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i].to_double();
  return acc;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& a = c_[i];
    if (a.is_zero()) continue;
    Rational mag = a.abs();
    if (out.empty()) {
      if (a.sign() < 0) out += "-";
    } else {
      out += a.sign() < 0 ? " - " : " + ";
    }
    bool unit = mag == Rational(1);
    if (i == 0 || !unit) out += mag.str();
    if (i > 0) {
      if (!unit) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

void ZPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

namespace {

mpz_class z_content(const std::vector<mpz_class>& c) {
  mpz_class g = 0;
  for (const mpz_class& v : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void make_primitive(ZPoly& f) {
  f.trim();
  if (f.is_zero()) return;
  mpz_class g = z_content(f.c);
  if (f.c.back() < 0) g = -g;
  if (g != 1)
    for (mpz_class& v : f.c) v /= g;
}

Poly to_poly(const ZPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.c.size());
  for (const mpz_class& v : f.c) c.push_back(Rational(v));
  return Poly(std::move(c));
}

// Quotient of an exact division over Q; throws if the division leaves a
// remainder (internal misuse).
Poly poly_divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw IsolationError("division by the zero polynomial");
  std::vector<Rational> rem(a.coeffs());
  int da = a.degree(), db = b.degree();
  if (da < db) {
    if (a.is_zero()) return Poly();
    throw IsolationError("inexact polynomial division");
  }
  std::vector<Rational> q(da - db + 1, Rational(0));
  for (int i = da; i >= db; --i) {
    Rational f = rem[i] / b.leading();
    if (f.is_zero()) continue;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - f * b.coeff(j);
  }
  for (const Rational& r : rem)
    if (!r.is_zero()) throw IsolationError("inexact polynomial division");
  return Poly(std::move(q));
}

}  // namespace

ZPoly primitive_part(const Poly& p) {
  ZPoly f;
  if (p.is_zero()) return f;
  mpz_class L = 1;
  for (const Rational& r : p.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), r.den().get_mpz_t());
  f.c.reserve(p.coeffs().size());
  for (const Rational& r : p.coeffs()) f.c.push_back(r.num() * (L / r.den()));
  make_primitive(f);
  return f;
}

ZPoly z_derivative(const ZPoly& f) {
  ZPoly d;
  for (int i = 1; i <= f.degree(); ++i) d.c.push_back(f.c[i] * i);
  return d;
}

int sign_at(const ZPoly& f, const Rational& x) {
  if (f.is_zero()) return 0;
  const mpz_class& p = x.num();
  const mpz_class& q = x.den();
  mpz_class acc = f.c.back();
  mpz_class qpow = 1;
  for (int i = f.degree() - 1; i >= 0; --i) {
    qpow *= q;
    acc = acc * p + f.c[i] * qpow;
  }
  return sgn(acc);
}

ZPoly z_gcd(ZPoly a, ZPoly b) {
  make_primitive(a);
  make_primitive(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // Primitive pseudo-remainder sequence.
    ZPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      mpz_class lr = r.c.back();
      int shift = r.degree() - b.degree();
      const mpz_class& lb = b.c.back();
      for (int i = 0; i < r.degree(); ++i) r.c[i] *= lb;
      r.c.pop_back();
      for (int i = 0; i <= b.degree() - 1; ++i) r.c[i + shift] -= lr * b.c[i];
      r.trim();
    }
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

namespace {

using ModPoly = std::vector<unsigned long>;

unsigned long mod_inv(unsigned long a, unsigned long p) {
  long t = 0, nt = 1;
  long r = static_cast<long>(p), nr = static_cast<long>(a % p);
  while (nr != 0) {
    long quot = r / nr;
    t -= quot * nt;
    std::swap(t, nt);
    r -= quot * nr;
    std::swap(r, nr);
  }
  long m = t % static_cast<long>(p);
  if (m < 0) m += static_cast<long>(p);
  return static_cast<unsigned long>(m);
}

ModPoly reduce_mod(const ZPoly& f, unsigned long p) {
  ModPoly out;
  out.reserve(f.c.size());
  mpz_class pm(static_cast<unsigned long>(p));
  for (const mpz_class& v : f.c) {
    mpz_class r = v % pm;
    if (r < 0) r += pm;
    out.push_back(r.get_ui());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, unsigned long p) {
  unsigned long inv = mod_inv(b.back(), p);
  while (a.size() >= b.size()) {
    unsigned long f = (a.back() * inv) % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      unsigned long sub = (f * b[i]) % p;
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

bool squarefree_certificate(const ZPoly& f) {
  if (f.degree() < 1) return false;
  static const unsigned long primes[] = {1000003UL, 1000033UL, 1000037UL, 1000039UL,
                                         1000081UL, 1000099UL};
  mpz_class lead = f.c.back();
  for (unsigned long p : primes) {
    if (mpz_divisible_ui_p(lead.get_mpz_t(), p)) continue;
    ModPoly a = reduce_mod(f, p);
    ModPoly b = reduce_mod(z_derivative(f), p);
    while (!b.empty()) {
      a = mod_rem(std::move(a), b, p);
      std::swap(a, b);
    }
    // gcd mod p is the final nonzero remainder, now in a.
    if (a.size() == 1) return true;
  }
  return false;
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  if (f.degree() < 1) return out;
  if (squarefree_certificate(f)) {
    ZPoly g = f;
    make_primitive(g);
    out.emplace_back(std::move(g), 1);
    return out;
  }
  // Yun's algorithm over Q; constants are irrelevant for roots.
  Poly F = to_poly(f);
  Poly Fp = F.derivative();
  Poly c = to_poly(z_gcd(primitive_part(F), primitive_part(Fp)));
  if (c.degree() == 0) {
    ZPoly g = primitive_part(F);
    out.emplace_back(std::move(g), 1);
    return out;
  }
  Poly w = poly_divexact(F, c);
  Poly y = poly_divexact(Fp, c);
  Poly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly g = to_poly(z_gcd(primitive_part(w), primitive_part(z)));
    if (g.degree() > 0) out.emplace_back(primitive_part(g), i);
    w = poly_divexact(w, g);
    y = poly_divexact(z, g);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

namespace {

int descartes_var(const std::vector<mpz_class>& c) {
  int var = 0, last = 0;
  for (const mpz_class& v : c) {
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

// p(x+1) in place.
void taylor_shift1(std::vector<mpz_class>& c) {
  int d = static_cast<int>(c.size()) - 1;
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) c[j] += c[j + 1];
}

// Divide out the largest power of two common to all coefficients.
void strip_twos(std::vector<mpz_class>& c) {
  unsigned long shift = ~0UL;
  for (const mpz_class& v : c) {
    if (v == 0) continue;
    unsigned long s = mpz_scan1(v.get_mpz_t(), 0);
    shift = std::min(shift, s);
    if (shift == 0) return;
  }
  if (shift == ~0UL || shift == 0) return;
  for (mpz_class& v : c)
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), shift);
}

struct IsoState {
  std::set<Rational> exact;
  std::vector<std::pair<Rational, Rational>> open;  // candidate intervals
};

// Roots of g inside (0,1); found intervals and exact points are reported
// through `emit`, already mapped to original coordinates.
template <typename MapPoint, typename MapInterval>
void isolate01(std::vector<mpz_class> g, MapPoint emit_point, MapInterval emit_interval) {
  struct Node {
    std::vector<mpz_class> c;
    mpz_class num;  // interval (num/2^k, (num+1)/2^k)
    int k;
  };
  std::vector<Node> stack;
  stack.push_back({std::move(g), mpz_class(0), 0});
  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    // Roots at the node's endpoints are reported and divided out.
    if (!nd.c.empty() && nd.c.front() == 0) {
      emit_point(Rational(nd.num, mpz_class(1) << nd.k));
      nd.c.erase(nd.c.begin());
    }
    {
      mpz_class at1 = 0;
      for (const mpz_class& v : nd.c) at1 += v;
      if (at1 == 0 && !nd.c.empty()) {
        emit_point(Rational(nd.num + 1, mpz_class(1) << nd.k));
        // Synthetic division by (x - 1).
        std::vector<mpz_class> q(nd.c.size() - 1);
        mpz_class carry = 0;
        for (int i = static_cast<int>(nd.c.size()) - 1; i >= 1; --i) {
          carry += nd.c[i];
          q[i - 1] = carry;
        }
        nd.c = std::move(q);
      }
    }
    if (nd.c.size() <= 1) continue;
    std::vector<mpz_class> t(nd.c.rbegin(), nd.c.rend());
    taylor_shift1(t);
    int var = descartes_var(t);
    if (var == 0) continue;
    if (var == 1) {
      mpz_class den = mpz_class(1) << nd.k;
      emit_interval(Rational(nd.num, den), Rational(nd.num + 1, den));
      continue;
    }
    // Split at the midpoint.
    int d = static_cast<int>(nd.c.size()) - 1;
    std::vector<mpz_class> left(nd.c);
    for (int i = 0; i <= d; ++i) left[i] <<= (d - i);
    strip_twos(left);
    std::vector<mpz_class> right(left);
    taylor_shift1(right);
    strip_twos(right);
    stack.push_back({std::move(right), 2 * nd.num + 1, nd.k + 1});
    stack.push_back({std::move(left), 2 * nd.num, nd.k + 1});
  }
}

Rational dyadic_mid(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const ZPoly& input, int bound_exp) {
  if (input.is_zero()) throw IsolationError("cannot isolate roots of the zero polynomial");
  ZPoly f = input;
  make_primitive(f);
  if (f.degree() == 0) return {};

  IsoState st;
  // Strip the root at zero if present.
  std::size_t v = 0;
  while (v < f.c.size() && f.c[v] == 0) ++v;
  if (v > 0) {
    st.exact.insert(Rational(0));
    f.c.erase(f.c.begin(), f.c.begin() + static_cast<long>(v));
  }
  if (f.degree() >= 1) {
    int b = bound_exp;
    if (b < 0) {
      // Cauchy bound as a power of two: roots lie in (-2^b, 2^b).
      mpz_class mx = 0;
      for (const mpz_class& c : f.c) {
        mpz_class a = abs(c);
        if (a > mx) mx = a;
      }
      mpz_class lead = abs(f.c.back());
      b = 0;
      while ((lead << b) < mx + lead) ++b;
    }

    for (int side : {+1, -1}) {
      // g(x) = f(side * 2^b * x) on (0, 1).
      std::vector<mpz_class> g(f.c.begin(), f.c.end());
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] <<= b * static_cast<int>(i);
        if (side < 0 && (i % 2) == 1) g[i] = -g[i];
      }
      strip_twos(g);
      mpz_class scale = mpz_class(1) << b;
      auto emit_point = [&](const Rational& t) {
        Rational r = Rational(side) * Rational(scale) * t;
        if (!r.is_zero()) st.exact.insert(r);
      };
      auto emit_interval = [&](const Rational& lo, const Rational& hi) {
        Rational a = Rational(side) * Rational(scale) * lo;
        Rational c = Rational(side) * Rational(scale) * hi;
        if (side < 0) std::swap(a, c);
        st.open.emplace_back(a, c);
      };
      isolate01(std::move(g), emit_point, emit_interval);
    }
  }

  // Deflate the known exact roots so every open interval brackets a strict
  // sign change of the deflated polynomial.
  Poly G = to_poly(f);
  for (const Rational& r : st.exact) {
    if (r.is_zero()) continue;
    Poly lin(std::vector<Rational>{-r, Rational(1)});
    G = poly_divexact(G, lin);
  }
  ZPoly Gz = primitive_part(G);

  std::vector<RootInterval> out;
  for (auto& [lo, hi] : st.open) {
    // Shrink until the original polynomial has nonzero opposite signs at the
    // endpoints (they may sit on other, exact roots of it).
    Rational a = lo, c = hi;
    int sa = sign_at(Gz, a);
    bool exact_hit = false;
    while (sign_at(input, a) == 0 || sign_at(input, c) == 0) {
      Rational m = dyadic_mid(a, c);
      int sm = sign_at(Gz, m);
      if (sm == 0) {
        out.push_back({m, m, true});
        exact_hit = true;
        break;
      }
      if (sm == sa) a = m;
      else c = m;
    }
    if (!exact_hit) out.push_back({a, c, false});
  }
  for (const Rational& r : st.exact) out.push_back({r, r, true});
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

RootInterval refine_root(const ZPoly& f, RootInterval iv, const Rational& width) {
  if (iv.exact) return iv;
  int slo = sign_at(f, iv.lo);
  if (slo == 0 || sign_at(f, iv.hi) == 0 || slo == sign_at(f, iv.hi))
    throw IsolationError("interval does not bracket a sign change");
  while (iv.hi - iv.lo > width) {
    Rational m = dyadic_mid(iv.lo, iv.hi);
    int sm = sign_at(f, m);
    if (sm == 0) return {m, m, true};
    if (sm == slo) iv.lo = m;
    else iv.hi = m;
  }
  return iv;
}

}  // namespace ietlab
