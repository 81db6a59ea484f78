#include "ietlab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "ietlab/errors.hpp"

namespace ietlab {

Potential::Potential(std::vector<Scalar> values, Scalar coupling)
    : values_(std::move(values)), coupling_(std::move(coupling)) {
  if (values_.empty()) throw ParameterError("potential needs at least one value");
  for (Scalar& v : values_) v *= coupling_;
  for (std::size_t i = 0; i < values_.size(); ++i)
    for (std::size_t j = i + 1; j < values_.size(); ++j)
      if (values_[i] == values_[j])
        throw ParameterError("potential values must be pairwise distinct");
}

Potential Potential::standard(int n, Scalar c) {
  if (n < 1) throw ParameterError("alphabet size must be positive");
  std::vector<Scalar> vals;
  vals.reserve(n);
  for (int i = 1; i <= n; ++i) vals.push_back(Scalar(i - 1));
  return Potential(std::move(vals), std::move(c));
}

const Scalar& Potential::value(int symbol) const {
  if (symbol < 1 || symbol > alphabet_size())
    throw ParameterError("symbol outside the alphabet");
  return values_[symbol - 1];
}

bool Potential::rational() const {
  for (const Scalar& v : values_)
    if (!v.is_rational()) return false;
  return true;
}

TransferMatrix TransferMatrix::identity() {
  return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

TransferMatrix transfer(const Scalar& energy, const Scalar& v) {
  return {energy - v, Scalar(-1), Scalar(1), Scalar(0)};
}

TransferMatrix word_transfer(const Scalar& energy, const std::vector<int>& word,
                             const Potential& V) {
  if (word.empty()) throw ParameterError("word must be nonempty");
  TransferMatrix m = TransferMatrix::identity();
  for (int s : word) m = transfer(energy, V.value(s)) * m;
  return m;
}

Poly trace_polynomial(const std::vector<int>& word, const Potential& V) {
  if (word.empty()) throw ParameterError("word must be nonempty");
  if (!V.rational()) throw ParameterError("exact traces need a rational potential");
  // Running product in the polynomial ring: rows (r0, r1) of the matrix.
  // Multiplying by [[x - v, -1], [1, 0]] on the left sends them to
  // ((x - v) r0 - r1, r0).
  Poly r00(Rational(1)), r01, r10, r11(Rational(1));
  for (int s : word) {
    Poly step(std::vector<Rational>{-V.value(s).as_rational(), Rational(1)});
    Poly n00 = step * r00 - r10;
    Poly n01 = step * r01 - r11;
    r10 = std::move(r00);
    r11 = std::move(r01);
    r00 = std::move(n00);
    r01 = std::move(n01);
  }
  return r00 + r11;
}

int SpectrumEstimate::merged_count() const {
  int count = 0;
  for (const SpectralBand& b : bands)
    if (!b.touches_previous) ++count;
  return count;
}

std::vector<std::pair<double, double>> SpectrumEstimate::merged() const {
  std::vector<std::pair<double, double>> out;
  for (const SpectralBand& b : bands) {
    if (b.touches_previous && !out.empty())
      out.back().second = b.right.approx();
    else
      out.emplace_back(b.left.approx(), b.right.approx());
  }
  return out;
}

namespace {

// Squarefree factors (radical) of f, each isolated on its own.
std::vector<ZPoly> radical_factors(const ZPoly& f) {
  std::vector<ZPoly> out;
  if (squarefree_certificate(f)) {
    out.push_back(f);
    return out;
  }
  for (auto& [g, mult] : squarefree_decomposition(f)) out.push_back(std::move(g));
  return out;
}

struct RootRec {
  RootInterval iv;
  int factor;  // index into the shared factor list
};

}  // namespace

SpectrumEstimate band_spectrum(const std::vector<int>& word, const Potential& V,
                               const Rational& edge_width) {
  if (!V.rational()) throw ParameterError("certified bands need a rational potential");
  Poly p = trace_polynomial(word, V);

  // Every band edge lies within [min V - 2, max V + 2]; search only there.
  Rational vmin = V.value(1).as_rational(), vmax = vmin;
  for (int s = 2; s <= V.alphabet_size(); ++s) {
    Rational v = V.value(s).as_rational();
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  Rational reach = std::max((vmin - Rational(2)).abs(), (vmax + Rational(2)).abs());
  int bound_exp = 1;
  while (Rational(mpz_class(mpz_class(1) << bound_exp)) <= reach) ++bound_exp;
  ++bound_exp;

  ZPoly lower = primitive_part(p - Poly(Rational(2)));  // edges where trace = 2
  ZPoly upper = primitive_part(p + Poly(Rational(2)));  // edges where trace = -2
  std::vector<ZPoly> factors;
  for (const ZPoly* f : {&lower, &upper})
    for (ZPoly& g : radical_factors(*f)) factors.push_back(std::move(g));

  std::vector<RootRec> roots;
  for (std::size_t fi = 0; fi < factors.size(); ++fi)
    for (RootInterval& iv : isolate_real_roots(factors[fi], bound_exp))
      roots.push_back({refine_root(factors[fi], std::move(iv), edge_width),
                       static_cast<int>(fi)});

  // Distinct algebraic numbers: shrink enclosures until strictly separated.
  for (int round = 0;; ++round) {
    if (round > 200) throw IsolationError("band edges failed to separate");
    std::sort(roots.begin(), roots.end(),
              [](const RootRec& x, const RootRec& y) { return x.iv.lo < y.iv.lo; });
    bool clean = true;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      RootRec& a = roots[i];
      RootRec& b = roots[i + 1];
      if (a.iv.hi < b.iv.lo) continue;
      clean = false;
      Rational quarter = (a.iv.hi - a.iv.lo + b.iv.hi - b.iv.lo) / Rational(8);
      if (quarter.is_zero()) quarter = edge_width / Rational(4);
      a.iv = refine_root(factors[a.factor], a.iv, quarter);
      b.iv = refine_root(factors[b.factor], b.iv, quarter);
    }
    if (clean) break;
  }

  // Classify the regions between consecutive edges by the exact sign of
  // (trace - 2)(trace + 2) at a rational point inside.
  auto in_band = [&](const Rational& t) {
    return sign_at(lower, t) * sign_at(upper, t) < 0;
  };
  std::size_t R = roots.size();
  std::vector<bool> inside(R + 1, false);
  for (std::size_t j = 0; j + 1 <= R; ++j) {
    Rational t = j == 0 ? roots[0].iv.lo - Rational(1)
                        : (roots[j - 1].iv.hi + roots[j].iv.lo) / Rational(2);
    inside[j] = in_band(t);
  }
  if (R > 0) inside[R] = in_band(roots[R - 1].iv.hi + Rational(1));
  if ((R == 0 && !word.empty()) || (R > 0 && (inside[0] || inside[R])))
    throw IsolationError("band classification failed");

  SpectrumEstimate est{word, "exact", {}, Rational(0), Rational(0), 0.0};
  for (std::size_t j = 1; j + 1 <= R; ++j) {
    if (!inside[j]) continue;
    const RootInterval& le = roots[j - 1].iv;
    const RootInterval& re = roots[j].iv;
    est.bands.push_back({{le.lo, le.hi, le.exact},
                         {re.lo, re.hi, re.exact},
                         inside[j - 1]});
    Rational lower_len = re.lo - le.hi;
    if (lower_len.sign() > 0) est.measure_lower += lower_len;
    est.measure_upper += re.hi - le.lo;
  }
  est.total_measure = ((est.measure_lower + est.measure_upper) / Rational(2)).to_double();
  return est;
}

namespace {

double trace_at(double energy, const std::vector<int>& word, const Potential& V) {
  double a = 1, b = 0, c = 0, d = 1;
  for (int s : word) {
    double t = energy - V.value_f(s);
    double na = t * a - c, nb = t * b - d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
  return a + d;
}

}  // namespace

SpectrumEstimate band_spectrum_float(const std::vector<int>& word, const Potential& V,
                                     int grid_per_symbol) {
  if (word.empty()) throw ParameterError("word must be nonempty");
  if (grid_per_symbol < 2) throw ParameterError("grid too coarse");
  double vmin = V.value_f(1), vmax = vmin;
  for (int s = 2; s <= V.alphabet_size(); ++s) {
    vmin = std::min(vmin, V.value_f(s));
    vmax = std::max(vmax, V.value_f(s));
  }
  double lo = vmin - 2 - 0.0625, hi = vmax + 2 + 0.0625;
  long n = static_cast<long>(grid_per_symbol) * static_cast<long>(word.size());
  auto covered = [&](double e) { return std::fabs(trace_at(e, word, V)) <= 2.0; };

  const double tol = 1e-12;
  SpectrumEstimate est{word, "float", {}, Rational(0), Rational(0), 0.0};
  double open_edge = 0;
  bool open = false;
  for (long i = 0; i <= n; ++i) {
    double x0 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n + 1);
    double x1 = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    bool c0 = covered(x0), c1 = covered(x1);
    if (c0 == c1) continue;
    // Bisect the edge between x0 and x1.
    while (x1 - x0 > tol) {
      double m = (x0 + x1) / 2;
      if (covered(m) == c0) x0 = m;
      else x1 = m;
    }
    double edge = (x0 + x1) / 2;
    if (!open) {
      open_edge = edge;
      open = true;
    } else {
      Rational elo{mpq_class(open_edge - tol)}, ehi{mpq_class(open_edge + tol)};
      Rational rlo{mpq_class(edge - tol)}, rhi{mpq_class(edge + tol)};
      est.bands.push_back({{elo, ehi, false}, {rlo, rhi, false}, false});
      est.measure_lower += rlo - ehi;
      est.measure_upper += rhi - elo;
      open = false;
    }
  }
  if (open) throw IsolationError("unpaired band edge in float scan");
  est.total_measure = ((est.measure_lower + est.measure_upper) / Rational(2)).to_double();
  return est;
}

std::vector<double> finite_box_eigenvalues(const std::vector<int>& window, const Potential& V,
                                           int q, double tol) {
  if (tol <= 0) throw ParameterError("tolerance must be positive");
  if (q < 1) throw ParameterError("box size must be positive");
  if (static_cast<int>(window.size()) < q)
    throw ParameterError("window shorter than the box");
  std::vector<double> diag(q);
  for (int i = 0; i < q; ++i) diag[i] = V.value_f(window[i]);
  double lo = diag[0], hi = diag[0];
  for (double v : diag) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  lo -= 2;
  hi += 2;
  // Sturm count: eigenvalues of the tridiagonal box below x.
  auto count_below = [&](double x) {
    int cnt = 0;
    double d = 1;
    for (int i = 0; i < q; ++i) {
      d = diag[i] - x - (i > 0 ? 1 / d : 0);
      if (d == 0) d = -1e-300;
      if (d < 0) ++cnt;
    }
    return cnt;
  };
  std::vector<double> out(q);
  for (int k = 0; k < q; ++k) {
    double a = lo, b = hi;
    while (b - a > tol) {
      double m = (a + b) / 2;
      if (count_below(m) <= k) a = m;
      else b = m;
    }
    out[k] = (a + b) / 2;
  }
  return out;
}

SolutionVector evolve_solution(double energy, const std::vector<int>& symbols,
                               const Potential& V, double psi0, double psi1) {
  SolutionVector sv{psi0, psi1, {}};
  sv.norm_history.reserve(symbols.size() + 1);
  sv.norm_history.push_back(std::hypot(psi0, psi1));
  for (int s : symbols) {
    double next = (energy - V.value_f(s)) * sv.psi_next - sv.psi;
    sv.psi = sv.psi_next;
    sv.psi_next = next;
    sv.norm_history.push_back(std::hypot(sv.psi, sv.psi_next));
  }
  return sv;
}

LyapunovEstimate lyapunov_estimate(double energy, const Iet& map, const Scalar& x,
                                   const Potential& V, long length) {
  if (length < 1000) throw ParameterError("need at least 1000 steps");
  Itinerary itin = orbit_symbols(map, x, 0, length - 1);
  double a = 1, b = 0, c = 0, d = 1;
  double logsum = 0;
  long mark = (3 * length) / 4;
  double log_at_mark = 0;
  auto frob = [&] { return std::sqrt(a * a + b * b + c * c + d * d); };
  for (long j = 0; j < length; ++j) {
    double t = energy - V.value_f(itin.symbol_at(j));
    double na = t * a - c, nb = t * b - d;
    c = a;
    d = b;
    a = na;
    b = nb;
    double norm = frob();
    if (norm > 1e100) {
      a /= norm;
      b /= norm;
      c /= norm;
      d /= norm;
      logsum += std::log(norm);
    }
    if (j + 1 == mark) log_at_mark = logsum + std::log(frob());
  }
  double total = logsum + std::log(frob());
  double tail = static_cast<double>(length - mark);
  return {total / static_cast<double>(length), (total - log_at_mark) / tail};
}

NondecayReport gordon_nondecay_check(const std::vector<double>& energies,
                                     const GordonCertificate& certificate, const Potential& V,
                                     const Itinerary& itinerary) {
  NondecayReport rep;
  rep.energies_checked = static_cast<int>(energies.size());
  rep.lengths_checked = static_cast<int>(certificate.lengths.size());
  if (certificate.lengths.empty()) {
    rep.note = "no lengths to check";
    return rep;
  }
  for (long k : certificate.lengths)
    if (itinerary.lo() > -k + 1 || itinerary.hi() < 2 * k)
      throw InsufficientWindowError("itinerary does not cover [-k+1, 2k]");

  const double slack = 1e-9;
  for (double E : energies) {
    for (long k : certificate.lengths) {
      for (int init = 0; init < 2; ++init) {
        double u0 = init == 0 ? 0 : 1;  // psi_1
        double u1 = init == 0 ? 1 : 0;  // psi_0
        // Forward: u_j = T(v_j) u_{j-1} with u_j = (psi_{j+1}, psi_j).
        double p = u0, q = u1;
        double nk = 0, n2k = 0;
        for (long j = 1; j <= 2 * k; ++j) {
          double t = E - V.value_f(itinerary.symbol_at(j));
          double np = t * p - q;
          q = p;
          p = np;
          if (j == k) nk = std::hypot(p, q);
        }
        n2k = std::hypot(p, q);
        // Backward: u_{j-1} = [[0, 1], [-1, E - v_j]] u_j from u_0 down.
        p = u0;
        q = u1;
        for (long j = 0; j > -k; --j) {
          double t = E - V.value_f(itinerary.symbol_at(j));
          double nq = -p + t * q;
          p = q;
          q = nq;
        }
        double nmk = std::hypot(p, q);
        double best = std::max(nk, std::max(n2k, nmk));
        double log_ratio = std::log(best) - std::log(0.5);
        if (log_ratio < -slack) {
          rep.violations.push_back({E, k, init, log_ratio});
          rep.all_ok = false;
        }
      }
    }
  }
  return rep;
}

bool hull_invariance_check(const std::vector<int>& word, const Potential& V) {
  if (word.size() < 2) throw ParameterError("need a word of length at least 2");
  Poly base = trace_polynomial(word, V);
  std::vector<int> rotated = word;
  for (std::size_t r = 1; r < word.size(); ++r) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (!(trace_polynomial(rotated, V) == base)) return false;
  }
  std::vector<int> reversed(word.rbegin(), word.rend());
  return trace_polynomial(reversed, V) == base;
}

std::vector<int> fibonacci_word(int k) {
  if (k < 0) throw ParameterError("order must be nonnegative");
  std::vector<int> prev = {1};
  if (k == 0) return prev;
  std::vector<int> cur = {2};
  for (int i = 2; i <= k; ++i) {
    std::vector<int> next = cur;
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace ietlab
