#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/polynomial.hpp"
#include "ietlab/scalar.hpp"
#include "ietlab/symbolic.hpp"

namespace ietlab {

// Site values for the operator (H psi)_j = psi_{j+1} + psi_{j-1} + V(w_j) psi_j
// read off a symbol sequence w. Values are per symbol (1-based), must be
// pairwise distinct after the coupling multiplier is folded in.
class Potential {
 public:
  // values[i-1] is V(i) before coupling; throws ParameterError when the
  // coupled values are not pairwise distinct.
  explicit Potential(std::vector<Scalar> values, Scalar coupling = Scalar(1));

  // V(i) = c*(i-1): zero on symbol 1, the classic two-symbol model at n = 2.
  static Potential standard(int n, Scalar c = Scalar(2));

  int alphabet_size() const { return static_cast<int>(values_.size()); }
  // Coupled value for a symbol in 1..n; ParameterError outside.
  const Scalar& value(int symbol) const;
  double value_f(int symbol) const { return value(symbol).to_double(); }
  const Scalar& coupling() const { return coupling_; }
  // True when every coupled value is rational (exact spectra available).
  bool rational() const;

 private:
  std::vector<Scalar> values_;  // coupling already folded in
  Scalar coupling_;
};

// 2x2 real matrix [[a, b], [c, d]] with exact entries; products of transfer
// steps always have determinant one.
struct TransferMatrix {
  Scalar a, b, c, d;

  static TransferMatrix identity();
  TransferMatrix operator*(const TransferMatrix& o) const;
  Scalar det() const { return a * d - b * c; }
  Scalar trace() const { return a + d; }
};

// One step of the eigenvalue equation: [[E - v, -1], [1, 0]].
TransferMatrix transfer(const Scalar& energy, const Scalar& v);

// Ordered product T(V(w_q)) ... T(V(w_1)) over the word read left to right.
// The word must be nonempty (ParameterError).
TransferMatrix word_transfer(const Scalar& energy, const std::vector<int>& word,
                             const Potential& V);

// Trace of the word transfer as a monic degree-|word| polynomial in the
// energy. Requires a rational potential (ParameterError).
Poly trace_polynomial(const std::vector<int>& word, const Potential& V);

// One edge of a spectral band: a rational enclosure [lo, hi] of the exact
// algebraic endpoint (lo == hi when it was hit exactly).
struct BandEdge {
  Rational lo;
  Rational hi;
  bool exact = false;

  double approx() const { return (lo.to_double() + hi.to_double()) / 2; }
};

// Closed energy interval where |trace| <= 2. Bands sharing an endpoint with
// the previous band are kept separate and flagged.
struct SpectralBand {
  BandEdge left;
  BandEdge right;
  bool touches_previous = false;
};

// Band structure of the periodic operator with period word B: the set
// {E : |tr word_transfer(E, B)| <= 2}, plus a measure enclosure.
struct SpectrumEstimate {
  std::vector<int> word;   // the approximant B
  std::string mode;        // "exact" or "float"
  std::vector<SpectralBand> bands;
  Rational measure_lower;  // certified bounds in exact mode,
  Rational measure_upper;  // outward-rounded in float mode
  double total_measure = 0;  // midpoint shadow of the enclosure

  // Bands glued at touching endpoints.
  int merged_count() const;
  std::vector<std::pair<double, double>> merged() const;
};

// Certified bands via exact root isolation of trace +- 2; requires a
// rational potential. edge_width bounds each endpoint enclosure.
SpectrumEstimate band_spectrum(const std::vector<int>& word, const Potential& V,
                               const Rational& edge_width = Rational(1, int64_t(1) << 46));

// Fast uncertified scan: samples the trace on a grid and bisects the band
// edges to about 1e-12. Touching bands come out merged.
SpectrumEstimate band_spectrum_float(const std::vector<int>& word, const Potential& V,
                                     int grid_per_symbol = 256);

// Dirichlet eigenvalues of the q x q tridiagonal box with diagonal V(w_j)
// over the first q symbols of the window, off-diagonal 1; bisection on the
// Sturm count to within tol. Window shorter than q or tol <= 0 throws
// ParameterError.
std::vector<double> finite_box_eigenvalues(const std::vector<int>& window, const Potential& V,
                                           int q, double tol = 1e-10);

// A solution pair (psi_j, psi_{j+1}) pushed forward through a word, with the
// norm recorded after every step.
struct SolutionVector {
  double psi;
  double psi_next;
  std::vector<double> norm_history;
};

SolutionVector evolve_solution(double energy, const std::vector<int>& symbols,
                               const Potential& V, double psi0, double psi1);

// Growth-rate estimate along an orbit coding.
struct LyapunovEstimate {
  double average;       // (1/length) log ||T_length ... T_1||
  double last_quarter;  // same rate over the final quarter of the steps
};

// Evolves the coding of x under the exchange map for `length` steps at the
// given energy; length >= 1000 (ParameterError).
LyapunovEstimate lyapunov_estimate(double energy, const Iet& map, const Scalar& x,
                                   const Potential& V, long length);

struct NondecayViolation {
  double energy;
  long length;
  int initial;       // 0 for (1,0), 1 for (0,1)
  double log_ratio;  // log of max norm ratio, negative on a violation
};

// Outcome of checking the non-decay inequality on certified periods: for a
// certified length k, max(||u_k||, ||u_2k||, ||u_-k||) >= ||u_0|| / 2.
struct NondecayReport {
  int energies_checked = 0;
  int lengths_checked = 0;
  std::vector<NondecayViolation> violations;
  bool all_ok = true;
  std::string note;
};

// Verifies the inequality by direct evolution for every energy in the grid
// and every certified length, from both initial conditions. The itinerary
// must cover [-k+1, 2k] for each k (InsufficientWindowError).
NondecayReport gordon_nondecay_check(const std::vector<double>& energies,
                                     const GordonCertificate& certificate, const Potential& V,
                                     const Itinerary& itinerary);

// True when every cyclic rotation of the word, and its reversal, has the
// same trace polynomial (hence identical bands). |word| >= 2 and rational
// potential required (ParameterError).
bool hull_invariance_check(const std::vector<int>& word, const Potential& V);

// Word family over symbols {1, 2} built by concatenation: w(0) = "1",
// w(1) = "2", w(k) = w(k-1) w(k-2). Length of w(k) is the (k+1)-st
// Fibonacci number.
std::vector<int> fibonacci_word(int k);

}  // namespace ietlab
