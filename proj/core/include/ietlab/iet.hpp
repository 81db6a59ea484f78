#pragma once

#include <vector>

#include "ietlab/errors.hpp"
#include "ietlab/interval.hpp"
#include "ietlab/permutation.hpp"
#include "ietlab/scalar.hpp"

namespace ietlab {

// Strictly positive interval lengths (lambda_1, ..., lambda_n), 1-based access.
class ExchangeLengths {
 public:
  explicit ExchangeLengths(std::vector<Scalar> parts);

  int n() const { return static_cast<int>(parts_.size()); }
  const Scalar& operator[](int i) const { return parts_.at(i - 1); }
  const std::vector<Scalar>& parts() const { return parts_; }
  const Scalar& total() const { return total_; }
  bool normalized() const { return total_ == Scalar(1); }
  // Scaled so that the total is exactly 1.
  ExchangeLengths normalized_copy() const;

  bool operator==(const ExchangeLengths& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Scalar> parts_;
  Scalar total_;
};

// Interval exchange on [a, a + total): interval i = [a_{i-1}, a_i) is
// translated onto slot pi(i), where slot j has width lambda_{pi^{-1}(j)}.
class Iet {
 public:
  Iet(Permutation perm, ExchangeLengths lengths, Scalar origin = Scalar(0));

  int n() const { return perm_.size(); }
  const Permutation& perm() const { return perm_; }
  const ExchangeLengths& lengths() const { return lengths_; }
  const Scalar& origin() const { return origin_; }
  HalfOpen domain() const { return {breakpoints_.front(), breakpoints_.back()}; }

  // a_i for 0 <= i <= n.
  const Scalar& breakpoint(int i) const { return breakpoints_.at(i); }
  // [a_{i-1}, a_i), 1-based.
  HalfOpen continuity_interval(int i) const;
  // Image of continuity interval i, i.e. slot pi(i).
  HalfOpen image_interval(int i) const;
  // d_i with E(x) = x + d_i on interval i, 1-based.
  const Scalar& displacement(int i) const { return displacements_.at(i - 1); }

  // 1-based index of the continuity interval containing x.
  int interval_index(const Scalar& x) const;
  Scalar evaluate(const Scalar& x) const;
  Scalar operator()(const Scalar& x) const { return evaluate(x); }

  Iet inverse() const;

  bool operator==(const Iet& o) const;

 private:
  Permutation perm_;
  ExchangeLengths lengths_;
  Scalar origin_;
  std::vector<Scalar> breakpoints_;  // a_0 .. a_n
  std::vector<Scalar> slot_starts_;  // b_0 .. b_n, prefix sums of slot widths
  std::vector<Scalar> displacements_;
};

// Two-sided symbol block: symbols[j - offset] is the 1-based continuity
// interval containing E^j(base) for offset <= j <= offset + size - 1.
struct Itinerary {
  std::vector<int> symbols;
  Scalar base;
  long offset = 0;

  long lo() const { return offset; }
  long hi() const { return offset + static_cast<long>(symbols.size()) - 1; }
  int symbol_at(long j) const;
};

// Symbols of E^j(x) for j in [lo, hi] inclusive; backward steps use the exact
// inverse exchange.
Itinerary orbit_symbols(const Iet& E, const Scalar& x, long lo, long hi);

struct KeaneReport {
  bool collision_found = false;
  long steps = 0;           // first m >= 1 with E^m(a_i) hitting a breakpoint
  int from_breakpoint = 0;  // interior index i in 1..n-1
  int hits_breakpoint = 0;  // interior index j in 1..n-1
};

// Searches for collisions among discontinuity orbits up to the horizon; a
// clean report is minimality evidence, not proof.
KeaneReport keane_check(const Iet& E, long horizon);

}  // namespace ietlab
