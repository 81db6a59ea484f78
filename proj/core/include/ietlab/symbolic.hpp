#pragma once

#include <map>
#include <vector>

#include "ietlab/iet.hpp"

namespace ietlab {

// Exact coding partition of an exchange, all depths up to a bound: the
// depth-m cylinders are the maximal intervals on which the first m itinerary
// symbols are constant. Cut points are stored once with the depth at which
// they first appear; the depth-m cut set is the prefix with birth <= m.
class CylinderTree {
 public:
  CylinderTree(Iet E, int depth);

  const Iet& iet() const { return iet_; }
  int depth() const { return depth_; }

  // Number of nonempty words of length m (1 <= m <= depth).
  long count(int m) const { check_level(m); return counts_[m - 1]; }
  // Minimal cylinder length at depth m, exact.
  const Scalar& eta(int m) const { check_level(m); return etas_[m - 1]; }

  // All depth-m cylinder intervals, left to right; they partition the domain.
  std::vector<HalfOpen> level_intervals(int m) const;

  // The depth-m cylinder containing x, and its word.
  HalfOpen node_interval(const Scalar& x, int m) const;
  std::vector<int> node_word(const Scalar& x, int m) const;

  struct Node {
    std::vector<int> word;
    HalfOpen interval;
  };
  std::vector<Node> level_nodes(int m) const;

 private:
  void check_level(int m) const;

  Iet iet_;
  int depth_;
  std::map<Scalar, int> births_;  // interior cut point -> first depth
  std::vector<long> counts_;
  std::vector<Scalar> etas_;
};

CylinderTree build_cylinders(const Iet& E, int depth);

// Per-depth minimal cylinder measures and the scores n * eta(n) whose
// limsup-positivity is the unique-ergodicity criterion the scores probe.
struct ConditionBReport {
  int depth = 0;
  std::vector<long> counts;     // p(n), n = 1..depth
  std::vector<Scalar> eta;      // eta(n)
  std::vector<Scalar> score;    // n * eta(n)
  std::vector<Scalar> tail_max; // max of score over m >= n
  Scalar limsup_estimate;       // max score over the last half of the range
  Scalar threshold;
  bool passes = false;          // every tail_max entry exceeds the threshold
  bool aperiodic_evidence = false;  // p strictly increasing over the range
  bool unique_ergodicity_caveat = false;  // discontinuity orbits collided
  long keane_horizon = 0;
};

ConditionBReport condition_b_scores(const CylinderTree& tree,
                                    const Scalar& threshold = Scalar(Rational(1, 10)),
                                    long keane_horizon = 1000);

// Aperiodicity evidence: word counts strictly increase at every tested depth.
bool aperiodicity_check(const CylinderTree& tree);

// Lengths k for which the symbols around the itinerary origin form three
// identical adjacent blocks: omega_{j-k} = omega_j = omega_{j+k} for all
// 0 <= j <= k, i.e. the window [-k, 2k] is k-periodic. The stored window of
// each certified k is [-k, 2k] in itinerary indices.
struct GordonCertificate {
  Scalar base;
  long max_k = 0;
  std::vector<long> lengths;  // ascending
};

// Requires the itinerary to cover [-max_k, 2*max_k]; brute force over k with
// early exit, quadratic only in the certified lengths.
GordonCertificate gordon_scan(const Itinerary& itinerary, long max_k);

}  // namespace ietlab
