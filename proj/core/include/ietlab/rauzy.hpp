#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ietlab/induce.hpp"

namespace ietlab {

enum class RauzyCase {
  last_shorter,  // lambda_n < lambda_{pi^{-1}(n)}: the last interval is cut
  last_longer,   // lambda_n > lambda_{pi^{-1}(n)}: the last slot is cut
};

const char* rauzy_case_name(RauzyCase c);

// One renormalization step (pi, lambda) -> (pi', lambda') with lambda
// normalized to total 1 on both sides.
struct RauzyStep {
  Permutation before_perm;
  ExchangeLengths before_lengths;
  Permutation after_perm;
  ExchangeLengths after_lengths;
  Scalar nu;     // min(lambda_n, lambda_{pi^{-1}(n)})
  RauzyCase step_type;
  Scalar scale;  // 1/(1 - nu)
};

// Combinatorial update of the permutation alone under either case.
Permutation rauzy_step_perm(const Permutation& pi, RauzyCase c);

// Requires pi irreducible and lambda normalized; throws UndefinedStepError
// when lambda_n equals lambda_{pi^{-1}(n)}.
RauzyStep rauzy_step(const Permutation& pi, const ExchangeLengths& lambda);

struct RauzyClass {
  struct Edge {
    Permutation from;
    RauzyCase type;
    Permutation to;
  };
  std::vector<Permutation> members;  // sorted
  std::vector<Edge> edges;

  bool contains(const Permutation& pi) const;
};

// Closure of {pi} under both step types (breadth-first, deterministic order).
RauzyClass rauzy_class(const Permutation& pi);

// delta_m = min(1/(4n), 2^-m/n), the schedule used when none is given.
Scalar default_proximity(int n, int m);

struct TowerLevel {
  long N = 0;      // Rauzy iterates from the base
  HalfOpen J;      // window in base coordinates
  Scalar scale;    // 1/|J|; H(x) = (x - J.lo) * scale
  Iet level_map;   // E_m on [0, 1), the normalized iterate
  Scalar proximity_bound;  // the delta_m this level had to meet

  Scalar to_level(const Scalar& x_base) const { return (x_base - J.lo) * scale; }
  Scalar to_base(const Scalar& x_level) const { return x_level / scale + J.lo; }
};

enum class TowerStatus {
  complete,        // all requested levels built
  step_undefined,  // a Rauzy step hit lambda_n = lambda_{pi^{-1}(n)}
  cap_exceeded,    // proximity not reached within the per-level step cap
};

struct RenormalizationTower {
  Iet base;
  std::vector<TowerLevel> levels;
  TowerStatus status = TowerStatus::complete;
  std::string status_detail;

  int level_count() const { return static_cast<int>(levels.size()); }
  const TowerLevel& level(int m) const { return levels.at(m - 1); }  // 1-based
};

// Builds levels at the first strictly increasing iterate counts N_m where the
// normalized iterate lies within delta_m of the center (1/n, ..., 1/n).
// schedule entry m-1 overrides the default delta_m. A partial tower (fewer
// levels than requested) is returned with a non-complete status instead of
// throwing, so callers keep what was built.
RenormalizationTower build_tower(const Iet& E, int target_levels,
                                 const std::vector<Scalar>& schedule = {},
                                 long per_level_cap = 100'000);

// Exact conjugacy check E_m = H_m o E_{J_m} o H_m^{-1} for one level, via a
// fresh induction on the window; used by tests and the verification suite.
bool tower_level_consistent(const RenormalizationTower& tower, int m,
                            long step_cap = 10'000'000);

struct CandidateRecord {
  int k = 0;            // continuity interval index in E_m
  HalfOpen interval;    // I_k in level coordinates
  HalfOpen window;      // H_m^{-1}(I_k) in base coordinates
  std::optional<std::string> error;  // "no-candidate" when no usable L exists

  // All of the below live in base coordinates; level-coordinate copies are
  // obtained through TowerLevel::to_level.
  HalfOpen L;
  HalfOpen M;           // may be empty
  Scalar fraction;      // |M| / |I_k|, exact
  long length = 0;      // certified itinerary period of points in M
  std::vector<int> word;  // base-map return word of L's piece (length above)
  bool bbb_checked = false;
  bool bbb_ok = false;  // literal triple-block identity at M's midpoint
};

struct CandidateReport {
  int level = 0;
  Scalar epsilon;
  Scalar bound;  // 1 - epsilon / 2^level
  std::vector<CandidateRecord> records;
  bool all_fractions_meet_bound = false;
  Scalar covered_measure;  // exact measure of the captured union at this level

  const CandidateRecord& record(int k) const { return records.at(k - 1); }
};

// Candidate construction at one tower level: for each continuity interval
// I_k of E_m, induce the base map on H_m^{-1}(I_k), take the longest
// continuity piece, trim it so the return map and its first two inverse
// iterates are continuous on it, and intersect the four translates to get
// M_k. Certifies the triple-block property at each midpoint by direct
// itinerary comparison.
CandidateReport candidate_report(const RenormalizationTower& tower, int m,
                                 const Scalar& epsilon,
                                 long step_cap = 10'000'000);

// Union over k of E^j(M_k), j = 0..length_k-1, as an exact interval set in
// base coordinates (the set whose points carry the certified length).
IntervalSet captured_set(const Iet& base, const CandidateReport& report);

// Certified lengths attached to x by the tower levels: for each level whose
// captured set contains x, the corresponding candidate length. Strictly
// increasing, deduplicated.
std::vector<long> gordon_lengths_via_tower(const RenormalizationTower& tower,
                                           const Scalar& x,
                                           long step_cap = 10'000'000);

// Convenience overload building a default-schedule tower first.
std::vector<long> gordon_lengths_via_tower(const Iet& E, const Scalar& x,
                                           int levels);

struct PeriodicIetSpec {
  int n = 0;
  Permutation perm;
  std::vector<long> l;  // per-slot l_k: smallest positive l with P^{l+1} fixing slot k
  long period = 0;      // global period N: P^N = identity

  Iet iet() const;  // P = (pi, (1/n, ..., 1/n))
};

// The equal-lengths periodic exchange for an irreducible permutation.
PeriodicIetSpec periodic_iet(int n, const Permutation& pi);

}  // namespace ietlab
