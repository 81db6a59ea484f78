#include "ietlab/symbolic.hpp"

#include <algorithm>
#include <set>

namespace ietlab {

CylinderTree::CylinderTree(Iet E, int depth) : iet_(std::move(E)), depth_(depth) {
  if (depth < 1) throw ParameterError("cylinder depth must be at least 1");
  counts_.reserve(depth);
  etas_.reserve(depth);

  // Gap lengths of the current partition, kept as a multiset so the minimum
  // survives splits exactly.
  std::multiset<Scalar> gaps;
  HalfOpen dom = iet_.domain();
  gaps.insert(dom.length());

  auto insert_cut = [&](const Scalar& z, int birth) -> bool {
    if (z <= dom.lo || z >= dom.hi) return false;  // boundary cuts are no cuts
    auto [it, fresh] = births_.emplace(z, birth);
    if (!fresh) return false;
    // Split the gap that contained z.
    Scalar lo = it == births_.begin() ? dom.lo : std::prev(it)->first;
    auto nx = std::next(it);
    Scalar hi = nx == births_.end() ? dom.hi : nx->first;
    gaps.erase(gaps.find(hi - lo));
    gaps.insert(z - lo);
    gaps.insert(hi - z);
    return true;
  };

  std::vector<Scalar> frontier;
  for (int i = 1; i <= iet_.n() - 1; ++i) {
    if (insert_cut(iet_.breakpoint(i), 1)) frontier.push_back(iet_.breakpoint(i));
  }
  counts_.push_back(static_cast<long>(births_.size()) + 1);
  etas_.push_back(*gaps.begin());

  Iet inv = iet_.inverse();
  for (int m = 2; m <= depth; ++m) {
    std::vector<Scalar> next;
    for (const Scalar& z : frontier) {
      Scalar w = inv.evaluate(z);
      if (insert_cut(w, m)) next.push_back(std::move(w));
    }
    frontier = std::move(next);
    counts_.push_back(static_cast<long>(births_.size()) + 1);
    etas_.push_back(*gaps.begin());
    if (frontier.empty()) {
      // Eventually periodic coding: the partition is stable from here on.
      for (int r = m + 1; r <= depth; ++r) {
        counts_.push_back(counts_.back());
        etas_.push_back(etas_.back());
      }
      break;
    }
  }
}

void CylinderTree::check_level(int m) const {
  if (m < 1 || m > depth_) throw ParameterError("depth outside the built range");
}

std::vector<HalfOpen> CylinderTree::level_intervals(int m) const {
  check_level(m);
  HalfOpen dom = iet_.domain();
  std::vector<HalfOpen> out;
  Scalar prev = dom.lo;
  for (const auto& [point, birth] : births_) {
    if (birth > m) continue;
    out.push_back({prev, point});
    prev = point;
  }
  out.push_back({prev, dom.hi});
  return out;
}

HalfOpen CylinderTree::node_interval(const Scalar& x, int m) const {
  check_level(m);
  HalfOpen cur = iet_.domain();
  Scalar offset(0);
  Scalar y = x;
  for (int j = 0; j < m; ++j) {
    int s = iet_.interval_index(y);
    HalfOpen piece = iet_.continuity_interval(s);
    // Pull the constraint back to time zero; the offset is the cumulative
    // displacement, constant on the cylinder.
    HalfOpen back{piece.lo - offset, piece.hi - offset};
    if (back.lo > cur.lo) cur.lo = back.lo;
    if (back.hi < cur.hi) cur.hi = back.hi;
    const Scalar& d = iet_.displacement(s);
    offset = offset + d;
    y = y + d;
  }
  return cur;
}

std::vector<int> CylinderTree::node_word(const Scalar& x, int m) const {
  check_level(m);
  Itinerary itin = orbit_symbols(iet_, x, 0, m - 1);
  return itin.symbols;
}

std::vector<CylinderTree::Node> CylinderTree::level_nodes(int m) const {
  std::vector<Node> out;
  for (const HalfOpen& iv : level_intervals(m)) {
    out.push_back({node_word(iv.lo, m), iv});
  }
  return out;
}

CylinderTree build_cylinders(const Iet& E, int depth) { return CylinderTree(E, depth); }

ConditionBReport condition_b_scores(const CylinderTree& tree, const Scalar& threshold,
                                    long keane_horizon) {
  ConditionBReport rep;
  int N = tree.depth();
  rep.depth = N;
  rep.threshold = threshold;
  rep.keane_horizon = keane_horizon;
  for (int n = 1; n <= N; ++n) {
    rep.counts.push_back(tree.count(n));
    rep.eta.push_back(tree.eta(n));
    rep.score.push_back(Scalar(Rational(n)) * tree.eta(n));
  }
  rep.tail_max.assign(N, Scalar(0));
  for (int n = N; n >= 1; --n) {
    rep.tail_max[n - 1] = rep.score[n - 1];
    if (n < N && compare(rep.tail_max[n], rep.tail_max[n - 1]) > 0)
      rep.tail_max[n - 1] = rep.tail_max[n];
  }
  rep.limsup_estimate = Scalar(0);
  for (int n = N / 2 + 1; n <= N; ++n) {
    if (compare(rep.score[n - 1], rep.limsup_estimate) > 0)
      rep.limsup_estimate = rep.score[n - 1];
  }
  rep.passes = true;
  for (const Scalar& t : rep.tail_max) {
    if (compare(t, threshold) <= 0) {
      rep.passes = false;
      break;
    }
  }
  rep.aperiodic_evidence = aperiodicity_check(tree);
  rep.unique_ergodicity_caveat = keane_check(tree.iet(), keane_horizon).collision_found;
  return rep;
}

bool aperiodicity_check(const CylinderTree& tree) {
  for (int n = 1; n < tree.depth(); ++n) {
    if (tree.count(n + 1) <= tree.count(n)) return false;
  }
  return tree.depth() >= 2;
}

GordonCertificate gordon_scan(const Itinerary& itinerary, long max_k) {
  if (max_k < 1) throw ParameterError("max_k must be positive");
  if (itinerary.lo() > -max_k || itinerary.hi() < 2 * max_k)
    throw InsufficientWindowError("itinerary must cover [-max_k, 2*max_k]");

  GordonCertificate cert{itinerary.base, max_k, {}};
  const std::vector<int>& sym = itinerary.symbols;
  long off = itinerary.lo();
  auto at = [&](long j) { return sym[static_cast<std::size_t>(j - off)]; };

  for (long k = 1; k <= max_k; ++k) {
    // Cheap probes before the full pass; most lengths die here.
    bool ok = at(0) == at(-k) && at(0) == at(k) && at(k) == at(2 * k);
    for (long j : {k / 2, k - 1, std::min(k, 7L), std::min(k, 33L)}) {
      if (!ok) break;
      ok = at(j - k) == at(j) && at(j) == at(j + k);
    }
    for (long j = 0; ok && j <= k; ++j) ok = at(j - k) == at(j) && at(j) == at(j + k);
    if (ok) cert.lengths.push_back(k);
  }
  return cert;
}

}  // namespace ietlab
