#include "ietlab/rauzy.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace ietlab {

const char* rauzy_case_name(RauzyCase c) {
  return c == RauzyCase::last_shorter ? "last-shorter" : "last-longer";
}

Permutation rauzy_step_perm(const Permutation& pi, RauzyCase c) {
  if (!pi.irreducible())
    throw InvalidPermutationError("renormalization step needs an irreducible permutation");
  int n = pi.size();
  int t = pi.inverse().image(n);  // the interval sent to the last slot
  std::vector<int> img(n);
  if (c == RauzyCase::last_shorter) {
    // Interval t splits; its left part feeds a new final slot, its right
    // part returns onto the old image of the last interval.
    for (int i = 1; i <= t - 1; ++i) img[i - 1] = pi.image(i);
    img[t - 1] = n;
    img[t] = pi.image(n);
    for (int i = t + 2; i <= n; ++i) img[i - 1] = pi.image(i - 1);
  } else {
    // The image of the last interval splits into two slots.
    int pn = pi.image(n);
    for (int i = 1; i <= n - 1; ++i) {
      if (i == t)
        img[i - 1] = pn + 1;
      else
        img[i - 1] = pi.image(i) + (pi.image(i) > pn ? 1 : 0);
    }
    img[n - 1] = pn;
  }
  return Permutation(img);
}

RauzyStep rauzy_step(const Permutation& pi, const ExchangeLengths& lambda) {
  if (pi.size() != lambda.n())
    throw ParameterError("permutation and length vector sizes differ");
  if (!pi.irreducible())
    throw InvalidPermutationError("renormalization step needs an irreducible permutation");
  if (!lambda.normalized())
    throw InvalidLengthsError("renormalization step needs normalized lengths");

  int n = pi.size();
  int t = pi.inverse().image(n);
  int cmp = compare(lambda[n], lambda[t]);
  if (cmp == 0)
    throw UndefinedStepError("critical lengths are equal; the step is undefined");

  RauzyCase type = cmp < 0 ? RauzyCase::last_shorter : RauzyCase::last_longer;
  Scalar nu = cmp < 0 ? lambda[n] : lambda[t];
  std::vector<Scalar> parts;
  parts.reserve(n);
  if (cmp < 0) {
    for (int i = 1; i <= t - 1; ++i) parts.push_back(lambda[i]);
    parts.push_back(lambda[t] - lambda[n]);
    parts.push_back(lambda[n]);
    for (int i = t + 1; i <= n - 1; ++i) parts.push_back(lambda[i]);
  } else {
    for (int i = 1; i <= n - 1; ++i) parts.push_back(lambda[i]);
    parts.push_back(lambda[n] - lambda[t]);
  }
  return RauzyStep{pi,
                   lambda,
                   rauzy_step_perm(pi, type),
                   ExchangeLengths(std::move(parts)).normalized_copy(),
                   nu,
                   type,
                   Scalar(1) / (Scalar(1) - nu)};
}

bool RauzyClass::contains(const Permutation& pi) const {
  return std::binary_search(members.begin(), members.end(), pi);
}

RauzyClass rauzy_class(const Permutation& pi) {
  if (!pi.irreducible())
    throw InvalidPermutationError("class closure needs an irreducible permutation");
  RauzyClass cls;
  std::set<Permutation> seen{pi};
  std::deque<Permutation> queue{pi};
  while (!queue.empty()) {
    Permutation cur = queue.front();
    queue.pop_front();
    for (RauzyCase c : {RauzyCase::last_shorter, RauzyCase::last_longer}) {
      Permutation next = rauzy_step_perm(cur, c);
      cls.edges.push_back({cur, c, next});
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  cls.members.assign(seen.begin(), seen.end());
  return cls;
}

Scalar default_proximity(int n, int m) {
  Rational quarter(1, 4L * n);
  Rational dyadic(mpz_class(1), mpz_class(n) * (mpz_class(1) << m));
  return Scalar(dyadic < quarter ? dyadic : quarter);
}

namespace {

// max_i |lambda_i - 1/n| < delta, exactly.
bool near_center(const ExchangeLengths& lambda, const Scalar& delta) {
  Scalar center(Rational(1, lambda.n()));
  for (int i = 1; i <= lambda.n(); ++i) {
    if (compare((lambda[i] - center).abs(), delta) >= 0) return false;
  }
  return true;
}

}  // namespace

RenormalizationTower build_tower(const Iet& E, int target_levels,
                                 const std::vector<Scalar>& schedule,
                                 long per_level_cap) {
  if (target_levels < 1) throw ParameterError("at least one tower level is required");
  if (per_level_cap < 1) throw ParameterError("per-level step cap must be positive");
  if (!E.perm().irreducible())
    throw InvalidPermutationError("tower construction needs an irreducible permutation");

  RenormalizationTower tower{E, {}, TowerStatus::complete, ""};
  Permutation pi = E.perm();
  ExchangeLengths lambda = E.lengths().normalized_copy();
  Scalar width = E.lengths().total();  // |J_N| in base coordinates
  long N = 0;
  long prev_N = -1;

  for (int m = 1; m <= target_levels; ++m) {
    Scalar delta = static_cast<int>(schedule.size()) >= m ? schedule[m - 1]
                                                          : default_proximity(E.n(), m);
    if (delta.sign() <= 0) throw ParameterError("proximity bounds must be positive");
    long taken = 0;
    while (true) {
      if (N > prev_N && near_center(lambda, delta)) {
        tower.levels.push_back(TowerLevel{N,
                                          {E.origin(), E.origin() + width},
                                          Scalar(1) / width,
                                          Iet(pi, lambda),
                                          delta});
        prev_N = N;
        break;
      }
      if (taken >= per_level_cap) {
        tower.status = TowerStatus::cap_exceeded;
        tower.status_detail = "level " + std::to_string(m) + ": proximity " +
                              delta.str() + " not reached within " +
                              std::to_string(per_level_cap) + " steps";
        return tower;
      }
      try {
        RauzyStep step = rauzy_step(pi, lambda);
        pi = step.after_perm;
        lambda = step.after_lengths;
        width = width * (Scalar(1) - step.nu);
        ++N;
        ++taken;
      } catch (const UndefinedStepError& e) {
        tower.status = TowerStatus::step_undefined;
        tower.status_detail =
            "level " + std::to_string(m) + ", iterate " + std::to_string(N) + ": " + e.what();
        return tower;
      }
    }
  }
  return tower;
}

bool tower_level_consistent(const RenormalizationTower& tower, int m, long step_cap) {
  const TowerLevel& level = tower.level(m);
  InducedSystem ind = induce(tower.base, level.J, step_cap);
  const Iet& ret = ind.induced_iet();
  std::vector<Scalar> scaled;
  scaled.reserve(ret.n());
  for (int i = 1; i <= ret.n(); ++i) scaled.push_back(ret.lengths()[i] * level.scale);
  Iet conjugated(ret.perm(), ExchangeLengths(std::move(scaled)));
  return conjugated == level.level_map;
}

namespace {

// Longest piece of the return map, leftmost on ties.
int longest_piece_index(const InducedSystem& R) {
  int best = 1;
  for (int k = 2; k <= R.piece_count(); ++k) {
    if (compare(R.piece(k).source.length(), R.piece(best).source.length()) > 0) best = k;
  }
  return best;
}

// Maximal subinterval of `piece` on which the return map and its first two
// inverse iterates are continuous: cut at the inverse map's interior
// breakpoints and at their forward images, then keep the longest gap
// (leftmost on ties).
HalfOpen trim_to_continuity(const InducedSystem& R, const HalfOpen& piece) {
  const Iet& ret = R.induced_iet();
  Iet inv = ret.inverse();
  std::vector<Scalar> cuts;
  for (int i = 1; i <= inv.n() - 1; ++i) {
    const Scalar& z = inv.breakpoint(i);
    if (piece.lo < z && z < piece.hi) cuts.push_back(z);
    Scalar fz = ret.evaluate(z);
    if (piece.lo < fz && fz < piece.hi) cuts.push_back(fz);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  HalfOpen best{piece.lo, piece.lo};
  Scalar prev = piece.lo;
  cuts.push_back(piece.hi);
  for (const Scalar& c : cuts) {
    if (compare(c - prev, best.length()) > 0) best = {prev, c};
    prev = c;
  }
  return best;
}

// E^j(M) for j = 0 .. word.size()-1; rigid translates since every point of M
// follows the same visited-interval word.
std::vector<HalfOpen> orbit_translates(const Iet& base, const HalfOpen& M,
                                       const std::vector<int>& word) {
  std::vector<HalfOpen> out;
  out.reserve(word.size());
  HalfOpen cur = M;
  for (std::size_t j = 0; j < word.size(); ++j) {
    out.push_back(cur);
    const Scalar& d = base.displacement(word[j]);
    cur = {cur.lo + d, cur.hi + d};
  }
  return out;
}

}  // namespace

CandidateReport candidate_report(const RenormalizationTower& tower, int m,
                                 const Scalar& epsilon, long step_cap) {
  if (m < 1 || m > tower.level_count()) throw ParameterError("no such tower level");
  if (epsilon.sign() <= 0) throw ParameterError("epsilon must be positive");
  const TowerLevel& level = tower.level(m);
  const Iet& Em = level.level_map;
  const Iet& base = tower.base;

  CandidateReport report;
  report.level = m;
  report.epsilon = epsilon;
  report.bound = Scalar(1) - epsilon * Scalar(Rational(mpz_class(1), mpz_class(1) << m));

  bool all_meet = true;
  for (int k = 1; k <= Em.n(); ++k) {
    CandidateRecord rec;
    rec.k = k;
    rec.interval = Em.continuity_interval(k);
    rec.window = {level.to_base(rec.interval.lo), level.to_base(rec.interval.hi)};

    InducedSystem R = induce(base, rec.window, step_cap);
    int idx = longest_piece_index(R);
    const InducedPiece& piece = R.piece(idx);
    rec.L = trim_to_continuity(R, piece.source);
    if (rec.L.empty()) {
      rec.error = "no-candidate";
      rec.fraction = Scalar(0);
      all_meet = false;
      report.records.push_back(std::move(rec));
      continue;
    }
    rec.length = piece.return_steps + 1;
    rec.word = piece.return_word;

    // M = {x : x, R(x), R^{-1}(x), R^{-2}(x) all in L}, an exact interval
    // because L was trimmed to continuity of all four maps.
    const Iet& ret = R.induced_iet();
    Iet inv = ret.inverse();
    Scalar len = rec.L.length();
    HalfOpen forward{ret.evaluate(rec.L.lo), ret.evaluate(rec.L.lo) + len};
    Scalar b1 = inv.evaluate(rec.L.lo);
    HalfOpen back1{b1, b1 + len};
    Scalar b2 = inv.evaluate(b1);
    HalfOpen back2{b2, b2 + len};
    HalfOpen M = rec.L;
    for (const HalfOpen& other : {forward, back1, back2}) {
      auto is = intersect(M, other);
      M = is ? *is : HalfOpen{rec.L.lo, rec.L.lo};
      if (M.empty()) break;
    }
    rec.M = M;
    rec.fraction = M.empty() ? Scalar(0) : M.length() / rec.window.length();
    if (compare(rec.fraction, report.bound) < 0) all_meet = false;

    if (!M.empty()) {
      rec.bbb_checked = true;
      long p = rec.length;
      Itinerary itin = orbit_symbols(base, M.midpoint(), -p, 2 * p);
      rec.bbb_ok = true;
      for (long j = -p; j <= p; ++j) {
        if (itin.symbol_at(j) != itin.symbol_at(j + p)) {
          rec.bbb_ok = false;
          break;
        }
      }
    }
    report.records.push_back(std::move(rec));
  }
  report.all_fractions_meet_bound = all_meet;
  report.covered_measure = captured_set(base, report).measure();
  return report;
}

IntervalSet captured_set(const Iet& base, const CandidateReport& report) {
  std::vector<HalfOpen> parts;
  for (const CandidateRecord& rec : report.records) {
    if (rec.error || rec.M.empty()) continue;
    for (const HalfOpen& t : orbit_translates(base, rec.M, rec.word)) parts.push_back(t);
  }
  return IntervalSet(std::move(parts));
}

std::vector<long> gordon_lengths_via_tower(const RenormalizationTower& tower,
                                           const Scalar& x, long step_cap) {
  std::vector<long> lengths;
  for (int m = 1; m <= tower.level_count(); ++m) {
    CandidateReport rep = candidate_report(tower, m, Scalar(Rational(1, 2)), step_cap);
    for (const CandidateRecord& rec : rep.records) {
      if (rec.error || rec.M.empty()) continue;
      for (const HalfOpen& t : orbit_translates(tower.base, rec.M, rec.word)) {
        if (t.contains(x)) {
          lengths.push_back(rec.length);
          break;
        }
      }
    }
  }
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  return lengths;
}

std::vector<long> gordon_lengths_via_tower(const Iet& E, const Scalar& x, int levels) {
  RenormalizationTower tower = build_tower(E, levels);
  return gordon_lengths_via_tower(tower, x);
}

Iet PeriodicIetSpec::iet() const {
  std::vector<Scalar> parts(n, Scalar(Rational(1, n)));
  return Iet(perm, ExchangeLengths(std::move(parts)));
}

PeriodicIetSpec periodic_iet(int n, const Permutation& pi) {
  if (pi.size() != n) throw ParameterError("permutation size does not match n");
  if (!pi.irreducible())
    throw InvalidPermutationError("periodic exchange needs an irreducible permutation");
  // With equal lengths, interval k is carried onto interval pi(k); cycles of
  // pi are the interval orbits.
  std::vector<long> l(n, 0);
  long period = 1;
  std::vector<char> visited(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    if (visited[k]) continue;
    std::vector<int> cycle;
    int cur = k;
    while (!visited[cur]) {
      visited[cur] = 1;
      cycle.push_back(cur);
      cur = pi.image(cur);
    }
    long c = static_cast<long>(cycle.size());
    long lk = c >= 2 ? c - 1 : 1;
    for (int member : cycle) l[member - 1] = lk;
    period = std::lcm(period, c);
  }
  return PeriodicIetSpec{n, pi, std::move(l), period};
}

}  // namespace ietlab
