#include "ietlab/iet.hpp"

#include <algorithm>
#include <utility>

namespace ietlab {

ExchangeLengths::ExchangeLengths(std::vector<Scalar> parts)
    : parts_(std::move(parts)), total_(0) {
  if (parts_.empty()) throw InvalidLengthsError("no interval lengths given");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].sign() <= 0) {
      throw InvalidLengthsError("length " + std::to_string(i + 1) +
                                " is not positive: " + parts_[i].str());
    }
    total_ += parts_[i];
  }
}

ExchangeLengths ExchangeLengths::normalized_copy() const {
  std::vector<Scalar> scaled;
  scaled.reserve(parts_.size());
  for (const Scalar& p : parts_) scaled.push_back(p / total_);
  return ExchangeLengths(std::move(scaled));
}

Iet::Iet(Permutation perm, ExchangeLengths lengths, Scalar origin)
    : perm_(std::move(perm)),
      lengths_(std::move(lengths)),
      origin_(std::move(origin)) {
  if (perm_.size() != lengths_.n()) {
    throw InvalidLengthsError("permutation size " +
                              std::to_string(perm_.size()) +
                              " does not match length count " +
                              std::to_string(lengths_.n()));
  }
  const int n = perm_.size();
  const Permutation inv = perm_.inverse();

  breakpoints_.reserve(n + 1);
  breakpoints_.push_back(origin_);
  for (int i = 1; i <= n; ++i)
    breakpoints_.push_back(breakpoints_.back() + lengths_[i]);

  // Slot j has width lambda_{pi^{-1}(j)}.
  slot_starts_.reserve(n + 1);
  slot_starts_.push_back(origin_);
  for (int j = 1; j <= n; ++j)
    slot_starts_.push_back(slot_starts_.back() + lengths_[inv.image(j)]);

  displacements_.reserve(n);
  for (int i = 1; i <= n; ++i)
    displacements_.push_back(slot_starts_[perm_.image(i) - 1] -
                             breakpoints_[i - 1]);
}

HalfOpen Iet::continuity_interval(int i) const {
  if (i < 1 || i > n()) throw DomainError("continuity interval index out of range");
  return {breakpoints_[i - 1], breakpoints_[i]};
}

HalfOpen Iet::image_interval(int i) const {
  if (i < 1 || i > n()) throw DomainError("image interval index out of range");
  const int j = perm_.image(i);
  return {slot_starts_[j - 1], slot_starts_[j - 1] + lengths_[i]};
}

int Iet::interval_index(const Scalar& x) const {
  if (x < breakpoints_.front() || x >= breakpoints_.back()) {
    throw OutOfDomainError("point " + x.str() + " outside domain [" +
                           breakpoints_.front().str() + ", " +
                           breakpoints_.back().str() + ")");
  }
  // Smallest i with x < a_i; x lies in [a_{i-1}, a_i).
  const auto it =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return static_cast<int>(it - breakpoints_.begin());
}

Scalar Iet::evaluate(const Scalar& x) const {
  return x + displacements_[interval_index(x) - 1];
}

Iet Iet::inverse() const {
  // The inverse exchanges the slots back: its intervals are the slots in
  // order (widths lambda_{pi^{-1}(j)}) and slot j returns to position
  // pi^{-1}(j).
  const Permutation inv = perm_.inverse();
  std::vector<Scalar> slot_widths;
  slot_widths.reserve(n());
  for (int j = 1; j <= n(); ++j) slot_widths.push_back(lengths_[inv.image(j)]);
  return Iet(inv, ExchangeLengths(std::move(slot_widths)), origin_);
}

bool Iet::operator==(const Iet& o) const {
  return perm_ == o.perm_ && lengths_ == o.lengths_ && origin_ == o.origin_;
}

int Itinerary::symbol_at(long j) const {
  if (j < lo() || j > hi()) throw DomainError("itinerary index out of window");
  return symbols[static_cast<std::size_t>(j - offset)];
}

Itinerary orbit_symbols(const Iet& E, const Scalar& x, long lo, long hi) {
  if (lo > hi) throw DomainError("orbit window is empty");
  Itinerary out;
  out.base = x;
  out.offset = lo;
  out.symbols.resize(static_cast<std::size_t>(hi - lo + 1));

  if (lo < 0) {
    const Iet inv = E.inverse();
    Scalar y = x;
    for (long j = -1; j >= lo; --j) {
      y = inv.evaluate(y);
      out.symbols[static_cast<std::size_t>(j - lo)] = E.interval_index(y);
    }
  }
  Scalar y = x;
  for (long j = 0; j <= hi; ++j) {
    if (j >= lo) out.symbols[static_cast<std::size_t>(j - lo)] = E.interval_index(y);
    y = E.evaluate(y);
  }
  return out;
}

KeaneReport keane_check(const Iet& E, long horizon) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  KeaneReport report;
  const int n = E.n();
  if (n < 2) return report;

  std::vector<Scalar> interior;
  for (int i = 1; i < n; ++i) interior.push_back(E.breakpoint(i));

  for (int i = 1; i < n; ++i) {
    Scalar y = E.breakpoint(i);
    for (long m = 1; m <= horizon; ++m) {
      y = E.evaluate(y);
      for (int j = 1; j < n; ++j) {
        if (y == interior[j - 1]) {
          report.collision_found = true;
          report.steps = m;
          report.from_breakpoint = i;
          report.hits_breakpoint = j;
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace ietlab
