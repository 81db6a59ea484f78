#pragma once

#include <optional>
#include <vector>

#include "ietlab/scalar.hpp"

namespace ietlab {

// Half-open interval [lo, hi).  Empty iff hi <= lo.
struct HalfOpen {
    Scalar lo, hi;

    bool empty() const { return compare(hi, lo) <= 0; }
    Scalar length() const { return empty() ? Scalar(0) : hi - lo; }
    bool contains(const Scalar& x) const {
        return compare(x, lo) >= 0 && compare(x, hi) < 0;
    }
    Scalar midpoint() const { return (lo + hi) / Scalar(2); }

    friend bool operator==(const HalfOpen& a, const HalfOpen& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// [max(lo), min(hi)); empty result collapses to nullopt.
std::optional<HalfOpen> intersect(const HalfOpen& a, const HalfOpen& b);

// Finite union of disjoint half-open intervals kept sorted by left endpoint,
// with adjacent pieces merged.  All operations are exact.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(HalfOpen iv);
    explicit IntervalSet(std::vector<HalfOpen> pieces);  // normalizes

    const std::vector<HalfOpen>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    std::size_t size() const { return pieces_.size(); }

    Scalar measure() const;
    bool contains(const Scalar& x) const;

    IntervalSet intersect(const HalfOpen& window) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet translate(const Scalar& offset) const;

    friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
        return a.pieces_ == b.pieces_;
    }

private:
    std::vector<HalfOpen> pieces_;
    void normalize();
};

}  // namespace ietlab
