#include "ietlab/interval.hpp"

#include <algorithm>

namespace ietlab {

std::optional<HalfOpen> intersect(const HalfOpen& a, const HalfOpen& b) {
    const Scalar& lo = compare(a.lo, b.lo) >= 0 ? a.lo : b.lo;
    const Scalar& hi = compare(a.hi, b.hi) <= 0 ? a.hi : b.hi;
    if (compare(hi, lo) <= 0) return std::nullopt;
    return HalfOpen{lo, hi};
}

IntervalSet::IntervalSet(HalfOpen iv) {
    if (!iv.empty()) pieces_.push_back(std::move(iv));
}

IntervalSet::IntervalSet(std::vector<HalfOpen> pieces) : pieces_(std::move(pieces)) {
    normalize();
}

void IntervalSet::normalize() {
    std::erase_if(pieces_, [](const HalfOpen& p) { return p.empty(); });
    std::sort(pieces_.begin(), pieces_.end(), [](const HalfOpen& a, const HalfOpen& b) {
        return compare(a.lo, b.lo) < 0;
    });
    std::vector<HalfOpen> merged;
    for (auto& p : pieces_) {
        if (!merged.empty() && compare(p.lo, merged.back().hi) <= 0) {
            if (compare(p.hi, merged.back().hi) > 0) merged.back().hi = p.hi;
        } else {
            merged.push_back(std::move(p));
        }
    }
    pieces_ = std::move(merged);
}

Scalar IntervalSet::measure() const {
    Scalar total(0);
    for (const auto& p : pieces_) total += p.length();
    return total;
}

bool IntervalSet::contains(const Scalar& x) const {
    for (const auto& p : pieces_) {
        if (compare(x, p.hi) >= 0) continue;
        return compare(x, p.lo) >= 0;
    }
    return false;
}

IntervalSet IntervalSet::intersect(const HalfOpen& window) const {
    std::vector<HalfOpen> out;
    for (const auto& p : pieces_)
        if (auto iv = ietlab::intersect(p, window)) out.push_back(*iv);
    IntervalSet r;
    r.pieces_ = std::move(out);  // already sorted and disjoint
    return r;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<HalfOpen> out;
    for (const auto& p : pieces_) {
        for (const auto& q : other.pieces_) {
            if (auto iv = ietlab::intersect(p, q)) out.push_back(*iv);
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<HalfOpen> out = pieces_;
    out.insert(out.end(), other.pieces_.begin(), other.pieces_.end());
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::translate(const Scalar& offset) const {
    IntervalSet r;
    r.pieces_.reserve(pieces_.size());
    for (const auto& p : pieces_)
        r.pieces_.push_back(HalfOpen{p.lo + offset, p.hi + offset});
    return r;
}

}  // namespace ietlab
