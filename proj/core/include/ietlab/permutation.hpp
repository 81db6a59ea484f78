#pragma once

#include <string>
#include <vector>

#include "ietlab/errors.hpp"

namespace ietlab {

// Permutation of {1, ..., n} in the convention of interval exchanges: the
// interval in the i-th position of the domain is moved to the pi(i)-th
// position of the image.  Images are 1-based throughout the public surface.
class Permutation {
public:
    // Validates that images is a bijection of 1..n, n >= 1.
    explicit Permutation(std::vector<int> images);

    int size() const { return static_cast<int>(images_.size()); }
    int image(int i) const;  // pi(i), 1-based argument
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;

    // Irreducible iff pi({1..k}) != {1..k} for every k < n.  Equivalent to
    // max(pi(1..k)) > k for all k < n.
    bool irreducible() const;

    static Permutation identity(int n);

    // "(3 2 1)" style, used in logs and reports.
    std::string str() const;

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }
    friend auto operator<=>(const Permutation& a, const Permutation& b) {
        return a.images_ <=> b.images_;
    }

private:
    std::vector<int> images_;
};

}  // namespace ietlab
