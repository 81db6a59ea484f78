#include "ietlab/permutation.hpp"

#include <algorithm>

namespace ietlab {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    int n = static_cast<int>(images_.size());
    if (n == 0) throw InvalidPermutationError("permutation must have size >= 1");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : images_) {
        if (v < 1 || v > n)
            throw InvalidPermutationError("image " + std::to_string(v) +
                                          " outside 1.." + std::to_string(n));
        if (seen[static_cast<size_t>(v - 1)])
            throw InvalidPermutationError("image " + std::to_string(v) + " repeated");
        seen[static_cast<size_t>(v - 1)] = 1;
    }
}

int Permutation::image(int i) const {
    if (i < 1 || i > size())
        throw InvalidPermutationError("position " + std::to_string(i) +
                                      " outside 1.." + std::to_string(size()));
    return images_[static_cast<size_t>(i - 1)];
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 1; i <= size(); ++i)
        inv[static_cast<size_t>(image(i) - 1)] = i;
    return Permutation(std::move(inv));
}

bool Permutation::irreducible() const {
    int running_max = 0;
    for (int k = 1; k < size(); ++k) {
        running_max = std::max(running_max, image(k));
        if (running_max == k) return false;
    }
    return true;
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(v));
}

std::string Permutation::str() const {
    std::string out = "(";
    for (size_t i = 0; i < images_.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(images_[i]);
    }
    return out + ")";
}

}  // namespace ietlab
