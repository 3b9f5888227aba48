#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace natvert {

// Permutation of {1,...,n}, stored 0-based as an image array.
// Composition is left-to-right: point^(g*h) = (point^g)^h.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int degree); // identity
    explicit Permutation(std::vector<int> images_zero_based);

    static Permutation identity(int degree) { return Permutation(degree); }
    // Accepts cycle notation "(1,2)(3,4)", "()" and image-list notation
    // "[2,1,4,3]" (both 1-based).
    static Permutation parse(const std::string& text, int degree);

    int degree() const { return int(img_.size()); }
    int apply(int p) const { return img_[p]; } // 0-based
    const std::vector<int>& images() const { return img_; }

    Permutation operator*(const Permutation& rhs) const; // left-to-right
    Permutation inverse() const;
    Permutation conj_by(const Permutation& h) const;     // h^-1 * this * h
    bool operator==(const Permutation& rhs) const { return img_ == rhs.img_; }
    bool operator!=(const Permutation& rhs) const { return img_ != rhs.img_; }
    bool operator<(const Permutation& rhs) const { return img_ < rhs.img_; }

    bool is_identity() const;
    bool is_even() const;
    unsigned long long order() const;
    std::vector<int> fixed_points() const; // 0-based
    std::vector<std::vector<int>> cycles() const; // nontrivial cycles, 0-based
    // Multiset of cycle lengths including fixed points, sorted descending.
    std::vector<int> cycle_type() const;

    Permutation extended(int new_degree) const; // act as identity on new points

    std::string to_cycle_string() const; // 1-based, "()" for the identity

private:
    std::vector<int> img_;
};

Permutation parse_perm(const std::string& text, int degree);

} // namespace natvert
