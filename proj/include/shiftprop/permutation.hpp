#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace shiftprop {

/// Permutation of {0..n-1}, stored as the image list: wire j goes to
/// position image[j].
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (std::size_t v : images_) {
            if (v >= images_.size() || seen[v]) throw std::invalid_argument("invalid permutation");
            seen[v] = 1;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> im(n);
        std::iota(im.begin(), im.end(), std::size_t{0});
        return Permutation(std::move(im));
    }

    static Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
        Permutation p = identity(n);
        std::swap(p.images_[i], p.images_[j]);
        return p;
    }

    /// Block swap a+b -> b+a: the first a wires move after the b wires.
    static Permutation block_swap(std::size_t a, std::size_t b) {
        std::vector<std::size_t> im(a + b);
        for (std::size_t i = 0; i < a; ++i) im[i] = b + i;
        for (std::size_t i = 0; i < b; ++i) im[a + i] = i;
        return Permutation(std::move(im));
    }

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t j) const { return images_.at(j); }
    const std::vector<std::size_t>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<std::size_t> im(images_.size());
        for (std::size_t j = 0; j < images_.size(); ++j) im[images_[j]] = j;
        return Permutation(std::move(im));
    }

    /// (this o other): apply `other` first.
    Permutation after(const Permutation& other) const {
        if (size() != other.size()) throw std::invalid_argument("permutation size mismatch");
        std::vector<std::size_t> im(images_.size());
        for (std::size_t j = 0; j < images_.size(); ++j) im[j] = images_[other.images_[j]];
        return Permutation(std::move(im));
    }

    bool is_identity() const {
        for (std::size_t j = 0; j < images_.size(); ++j)
            if (images_[j] != j) return false;
        return true;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }

private:
    std::vector<std::size_t> images_;
};

}  // namespace shiftprop
