#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "gdet/error.hpp"

namespace gdet {

enum class Parity { Even, Odd };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

inline Parity inversion_parity(const std::vector<std::size_t>& images) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (images[i] > images[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? Parity::Even : Parity::Odd;
}

/// A bijection of {0, .., n-1}; i maps to images()[i]. Parity is computed once
/// on construction.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    return Permutation(std::move(images), Parity::Even);
  }

  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b) {
    if (a >= n || b >= n || a == b) throw Error(ErrorCode::BadPermutation, "bad transposition");
    auto images = identity(n).images_;
    std::swap(images[a], images[b]);
    return Permutation(std::move(images), Parity::Odd);
  }

  static Permutation from_images(std::vector<std::size_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (std::size_t v : images) {
      if (v >= images.size() || seen[v]) {
        throw Error(ErrorCode::BadPermutation, "images do not form a bijection");
      }
      seen[v] = true;
    }
    Parity parity = inversion_parity(images);
    return Permutation(std::move(images), parity);
  }

  /// Images given as 1-based values, as they appear in JSON and on the CLI.
  static Permutation from_one_based(const std::vector<std::size_t>& one_based) {
    std::vector<std::size_t> images;
    images.reserve(one_based.size());
    for (std::size_t v : one_based) {
      if (v == 0) throw Error(ErrorCode::BadPermutation, "1-based image 0");
      images.push_back(v - 1);
    }
    return from_images(std::move(images));
  }

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  Parity parity() const { return parity_; }
  bool is_even() const { return parity_ == Parity::Even; }
  int sign() const { return is_even() ? 1 : -1; }

  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> out(images_);
    for (auto& v : out) ++v;
    return out;
  }

  Permutation inverse() const {
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv), parity_);
  }

  /// (*this ∘ other)(i) = (*this)(other(i)).
  Permutation operator*(const Permutation& other) const {
    if (other.size() != size()) throw Error(ErrorCode::SizeMismatch, "permutation sizes differ");
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = images_[other.images_[i]];
    return Permutation(std::move(out), parity_ == other.parity_ ? Parity::Even : Parity::Odd);
  }

  bool operator==(const Permutation& o) const { return images_ == o.images_; }

 private:
  Permutation(std::vector<std::size_t> images, Parity parity)
      : images_(std::move(images)), parity_(parity) {}

  std::vector<std::size_t> images_;
  Parity parity_ = Parity::Even;
};

/// Visits every permutation of {0..n-1} in lexicographic order of the image
/// tuple, passing the images and their parity. Parity is tracked
/// incrementally: one swap plus a suffix reversal of length k changes it by
/// 1 + floor(k/2) transpositions. The visitor may return false to stop early.
template <class Visitor>
void for_each_permutation(std::size_t n, Visitor&& visit) {
  std::vector<std::size_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = i;
  Parity parity = Parity::Even;
  while (true) {
    if constexpr (std::is_same_v<decltype(visit(w, parity)), bool>) {
      if (!visit(static_cast<const std::vector<std::size_t>&>(w), parity)) return;
    } else {
      visit(static_cast<const std::vector<std::size_t>&>(w), parity);
    }
    if (n < 2) return;
    std::size_t i = n - 1;
    while (i > 0 && w[i - 1] >= w[i]) --i;
    if (i == 0) return;
    std::size_t j = n - 1;
    while (w[j] <= w[i - 1]) --j;
    std::swap(w[i - 1], w[j]);
    std::size_t k = n - i;
    std::reverse(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    if ((1 + k / 2) % 2 == 1) parity = flip(parity);
  }
}

inline std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace gdet
