#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gdet/permutation.hpp"
#include "gdet/scalar.hpp"

namespace gdet {

/// Seeded generator with platform-independent bounded draws (mt19937_64 is
/// fully specified; the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

  Permutation permutation(std::size_t n) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(images[i - 1], images[below(i)]);
    return Permutation::from_images(std::move(images));
  }

  /// Uniform element of GF(p); over Q an integer in [-bound, bound].
  Scalar scalar(Field field, long long bound = 9) {
    if (field.is_prime_field()) return Scalar(field, static_cast<long long>(below(field.modulus())));
    return Scalar(field, between(-bound, bound));
  }

  /// Uniform nonzero element of GF(p); over Q a nonzero fraction a/b with
  /// |a|, b <= bound.
  Scalar nonzero_scalar(Field field, long long bound = 5) {
    if (field.is_prime_field()) {
      return Scalar(field, 1 + static_cast<long long>(below(field.modulus() - 1)));
    }
    long long a = between(1, bound);
    if (coin()) a = -a;
    long long b = between(1, bound);
    return Scalar(field, a) / Scalar(field, b);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gdet
