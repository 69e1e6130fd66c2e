#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/matrix.hpp"
#include "gdet/permutation.hpp"
#include "gdet/scalar.hpp"

namespace gdet {

enum class Degeneracy { Neither, Equal, Opposite };

/// Coefficients of det^(alpha,beta) = alpha * even_det + beta * odd_det.
struct GenDetParams {
  Scalar alpha;
  Scalar beta;

  static GenDetParams make(Field f, long long a, long long b) { return {Scalar(f, a), Scalar(f, b)}; }
  static GenDetParams determinant(Field f) { return make(f, 1, -1); }
  static GenDetParams permanent(Field f) { return make(f, 1, 1); }
  static GenDetParams even(Field f) { return make(f, 1, 0); }
  static GenDetParams odd(Field f) { return make(f, 0, 1); }

  Field field() const { return alpha.field(); }
  GenDetParams swapped() const { return {beta, alpha}; }
  bool is_zero_pair() const { return alpha.is_zero() && beta.is_zero(); }

  /// (0, 0) reports Equal.
  Degeneracy degenerate() const {
    if (alpha == beta) return Degeneracy::Equal;
    if (alpha == -beta) return Degeneracy::Opposite;
    return Degeneracy::Neither;
  }

  bool operator==(const GenDetParams&) const = default;
};

struct SizeCaps {
  std::size_t ryser = 20;
  std::size_t naive_permanent = 9;
  std::size_t naive_determinant = 9;
};

enum class PermanentMethod { Ryser, Naive };
enum class SplitMethod { Split, Naive };

namespace detail {

inline void require_square(const DenseMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NonSquare,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix");
  }
}

/// Scales each row of a rational matrix by the lcm of its denominators.
/// Returns the integer matrix and the product of the scale factors.
inline std::pair<std::vector<mpz_class>, mpz_class> clear_denominators(const DenseMatrix& a) {
  std::vector<mpz_class> z(a.rows() * a.cols());
  mpz_class scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, a(i, j).rational().get_den());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const mpq_class& q = a(i, j).rational();
      z[i * a.cols() + j] = q.get_num() * (l / q.get_den());
    }
    scale *= l;
  }
  return {std::move(z), std::move(scale)};
}

inline std::vector<std::uint64_t> residues(const DenseMatrix& a) {
  std::vector<std::uint64_t> r;
  r.reserve(a.entries().size());
  for (const auto& e : a.entries()) r.push_back(e.residue());
  return r;
}

inline mpz_class bareiss_det(std::vector<mpz_class> m, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv * n + k] == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i * n + j] = std::move(v);
      }
    }
    prev = m[k * n + k];
  }
  return sign * m[(n - 1) * n + (n - 1)];
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return acc;
}

inline std::uint64_t gauss_det_mod(std::vector<std::uint64_t> m, std::size_t n, std::uint64_t p) {
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      det = (p - det) % p;
    }
    det = det * m[k * n + k] % p;
    std::uint64_t inv = pow_mod(m[k * n + k], p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      std::uint64_t f = m[i * n + k] * inv % p;
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] + (p - f) * m[k * n + j]) % p;
      }
    }
  }
  return det;
}

/// Ryser's inclusion-exclusion with Gray-code column toggling:
/// perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij.
template <class Int, class Add, class Sub, class Mul>
Int ryser(const std::vector<Int>& m, std::size_t n, Int zero, Int one, Add add, Sub sub, Mul mul) {
  if (n == 0) return one;
  std::vector<Int> row_sums(n, zero);
  Int total = zero;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(k));
    gray ^= std::uint64_t{1} << bit;
    const bool added = (gray >> bit) & 1;
    for (std::size_t i = 0; i < n; ++i) {
      row_sums[i] = added ? add(row_sums[i], m[i * n + bit]) : sub(row_sums[i], m[i * n + bit]);
    }
    Int prod = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) prod = mul(prod, row_sums[i]);
    const bool negative = ((n - static_cast<std::size_t>(__builtin_popcountll(gray))) & 1) != 0;
    total = negative ? sub(total, prod) : add(total, prod);
  }
  return total;
}

}  // namespace detail

/// Determinant by fraction-free Bareiss elimination over Q (after clearing
/// row denominators) or plain Gaussian elimination over GF(p).
inline Scalar det_exact(const DenseMatrix& a) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  const Field f = a.field();
  if (f.is_rational()) {
    auto [z, scale] = detail::clear_denominators(a);
    mpq_class q(detail::bareiss_det(std::move(z), n), scale);
    q.canonicalize();
    return Scalar(f, q);
  }
  return Scalar(f, static_cast<long long>(detail::gauss_det_mod(detail::residues(a), n, f.modulus())));
}

inline Scalar permanent(const DenseMatrix& a, PermanentMethod method = PermanentMethod::Ryser,
                        const SizeCaps& caps = {}) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  const Field f = a.field();
  if (method == PermanentMethod::Naive) {
    if (n > caps.naive_permanent) {
      throw Error(ErrorCode::SizeCapExceeded, "naive permanent capped at n=" + std::to_string(caps.naive_permanent));
    }
    Scalar total = Scalar::zero(f);
    for_each_permutation(n, [&](const std::vector<std::size_t>& w, Parity) {
      Scalar prod = Scalar::one(f);
      for (std::size_t i = 0; i < n; ++i) prod *= a(i, w[i]);
      total += prod;
    });
    return total;
  }
  if (n > caps.ryser) {
    throw Error(ErrorCode::SizeCapExceeded, "Ryser permanent capped at n=" + std::to_string(caps.ryser));
  }
  if (f.is_rational()) {
    auto [z, scale] = detail::clear_denominators(a);
    mpz_class perm = detail::ryser<mpz_class>(
        z, n, mpz_class(0), mpz_class(1), [](const mpz_class& x, const mpz_class& y) { return mpz_class(x + y); },
        [](const mpz_class& x, const mpz_class& y) { return mpz_class(x - y); },
        [](const mpz_class& x, const mpz_class& y) { return mpz_class(x * y); });
    mpq_class q(perm, scale);
    q.canonicalize();
    return Scalar(f, q);
  }
  const std::uint64_t p = f.modulus();
  std::uint64_t perm = detail::ryser<std::uint64_t>(
      detail::residues(a), n, 0, 1, [p](std::uint64_t x, std::uint64_t y) { return (x + y) % p; },
      [p](std::uint64_t x, std::uint64_t y) { return (x + p - y) % p; },
      [p](std::uint64_t x, std::uint64_t y) { return x * y % p; });
  return Scalar(f, static_cast<long long>(perm));
}

/// Even and odd determinants: the unsigned permutation sums over A_n and over
/// S_n minus A_n.
struct EvenOdd {
  Scalar even;
  Scalar odd;
};

inline EvenOdd even_odd_det(const DenseMatrix& a, SplitMethod method = SplitMethod::Split,
                            const SizeCaps& caps = {}) {
  detail::require_square(a);
  const Field f = a.field();
  const std::size_t n = a.rows();
  if (method == SplitMethod::Naive) {
    if (n > caps.naive_determinant) {
      throw Error(ErrorCode::SizeCapExceeded, "naive split capped at n=" + std::to_string(caps.naive_determinant));
    }
    EvenOdd out{Scalar::zero(f), Scalar::zero(f)};
    for_each_permutation(n, [&](const std::vector<std::size_t>& w, Parity parity) {
      Scalar prod = Scalar::one(f);
      for (std::size_t i = 0; i < n; ++i) prod *= a(i, w[i]);
      (parity == Parity::Even ? out.even : out.odd) += prod;
    });
    return out;
  }
  if (f.characteristic() == 2) throw Error(ErrorCode::CharacteristicTwo, "split needs division by 2");
  const Scalar d = det_exact(a);
  const Scalar q = permanent(a, PermanentMethod::Ryser, caps);
  const Scalar half = Scalar(f, 2).inverse();
  return {(q + d) * half, (q - d) * half};
}

inline Scalar gen_det(const GenDetParams& params, const DenseMatrix& a, const SizeCaps& caps = {}) {
  detail::require_square(a);
  const auto method = a.rows() <= 3 ? SplitMethod::Naive : SplitMethod::Split;
  const auto eo = even_odd_det(a, method, caps);
  return params.alpha * eo.even + params.beta * eo.odd;
}

/// (a_{rows[i], cols[j]}), index lists strictly increasing, 0-based.
inline DenseMatrix submatrix(const DenseMatrix& a, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) {
  auto check = [](const std::vector<std::size_t>& idx, std::size_t bound) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= bound) throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(idx[k]));
      if (k && idx[k] <= idx[k - 1]) throw Error(ErrorCode::NonIncreasingIndices, "indices must increase");
    }
  };
  check(rows, a.rows());
  check(cols, a.cols());
  if (rows.size() != cols.size()) throw Error(ErrorCode::ShapeMismatch, "row and column lists differ in length");
  DenseMatrix out(a.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  }
  return out;
}

/// All r-subsets of {0..n-1} as increasing tuples, in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t k = i; k < r; ++k) cur[k] = cur[k - 1] + 1;
  }
  return out;
}

/// Matrix of generalized r-minors, rows and columns indexed by r-subsets in
/// lexicographic order.
inline DenseMatrix gen_minor_matrix(const GenDetParams& params, const DenseMatrix& a, std::size_t r) {
  detail::require_square(a);
  if (r < 1 || r > a.rows()) throw Error(ErrorCode::IndexOutOfRange, "minor order r=" + std::to_string(r));
  const auto idx = subsets(a.rows(), r);
  DenseMatrix out(a.field(), idx.size(), idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (std::size_t l = 0; l < idx.size(); ++l) out(k, l) = gen_det(params, submatrix(a, idx[k], idx[l]));
  }
  return out;
}

inline DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "hadamard shapes differ");
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, "hadamard fields differ");
  DenseMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= b(i, j);
  }
  return out;
}

struct RowColumnClass {
  enum class Kind { Zero, Row, Column, Neither };
  Kind kind = Kind::Zero;
  std::size_t index = 0;  // 0-based row (Row) or column (Column)

  bool operator==(const RowColumnClass&) const = default;
};

/// A single nonzero entry reports Row.
inline RowColumnClass is_row_or_column(const DenseMatrix& a) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      if (std::find(rows.begin(), rows.end(), i) == rows.end()) rows.push_back(i);
      if (std::find(cols.begin(), cols.end(), j) == cols.end()) cols.push_back(j);
    }
  }
  using Kind = RowColumnClass::Kind;
  if (rows.empty()) return {Kind::Zero, 0};
  if (rows.size() == 1) return {Kind::Row, rows[0]};
  if (cols.size() == 1) return {Kind::Column, cols[0]};
  return {Kind::Neither, 0};
}

/// True iff every 2x2 minor vanishes (rank <= 1).
inline bool all_2x2_minors_vanish(const DenseMatrix& c) {
  for (std::size_t i1 = 0; i1 < c.rows(); ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < c.rows(); ++i2) {
      for (std::size_t j1 = 0; j1 < c.cols(); ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < c.cols(); ++j2) {
          if (!(c(i1, j1) * c(i2, j2) == c(i1, j2) * c(i2, j1))) return false;
        }
      }
    }
  }
  return true;
}

struct Rank1Factors {
  std::vector<Scalar> l;
  std::vector<Scalar> r;
};

/// c_ij = l_i r_j with l_0 = 1 for a full-support rank-1 matrix.
inline Rank1Factors rank1_factor(const DenseMatrix& c) {
  if (c.rows() == 0 || c.cols() == 0) throw Error(ErrorCode::ShapeMismatch, "empty matrix");
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (c(i, j).is_zero()) {
        throw Error(ErrorCode::ZeroEntry, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is zero");
      }
    }
  }
  // With full support, rank 1 iff c_ij c_00 = c_i0 c_0j for all i, j.
  for (std::size_t i = 1; i < c.rows(); ++i) {
    for (std::size_t j = 1; j < c.cols(); ++j) {
      if (!(c(i, j) * c(0, 0) == c(i, 0) * c(0, j))) {
        throw Error(ErrorCode::NotRankOne, "minor rows {1," + std::to_string(i + 1) + "} cols {1," +
                                               std::to_string(j + 1) + "} is nonzero");
      }
    }
  }
  Rank1Factors out;
  const Scalar inv00 = c(0, 0).inverse();
  for (std::size_t i = 0; i < c.rows(); ++i) out.l.push_back(c(i, 0) * inv00);
  for (std::size_t j = 0; j < c.cols(); ++j) out.r.push_back(c(0, j));
  return out;
}

inline DenseMatrix outer_product(const std::vector<Scalar>& l, const std::vector<Scalar>& r) {
  if (l.empty() || r.empty()) throw Error(ErrorCode::ShapeMismatch, "empty factor");
  DenseMatrix out(l.front().field(), l.size(), r.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) out(i, j) = l[i] * r[j];
  }
  return out;
}

/// Gauss-Jordan inverse; throws NotInvertible for singular input.
inline DenseMatrix matrix_inverse(const DenseMatrix& a) {
  detail::require_square(a);
  const std::size_t n = a.rows();
  DenseMatrix m = a;
  DenseMatrix inv = DenseMatrix::identity(a.field(), n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k).is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::NotInvertible, "singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const Scalar pinv = m(k, k).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= pinv;
      inv(k, j) *= pinv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      const Scalar f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(k, j).is_zero()) m(i, j) -= f * m(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace gdet
