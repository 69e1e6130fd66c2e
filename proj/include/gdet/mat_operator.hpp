#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/exact_algebra.hpp"
#include "gdet/matrix.hpp"
#include "gdet/permutation.hpp"
#include "gdet/scalar.hpp"

namespace gdet {

/// Flat index of entry (i, j) under the row-major vectorization of Mat_n.
inline std::size_t vec_index(std::size_t n, std::size_t i, std::size_t j) { return i * n + j; }

struct MonomialSpec;

/// Invertible linear map on n x n matrices, stored as the n^2 x n^2 matrix m
/// with vec(T(X)) = m vec(X) (row-major vec).
class LinearOperator {
 public:
  LinearOperator() = default;

  /// Validates the shape and invertibility of m.
  LinearOperator(std::size_t n, DenseMatrix m) : n_(n), m_(std::move(m)) {
    if (m_.rows() != n * n || m_.cols() != n * n) {
      throw Error(ErrorCode::SizeMismatch, "operator matrix must be n^2 x n^2");
    }
    if (det_exact(m_).is_zero()) throw Error(ErrorCode::NotInvertible, "operator matrix is singular");
  }

  static LinearOperator identity(Field field, std::size_t n) {
    return LinearOperator(n, DenseMatrix::identity(field, n * n), Unchecked{});
  }

  /// Tabulates an arbitrary linear map from its images of the matrix units.
  template <class Map>
  static LinearOperator from_linear_map(Field field, std::size_t n, Map&& map) {
    DenseMatrix m(field, n * n, n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const DenseMatrix image = map(DenseMatrix::unit(field, n, a, b));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) m(vec_index(n, i, j), vec_index(n, a, b)) = image(i, j);
        }
      }
    }
    return LinearOperator(n, std::move(m));
  }

  /// X -> C * X (Hadamard); C must have full support.
  static LinearOperator hadamard_operator(const DenseMatrix& c) {
    if (!c.is_square()) throw Error(ErrorCode::NonSquare, "Hadamard coefficient matrix");
    const std::size_t n = c.rows();
    DenseMatrix m(c.field(), n * n, n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (c(i, j).is_zero()) throw Error(ErrorCode::NotInvertible, "Hadamard coefficient has a zero entry");
        m(vec_index(n, i, j), vec_index(n, i, j)) = c(i, j);
      }
    }
    return LinearOperator(n, std::move(m), Unchecked{});
  }

  std::size_t n() const { return n_; }
  Field field() const { return m_.field(); }
  const DenseMatrix& matrix() const { return m_; }

  DenseMatrix apply(const DenseMatrix& a) const {
    if (a.rows() != n_ || a.cols() != n_) throw Error(ErrorCode::SizeMismatch, "operand shape");
    if (!(a.field() == field())) throw Error(ErrorCode::FieldMismatch, "operand field");
    DenseMatrix out(field(), n_, n_);
    const std::size_t nn = n_ * n_;
    for (std::size_t row = 0; row < nn; ++row) {
      Scalar acc = Scalar::zero(field());
      for (std::size_t col = 0; col < nn; ++col) {
        const Scalar& g = m_(row, col);
        if (!g.is_zero()) acc += g * a.entries()[col];
      }
      out(row / n_, row % n_) = std::move(acc);
    }
    return out;
  }

  /// Entries of the inverse matrix are the coefficients expressing each x_st
  /// as a linear form in the entries of T(X).
  LinearOperator inverse() const { return LinearOperator(n_, matrix_inverse(m_), Unchecked{}); }

  bool operator==(const LinearOperator& o) const { return n_ == o.n_ && m_ == o.m_; }

 private:
  struct Unchecked {};
  LinearOperator(std::size_t n, DenseMatrix m, Unchecked) : n_(n), m_(std::move(m)) {}

  friend LinearOperator compose(const LinearOperator&, const LinearOperator&);
  friend LinearOperator from_monomial(const MonomialSpec&);

  std::size_t n_ = 0;
  DenseMatrix m_;
};

/// X -> t1(t2(X)).
inline LinearOperator compose(const LinearOperator& t1, const LinearOperator& t2) {
  if (t1.n_ != t2.n_) throw Error(ErrorCode::SizeMismatch, "operators act on different sizes");
  return LinearOperator(t1.n_, t1.m_ * t2.m_, LinearOperator::Unchecked{});
}

/// X -> L P X Q R (or L P X^t Q R) with P = (delta_{i, sigma(j)}),
/// Q = (delta_{i, tau(j)}), L = diag(l), R = diag(r).
struct MonomialSpec {
  bool transpose = false;
  Permutation sigma;
  Permutation tau;
  std::vector<Scalar> l;
  std::vector<Scalar> r;

  std::size_t n() const { return sigma.size(); }

  static MonomialSpec identity(Field field, std::size_t n) {
    return {false, Permutation::identity(n), Permutation::identity(n), std::vector<Scalar>(n, Scalar::one(field)),
            std::vector<Scalar>(n, Scalar::one(field))};
  }

  void validate() const {
    const std::size_t size = n();
    if (tau.size() != size || l.size() != size || r.size() != size) {
      throw Error(ErrorCode::SizeMismatch, "monomial spec components disagree on n");
    }
    for (std::size_t i = 0; i < size; ++i) {
      if (l[i].is_zero() || r[i].is_zero()) throw Error(ErrorCode::ZeroDiagonal, "diagonal entry is zero");
    }
  }

  /// sign(sigma) * sign(tau).
  int parity_sign() const { return sigma.sign() * tau.sign(); }

  Scalar diagonal_product() const {
    Scalar p = Scalar::one(l.front().field());
    for (const auto& v : l) p *= v;
    for (const auto& v : r) p *= v;
    return p;
  }

  bool operator==(const MonomialSpec&) const = default;
};

inline LinearOperator from_monomial(const MonomialSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n();
  const Field field = spec.l.front().field();
  const Permutation tau_inv = spec.tau.inverse();
  DenseMatrix m(field, n * n, n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // P E_ab Q = E_{sigma(a), tau^-1(b)}; the transpose variant sends E_ab to E_ba first.
      const std::size_t i = spec.transpose ? spec.sigma(b) : spec.sigma(a);
      const std::size_t j = spec.transpose ? tau_inv(a) : tau_inv(b);
      m(vec_index(n, i, j), vec_index(n, a, b)) = spec.l[i] * spec.r[j];
    }
  }
  return LinearOperator(n, std::move(m), LinearOperator::Unchecked{});
}

/// Spec of the inverse map.
inline MonomialSpec inverse_spec(const MonomialSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n();
  const Permutation sigma_inv = spec.sigma.inverse();
  const Permutation tau_inv = spec.tau.inverse();
  MonomialSpec out;
  out.transpose = spec.transpose;
  out.l.resize(n);
  out.r.resize(n);
  if (!spec.transpose) {
    out.sigma = sigma_inv;
    out.tau = tau_inv;
    for (std::size_t i = 0; i < n; ++i) {
      out.l[i] = spec.l[spec.sigma(i)].inverse();
      out.r[i] = spec.r[tau_inv(i)].inverse();
    }
  } else {
    out.sigma = spec.tau;
    out.tau = spec.sigma;
    for (std::size_t i = 0; i < n; ++i) {
      out.l[i] = spec.r[tau_inv(i)].inverse();
      out.r[i] = spec.l[spec.sigma(i)].inverse();
    }
  }
  return out;
}

/// Images F_ij = T(E_ij) of the matrix units and, when every image has a
/// single nonzero entry, the maps T(E_ij) = c_ij E_{mu(i,j), lambda(i,j)}.
struct UnitImageGrid {
  struct Witness {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t nonzeros = 0;
  };

  std::size_t n = 0;
  std::vector<DenseMatrix> images;  // indexed by vec_index(n, i, j)
  bool monomial = false;
  std::optional<Witness> witness;
  std::vector<std::size_t> mu;
  std::vector<std::size_t> lambda;
  std::vector<Scalar> c;

  const DenseMatrix& image(std::size_t i, std::size_t j) const { return images[vec_index(n, i, j)]; }
  std::size_t mu_at(std::size_t i, std::size_t j) const { return mu[vec_index(n, i, j)]; }
  std::size_t lambda_at(std::size_t i, std::size_t j) const { return lambda[vec_index(n, i, j)]; }
  const Scalar& c_at(std::size_t i, std::size_t j) const { return c[vec_index(n, i, j)]; }
};

inline UnitImageGrid unit_images(const LinearOperator& t) {
  const std::size_t n = t.n();
  const std::size_t nn = n * n;
  const DenseMatrix& m = t.matrix();
  UnitImageGrid grid;
  grid.n = n;
  grid.images.reserve(nn);
  for (std::size_t col = 0; col < nn; ++col) {
    DenseMatrix f(t.field(), n, n);
    for (std::size_t row = 0; row < nn; ++row) f(row / n, row % n) = m(row, col);
    grid.images.push_back(std::move(f));
  }
  std::vector<bool> hit(nn, false);
  for (std::size_t col = 0; col < nn; ++col) {
    const DenseMatrix& f = grid.images[col];
    const std::size_t count = f.nonzero_count();
    if (count != 1) {
      grid.witness = UnitImageGrid::Witness{col / n, col % n, count};
      break;
    }
    std::size_t target = 0;
    while (f.entries()[target].is_zero()) ++target;
    if (hit[target]) {
      grid.witness = UnitImageGrid::Witness{col / n, col % n, count};
      break;
    }
    hit[target] = true;
    grid.mu.push_back(target / n);
    grid.lambda.push_back(target % n);
    grid.c.push_back(f.entries()[target]);
  }
  grid.monomial = !grid.witness.has_value();
  if (!grid.monomial) {
    grid.mu.clear();
    grid.lambda.clear();
    grid.c.clear();
  }
  return grid;
}

}  // namespace gdet
