#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/scalar.hpp"

namespace gdet {

/// Row-major matrix of exact scalars over a single field.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

  DenseMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorCode::ShapeMismatch, "entry count does not match shape");
    }
    for (const auto& e : entries_) {
      if (!(e.field() == field_)) throw Error(ErrorCode::FieldMismatch, "mixed-field entries");
    }
  }

  /// Small integer matrices, mostly for tests: from_rows(Q, {{1, 2}, {3, 4}}).
  static DenseMatrix from_rows(Field field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Scalar> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
      for (long long v : row) entries.emplace_back(field, v);
    }
    return DenseMatrix(field, r, c, std::move(entries));
  }

  static DenseMatrix identity(Field field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
    return m;
  }

  static DenseMatrix filled(Field field, std::size_t rows, std::size_t cols, const Scalar& v) {
    return DenseMatrix(field, rows, cols, std::vector<Scalar>(rows * cols, v));
  }

  /// E_ij: the matrix unit with a single 1 at (i, j).
  static DenseMatrix unit(Field field, std::size_t n, std::size_t i, std::size_t j) {
    DenseMatrix m(field, n, n);
    m(i, j) = Scalar::one(field);
    return m;
  }

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<Scalar>& entries() const { return entries_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (const auto& e : entries_) c += e.is_zero() ? 0 : 1;
    return c;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  DenseMatrix scaled(const Scalar& s) const {
    DenseMatrix out = *this;
    for (auto& e : out.entries_) e *= s;
    return out;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix out = a;
    for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] += b.entries_[k];
    return out;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix out = a;
    for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= b.entries_[k];
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "inner dimensions differ");
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "matrix product");
    DenseMatrix out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend std::ostream& operator<<(std::ostream& os, const DenseMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  void require_same_shape(const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::ShapeMismatch, "shapes differ");
    if (!(field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "matrix fields differ");
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

}  // namespace gdet
