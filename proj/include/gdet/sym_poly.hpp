#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/exact_algebra.hpp"
#include "gdet/mat_operator.hpp"
#include "gdet/matrix.hpp"
#include "gdet/permutation.hpp"
#include "gdet/scalar.hpp"

namespace gdet {

/// Variable x_ij of Mat_n^*, packed as i * n + j (0-based).
struct VarId {
  std::uint32_t index = 0;

  static VarId at(std::size_t n, std::size_t i, std::size_t j) {
    return VarId{static_cast<std::uint32_t>(i * n + j)};
  }
  std::size_t row(std::size_t n) const { return index / n; }
  std::size_t col(std::size_t n) const { return index % n; }

  auto operator<=>(const VarId&) const = default;
};

struct VarPower {
  VarId var;
  std::uint32_t exponent = 1;

  auto operator<=>(const VarPower&) const = default;
};

/// Sorted by strictly increasing VarId, exponents >= 1. Monomials compare
/// lexicographically on this list; that is the term order of every
/// polynomial and of its text form.
using Monomial = std::vector<VarPower>;

inline std::uint32_t total_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& vp : m) d += vp.exponent;
  return d;
}

inline Monomial times_var(const Monomial& m, VarId v, std::uint32_t e = 1) {
  Monomial out;
  out.reserve(m.size() + 1);
  bool placed = false;
  for (const auto& vp : m) {
    if (!placed && v <= vp.var) {
      if (v == vp.var) {
        out.push_back({v, vp.exponent + e});
        placed = true;
        continue;
      }
      out.push_back({v, e});
      placed = true;
    }
    out.push_back(vp);
  }
  if (!placed) out.push_back({v, e});
  return out;
}

inline Monomial times(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].var < a[i].var) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].var, a[i].exponent + b[j].exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

struct ExpansionOptions {
  std::size_t term_cap = 10'000'000;
};

/// Sparse polynomial in the n^2 variables x_ij with exact coefficients.
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
class SparseMVPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  SparseMVPoly() = default;
  SparseMVPoly(std::size_t n, Field field) : n_(n), field_(field) {}

  static SparseMVPoly constant(std::size_t n, const Scalar& c) {
    SparseMVPoly p(n, c.field());
    p.add_term({}, c);
    return p;
  }

  static SparseMVPoly variable(std::size_t n, Field field, VarId v) {
    SparseMVPoly p(n, field);
    p.add_term({{v, 1}}, Scalar::one(field));
    return p;
  }

  std::size_t n() const { return n_; }
  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparseMVPoly scaled(const Scalar& s) const {
    SparseMVPoly out(n_, field_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * s);
    return out;
  }

  friend SparseMVPoly operator+(const SparseMVPoly& a, const SparseMVPoly& b) {
    a.require_compatible(b);
    SparseMVPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend SparseMVPoly operator-(const SparseMVPoly& a, const SparseMVPoly& b) {
    return a + b.scaled(-Scalar::one(b.field_));
  }

  friend SparseMVPoly operator*(const SparseMVPoly& a, const SparseMVPoly& b) {
    a.require_compatible(b);
    SparseMVPoly out(a.n_, a.field_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(times(ma, mb), ca * cb);
    }
    return out;
  }

  friend bool operator==(const SparseMVPoly& a, const SparseMVPoly& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const SparseMVPoly& b) const {
    if (n_ != b.n_) throw Error(ErrorCode::SizeMismatch, "polynomials over different n");
    if (!(field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
  }

  std::size_t n_ = 0;
  Field field_;
  Terms terms_;
};

/// det^(alpha,beta)(X) = sum_{w even} alpha prod x_{i,w(i)} + sum_{w odd} beta prod x_{i,w(i)}.
inline SparseMVPoly build_gen_det_poly(std::size_t n, const GenDetParams& params, std::size_t cap = 7) {
  if (n < 1 || n > cap) {
    throw Error(ErrorCode::SizeCapExceeded, "symbolic generalized determinant supports 1 <= n <= " + std::to_string(cap));
  }
  SparseMVPoly p(n, params.field());
  for_each_permutation(n, [&](const std::vector<std::size_t>& w, Parity parity) {
    Monomial m;
    m.reserve(n);
    for (std::size_t i = 0; i < n; ++i) m.push_back({VarId::at(n, i, w[i]), 1});
    p.add_term(m, parity == Parity::Even ? params.alpha : params.beta);
  });
  return p;
}

/// f o T: each x_st is replaced by the linear form sum_pq m[(s,t),(p,q)] x_pq,
/// i.e. the polynomial X -> f(T(X)), fully expanded.
inline SparseMVPoly substitute_linear(const SparseMVPoly& f, const LinearOperator& t, const ExpansionOptions& opts = {}) {
  if (f.n() != t.n()) throw Error(ErrorCode::SizeMismatch, "polynomial and operator act on different n");
  if (!(f.field() == t.field())) throw Error(ErrorCode::FieldMismatch, "polynomial and operator fields differ");
  const std::size_t n = f.n();
  const std::size_t nn = n * n;
  const DenseMatrix& m = t.matrix();
  std::vector<std::vector<std::pair<VarId, Scalar>>> forms(nn);
  for (std::size_t row = 0; row < nn; ++row) {
    for (std::size_t col = 0; col < nn; ++col) {
      if (!m(row, col).is_zero()) forms[row].emplace_back(VarId{static_cast<std::uint32_t>(col)}, m(row, col));
    }
  }

  auto over_cap = [&](std::size_t count) {
    if (count > opts.term_cap) {
      throw Error(ErrorCode::ExpansionCapExceeded, "expansion exceeded " + std::to_string(opts.term_cap) + " terms");
    }
  };

  SparseMVPoly out(n, f.field());
  for (const auto& [mono, coef] : f.terms()) {
    std::map<Monomial, Scalar> partial{{Monomial{}, coef}};
    for (const auto& vp : mono) {
      const auto& form = forms[vp.var.index];
      for (std::uint32_t e = 0; e < vp.exponent; ++e) {
        over_cap(partial.size() * form.size());
        std::map<Monomial, Scalar> next;
        for (const auto& [pm, pc] : partial) {
          for (const auto& [v, g] : form) {
            Scalar c = pc * g;
            auto [it, inserted] = next.try_emplace(times_var(pm, v), c);
            if (!inserted) it->second += c;
          }
        }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        partial = std::move(next);
      }
    }
    for (const auto& [pm, pc] : partial) out.add_term(pm, pc);
    over_cap(out.size());
  }
  return out;
}

inline SparseMVPoly partial_derivative(const SparseMVPoly& f, VarId v) {
  SparseMVPoly out(f.n(), f.field());
  for (const auto& [mono, coef] : f.terms()) {
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (mono[k].var != v) continue;
      Monomial d = mono;
      const std::uint32_t e = d[k].exponent;
      if (e == 1) {
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        d[k].exponent = e - 1;
      }
      out.add_term(d, coef * Scalar(f.field(), static_cast<long long>(e)));
      break;
    }
  }
  return out;
}

inline Scalar evaluate(const SparseMVPoly& f, const DenseMatrix& a) {
  if (a.rows() != f.n() || a.cols() != f.n()) throw Error(ErrorCode::SizeMismatch, "evaluation point shape");
  if (!(a.field() == f.field())) throw Error(ErrorCode::FieldMismatch, "evaluation point field");
  Scalar total = Scalar::zero(f.field());
  for (const auto& [mono, coef] : f.terms()) {
    Scalar term = coef;
    for (const auto& vp : mono) term *= a.entries()[vp.var.index].pow(vp.exponent);
    total += term;
  }
  return total;
}

/// alpha x_{k1 l1} x_{k2 l2} + beta x_{k1 l2} x_{k2 l1}: the generalized
/// determinant of the 2x2 submatrix on rows (k1, k2), columns (l1, l2).
inline SparseMVPoly gen_minor_2x2_poly(std::size_t n, const GenDetParams& params, std::size_t k1, std::size_t k2,
                                       std::size_t l1, std::size_t l2) {
  SparseMVPoly p(n, params.field());
  auto x = [n](std::size_t i, std::size_t j) { return VarPower{VarId::at(n, i, j), 1}; };
  auto product = [&](VarPower a, VarPower b) {
    if (a.var == b.var) return Monomial{{a.var, 2}};
    return a.var < b.var ? Monomial{a, b} : Monomial{b, a};
  };
  p.add_term(product(x(k1, l1), x(k2, l2)), params.alpha);
  p.add_term(product(x(k1, l2), x(k2, l1)), params.beta);
  return p;
}

/// Differentiates f with respect to x_{i, sigma(i)} for every i outside
/// {k1, k2}.
inline SparseMVPoly derivative_outside(const SparseMVPoly& f, std::size_t k1, std::size_t k2, const Permutation& sigma) {
  SparseMVPoly g = f;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i == k1 || i == k2) continue;
    g = partial_derivative(g, VarId::at(f.n(), i, sigma(i)));
  }
  return g;
}

/// The (n-2)-fold derivative of det^(alpha,beta)_n along an even sigma that
/// sends {k1, k2} onto {l1, l2}. The result equals
/// alpha x_{k1 sigma(k1)} x_{k2 sigma(k2)} + beta x_{k1 sigma(k2)} x_{k2 sigma(k1)}.
inline SparseMVPoly minor_by_derivatives(std::size_t n, const GenDetParams& params, std::size_t k1, std::size_t k2,
                                         std::size_t l1, std::size_t l2, const Permutation& sigma) {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "derivative identity needs n >= 4");
  if (k1 >= n || k2 >= n || l1 >= n || l2 >= n) throw Error(ErrorCode::IndexOutOfRange, "minor index");
  if (k1 == k2 || l1 == l2) throw Error(ErrorCode::InvalidArgument, "minor indices must be distinct");
  if (sigma.size() != n || !sigma.is_even()) throw Error(ErrorCode::BadPermutation, "sigma must be an even permutation of size n");
  const bool direct = sigma(k1) == l1 && sigma(k2) == l2;
  const bool swapped = sigma(k1) == l2 && sigma(k2) == l1;
  if (!direct && !swapped) throw Error(ErrorCode::BadPermutation, "sigma must send {k1,k2} onto {l1,l2}");
  return derivative_outside(build_gen_det_poly(n, params), k1, k2, sigma);
}

namespace detail {

inline std::string monomial_text(std::size_t n, const Monomial& m) {
  std::string s;
  for (const auto& vp : m) {
    if (!s.empty()) s += '*';
    s += "x[" + std::to_string(vp.var.row(n) + 1) + "," + std::to_string(vp.var.col(n) + 1) + "]";
    if (vp.exponent > 1) s += "^" + std::to_string(vp.exponent);
  }
  return s;
}

}  // namespace detail

/// Terms in monomial order, e.g. "2*x[1,1]*x[2,2] - x[1,2]*x[2,1]"; "0" for
/// the zero polynomial.
inline std::string to_string(const SparseMVPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coef] : f.terms()) {
    const bool negative = coef.is_negative();
    const Scalar magnitude = negative ? -coef : coef;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string vars = detail::monomial_text(f.n(), mono);
    if (vars.empty()) {
      out += magnitude.to_string();
    } else if (magnitude.is_one()) {
      out += vars;
    } else {
      out += magnitude.to_string() + "*" + vars;
    }
  }
  return out;
}

}  // namespace gdet
