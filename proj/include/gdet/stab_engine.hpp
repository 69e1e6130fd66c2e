#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/exact_algebra.hpp"
#include "gdet/mat_operator.hpp"
#include "gdet/matrix.hpp"
#include "gdet/permutation.hpp"
#include "gdet/rng.hpp"
#include "gdet/scalar.hpp"
#include "gdet/sign_patterns.hpp"
#include "gdet/sym_poly.hpp"

namespace gdet {

/// Normalized monomial stabilizer element: l_1 = 1,
/// sign(sigma) sign(tau) = +1 and prod(l) prod(r) = 1.
class CanonicalStabElement {
 public:
  static CanonicalStabElement make(MonomialSpec spec) {
    spec.validate();
    if (!spec.l.front().is_one()) throw Error(ErrorCode::InvalidArgument, "canonical form needs l_1 = 1");
    if (spec.parity_sign() != 1) throw Error(ErrorCode::ParityViolation, "sign(sigma) sign(tau) = -1");
    if (!spec.diagonal_product().is_one()) {
      throw Error(ErrorCode::ProductNotOne, "prod(l) prod(r) = " + spec.diagonal_product().to_string());
    }
    return CanonicalStabElement(std::move(spec));
  }

  const MonomialSpec& spec() const { return spec_; }
  LinearOperator to_operator() const { return from_monomial(spec_); }

  bool operator==(const CanonicalStabElement&) const = default;

 private:
  explicit CanonicalStabElement(MonomialSpec spec) : spec_(std::move(spec)) {}
  MonomialSpec spec_;
};

struct RandomizedEvidence {
  std::size_t trials = 0;
  /// "(n/p)^t" over GF(p); "none" over Q, where no bound is claimed.
  std::string error_bound;
};

struct MembershipVerdict {
  bool member = false;
  std::optional<RandomizedEvidence> randomized;  // empty: symbolic evidence
  std::optional<DenseMatrix> witness;

  bool symbolic() const { return !randomized.has_value(); }
};

struct MembershipOptions {
  std::size_t symbolic_cap = 6;
  ExpansionOptions expansion;
};

/// det^(alpha,beta)_n(T(X)) as an expanded polynomial.
inline SparseMVPoly transformed_gen_det_poly(const LinearOperator& t, const GenDetParams& params,
                                             const MembershipOptions& opts = {}) {
  if (t.n() > opts.symbolic_cap) {
    throw Error(ErrorCode::SizeCapExceeded, "symbolic membership supports n <= " + std::to_string(opts.symbolic_cap));
  }
  return substitute_linear(build_gen_det_poly(t.n(), params, opts.symbolic_cap), t, opts.expansion);
}

/// Exact test of f(T(X)) = f(X) for f = det^(alpha,beta)_n.
inline MembershipVerdict membership_symbolic(const LinearOperator& t, const GenDetParams& params,
                                             const MembershipOptions& opts = {}) {
  if (!(params.field() == t.field())) throw Error(ErrorCode::FieldMismatch, "params and operator fields differ");
  if (t.n() > opts.symbolic_cap) {
    throw Error(ErrorCode::SizeCapExceeded, "symbolic membership supports n <= " + std::to_string(opts.symbolic_cap));
  }
  const SparseMVPoly f = build_gen_det_poly(t.n(), params, opts.symbolic_cap);
  MembershipVerdict v;
  v.member = substitute_linear(f, t, opts.expansion) == f;
  return v;
}

/// Schwartz-Zippel style test at `trials` random points. Over GF(p) the
/// false-member probability is at most (n/p)^trials; over Q points are
/// uniform integers in [0, 2^31) and no bound is claimed.
inline MembershipVerdict membership_randomized(const LinearOperator& t, const GenDetParams& params, std::size_t trials,
                                               std::uint64_t seed) {
  const Field field = t.field();
  const std::size_t n = t.n();
  if (!(params.field() == field)) throw Error(ErrorCode::FieldMismatch, "params and operator fields differ");
  if (field.is_prime_field() && field.modulus() <= n) {
    throw Error(ErrorCode::BadField, "randomized test needs p > n");
  }
  Rng rng(seed);
  MembershipVerdict v;
  v.member = true;
  v.randomized = RandomizedEvidence{
      trials, field.is_prime_field()
                  ? "(" + std::to_string(n) + "/" + std::to_string(field.modulus()) + ")^" + std::to_string(trials)
                  : std::string("none")};
  for (std::size_t k = 0; k < trials; ++k) {
    DenseMatrix a(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = field.is_prime_field() ? rng.scalar(field)
                                         : Scalar(field, static_cast<long long>(rng.below(std::uint64_t{1} << 31)));
      }
    }
    if (!(gen_det(params, t.apply(a)) == gen_det(params, a))) {
      v.member = false;
      v.witness = std::move(a);
      break;
    }
  }
  return v;
}

/// First structural reason an operator fails to have the canonical
/// stabilizer shape.
struct Violation {
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string detail;
  std::optional<UnitImageGrid::Witness> witness;
};

using ExtractionResult = std::variant<CanonicalStabElement, Violation>;

/// Recovers (transpose, sigma, tau, l, r) from an operator by walking the
/// chain: unit images are monomial, their positions follow X -> PXQ or
/// X -> PX^tQ with sign(sigma) sign(tau) = 1, the coefficient matrix is rank
/// one and prod(l) prod(r) = 1. Does not pre-check membership; reports the
/// first violated step.
inline ExtractionResult analyze_operator(const LinearOperator& t, const GenDetParams& params) {
  if (params.degenerate() != Degeneracy::Neither) {
    return Violation{ErrorCode::DegenerateParams, "extraction requires alpha != +-beta", std::nullopt};
  }
  const std::size_t n = t.n();
  if (n < 3) return Violation{ErrorCode::InvalidArgument, "extraction requires n >= 3", std::nullopt};

  const UnitImageGrid grid = unit_images(t);
  if (!grid.monomial) {
    return Violation{ErrorCode::NotMonomial,
                     "T(E_" + std::to_string(grid.witness->i + 1) + std::to_string(grid.witness->j + 1) + ") has " +
                         std::to_string(grid.witness->nonzeros) + " nonzero entries",
                     grid.witness};
  }

  bool direct = true;
  bool transposed = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      direct = direct && grid.mu_at(i, j) == grid.mu_at(i, 0) && grid.lambda_at(i, j) == grid.lambda_at(0, j);
      transposed = transposed && grid.mu_at(i, j) == grid.mu_at(0, j) && grid.lambda_at(i, j) == grid.lambda_at(i, 0);
    }
  }
  if (direct == transposed) {
    return Violation{ErrorCode::NotMonomial, "unit images are monomial but not of the form PXQ or PX^tQ", std::nullopt};
  }

  std::vector<std::size_t> sigma_images(n), tau_inv_images(n);
  for (std::size_t k = 0; k < n; ++k) {
    sigma_images[k] = direct ? grid.mu_at(k, 0) : grid.mu_at(0, k);
    tau_inv_images[k] = direct ? grid.lambda_at(0, k) : grid.lambda_at(k, 0);
  }
  MonomialSpec spec;
  spec.transpose = transposed;
  spec.sigma = Permutation::from_images(std::move(sigma_images));
  spec.tau = Permutation::from_images(std::move(tau_inv_images)).inverse();
  if (spec.parity_sign() != 1) {
    return Violation{ErrorCode::ParityViolation, "sign(sigma) sign(tau) = -1: the even and odd parts are exchanged",
                     std::nullopt};
  }

  // Coefficients indexed by output position: T(X) = C * PXQ (or C * PX^tQ).
  DenseMatrix c(t.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c(grid.mu_at(i, j), grid.lambda_at(i, j)) = grid.c_at(i, j);
  }
  if (!all_2x2_minors_vanish(c)) {
    return Violation{ErrorCode::NotRankOne, "coefficient matrix has a nonzero 2x2 minor", std::nullopt};
  }
  Rank1Factors factors = rank1_factor(c);
  spec.l = std::move(factors.l);
  spec.r = std::move(factors.r);
  const Scalar product = spec.diagonal_product();
  if (!product.is_one()) {
    return Violation{ErrorCode::ProductNotOne, "prod(l) prod(r) = " + product.to_string(), std::nullopt};
  }
  if (!(from_monomial(spec) == t)) {
    return Violation{ErrorCode::RoundTripMismatch, "rebuilt operator differs from input", std::nullopt};
  }
  return CanonicalStabElement::make(std::move(spec));
}

inline CanonicalStabElement extract_canonical(const LinearOperator& t, const GenDetParams& params) {
  ExtractionResult result = analyze_operator(t, params);
  if (auto* v = std::get_if<Violation>(&result)) throw Error(v->code, v->detail);
  return std::get<CanonicalStabElement>(std::move(result));
}

/// Random member of stab(det_n) intersected with stab(perm_n), deterministic
/// per seed. Over Q the diagonal entries are small fractions.
inline std::pair<LinearOperator, CanonicalStabElement> sample_member(std::size_t n, Field field, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sampling needs n >= 2");
  Rng rng(seed);
  MonomialSpec spec;
  spec.sigma = rng.permutation(n);
  spec.tau = rng.permutation(n);
  if (spec.parity_sign() != 1) spec.tau = spec.tau * Permutation::transposition(n, 0, 1);
  spec.transpose = rng.coin();
  spec.l.push_back(Scalar::one(field));
  for (std::size_t i = 1; i < n; ++i) spec.l.push_back(rng.nonzero_scalar(field));
  for (std::size_t j = 0; j + 1 < n; ++j) spec.r.push_back(rng.nonzero_scalar(field));
  Scalar partial = Scalar::one(field);
  for (const auto& v : spec.l) partial *= v;
  for (const auto& v : spec.r) partial *= v;
  spec.r.push_back(partial.inverse());
  auto element = CanonicalStabElement::make(std::move(spec));
  return {element.to_operator(), element};
}

struct ProductCheck {
  bool holds = true;
  /// Lexicographically least permutation (0-based images) whose product is not 1.
  std::optional<std::vector<std::size_t>> witness;
};

inline bool mode_includes(EquationMode mode, Parity parity) {
  return mode == EquationMode::Full || (mode == EquationMode::Even) == (parity == Parity::Even);
}

/// Checks c_{1 w(1)} ... c_{n w(n)} = 1 for every w of the mode's parity class.
inline ProductCheck product_equations_check(const DenseMatrix& c, EquationMode mode, std::size_t cap = 8) {
  detail::require_square(c);
  const std::size_t n = c.rows();
  if (n > cap) throw Error(ErrorCode::SizeCapExceeded, "product equations enumerate n! permutations; cap " + std::to_string(cap));
  ProductCheck out;
  const Field f = c.field();
  for_each_permutation(n, [&](const std::vector<std::size_t>& w, Parity parity) {
    if (!mode_includes(mode, parity)) return true;
    Scalar prod = Scalar::one(f);
    for (std::size_t i = 0; i < n; ++i) prod *= c(i, w[i]);
    if (!prod.is_one()) {
      out.holds = false;
      out.witness = w;
      return false;
    }
    return true;
  });
  return out;
}

struct SolutionClass {
  enum class Kind { RankOneFamily, N4SignFamily, NotASolution };
  Kind kind = Kind::NotASolution;
  int eps_u = 1;
  int eps_v = 1;
  std::vector<Scalar> a_col;  // a_{i1}
  std::vector<Scalar> a_row;  // a_{1j}
  std::optional<std::vector<std::size_t>> witness;
};

/// Places a verified solution of the product equations in its family:
/// (a_{i1} a_{1j} / a_{11}) when every 2x2 minor vanishes, or for n = 4 in
/// even/odd mode a sign-twisted copy of that shape. A verified solution that
/// fits neither throws UnclassifiedSolution.
inline SolutionClass classify_solution(const DenseMatrix& c, EquationMode mode) {
  SolutionClass out;
  const ProductCheck check = product_equations_check(c, mode);
  if (!check.holds) {
    out.witness = check.witness;
    return out;
  }
  const std::size_t n = c.rows();
  auto fill_params = [&](const DenseMatrix& base) {
    for (std::size_t i = 0; i < n; ++i) out.a_col.push_back(base(i, 0));
    for (std::size_t j = 0; j < n; ++j) out.a_row.push_back(base(0, j));
  };
  if (all_2x2_minors_vanish(c)) {
    out.kind = SolutionClass::Kind::RankOneFamily;
    fill_params(c);
    return out;
  }
  if (n == 4 && mode != EquationMode::Full) {
    for (int eps_u : {1, -1}) {
      for (int eps_v : {1, -1}) {
        const DenseMatrix untwisted = hadamard(c, sign_pattern::matrix(c.field(), eps_u, eps_v, mode));
        if (all_2x2_minors_vanish(untwisted)) {
          out.kind = SolutionClass::Kind::N4SignFamily;
          out.eps_u = eps_u;
          out.eps_v = eps_v;
          fill_params(untwisted);
          return out;
        }
      }
    }
  }
  throw Error(ErrorCode::UnclassifiedSolution, "solution of the " + std::string(to_string(mode)) +
                                                   " system fits no known family at n=" + std::to_string(n));
}

}  // namespace gdet
