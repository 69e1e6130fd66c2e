#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gdet/error.hpp"
#include "gdet/exact_algebra.hpp"
#include "gdet/mat_operator.hpp"
#include "gdet/matrix.hpp"
#include "gdet/permutation.hpp"
#include "gdet/rng.hpp"
#include "gdet/sign_patterns.hpp"
#include "gdet/stab_engine.hpp"
#include "gdet/sym_poly.hpp"

namespace gdet {

/// Outcome of one machine check. A report passes when it examined at least
/// one case and found no violations.
struct LabReport {
  std::string lemma;
  std::string space;
  std::uint64_t checked = 0;
  std::uint64_t hypothesis_hits = 0;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  std::int64_t ms = 0;

  bool passed() const { return checked > 0 && violations.empty(); }
};

namespace detail {

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string matrix_text(const DenseMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

constexpr std::size_t kMaxListedViolations = 20;

inline void record(LabReport& report, std::string violation) {
  if (report.violations.size() < kMaxListedViolations) report.violations.push_back(std::move(violation));
}

}  // namespace detail

/// Parameters of the n = 4 sign-twisted solution family
/// C = S(eps_u, eps_v) * (a_{i1} a_{1j} / a_{11}), subject to
/// (a11 a12 a13 a14)(a11 a21 a31 a41) = a11^4.
struct N4SignFamily {
  int eps_u = 1;
  int eps_v = 1;
  EquationMode mode = EquationMode::Even;
  Scalar a11;
  std::array<Scalar, 3> a_row;  // a12, a13, a14
  std::array<Scalar, 3> a_col;  // a21, a31, a41

  static N4SignFamily ones(Field field, int eps_u, int eps_v, EquationMode mode) {
    const Scalar one = Scalar::one(field);
    return {eps_u, eps_v, mode, one, {one, one, one}, {one, one, one}};
  }

  Field field() const { return a11.field(); }

  void validate() const {
    if (mode == EquationMode::Full) throw Error(ErrorCode::ConstraintViolated, "sign families are even or odd");
    if ((eps_u != 1 && eps_u != -1) || (eps_v != 1 && eps_v != -1)) {
      throw Error(ErrorCode::ConstraintViolated, "signs must be +-1");
    }
    Scalar lhs = a11 * a11;
    for (std::size_t k = 0; k < 3; ++k) {
      if (a_row[k].is_zero() || a_col[k].is_zero()) throw Error(ErrorCode::ConstraintViolated, "zero parameter");
      lhs *= a_row[k] * a_col[k];
    }
    if (a11.is_zero()) throw Error(ErrorCode::ConstraintViolated, "a11 is zero");
    if (!(lhs == a11.pow(4))) throw Error(ErrorCode::ConstraintViolated, "parameter product differs from a11^4");
  }

  /// c_22 and c_23 of the Even-mode matrix.
  Scalar u() const { return Scalar(field(), eps_u) * a_col[0] * a_row[0] / a11; }
  Scalar v() const { return Scalar(field(), eps_v) * a_col[0] * a_row[1] / a11; }
};

/// (a_{i1} a_{1j} / a_{11}) from the first column and first row (which share a_{11}).
inline DenseMatrix rank_one_family_matrix(const std::vector<Scalar>& a_col, const std::vector<Scalar>& a_row) {
  if (a_col.empty() || a_row.empty() || !(a_col.front() == a_row.front())) {
    throw Error(ErrorCode::ConstraintViolated, "first row and column must share a11");
  }
  const Scalar inv = a_col.front().inverse();
  DenseMatrix c(a_col.front().field(), a_col.size(), a_row.size());
  for (std::size_t i = 0; i < a_col.size(); ++i) {
    for (std::size_t j = 0; j < a_row.size(); ++j) c(i, j) = a_col[i] * a_row[j] * inv;
  }
  return c;
}

inline DenseMatrix n4_sign_family(const N4SignFamily& fam) {
  fam.validate();
  const std::vector<Scalar> col{fam.a11, fam.a_col[0], fam.a_col[1], fam.a_col[2]};
  const std::vector<Scalar> row{fam.a11, fam.a_row[0], fam.a_row[1], fam.a_row[2]};
  return hadamard(sign_pattern::matrix(fam.field(), fam.eps_u, fam.eps_v, fam.mode), rank_one_family_matrix(col, row));
}

/// Bit k (row-major, k = 4i + j) set means c_ij = -1.
inline std::uint32_t encode_sign_matrix(const DenseMatrix& c) {
  std::uint32_t code = 0;
  for (std::size_t k = 0; k < 16; ++k) {
    const Scalar& e = c.entries()[k];
    if (e == -Scalar::one(e.field())) {
      code |= std::uint32_t{1} << k;
    } else if (!e.is_one()) {
      throw Error(ErrorCode::InvalidArgument, "not a +-1 matrix");
    }
  }
  return code;
}

inline DenseMatrix decode_sign_matrix(Field field, std::uint32_t code) {
  DenseMatrix c(field, 4, 4);
  for (std::size_t k = 0; k < 16; ++k) c(k / 4, k % 4) = Scalar(field, ((code >> k) & 1) ? -1 : 1);
  return c;
}

struct N4Enumeration {
  std::vector<std::uint32_t> solutions;  // sorted encodings found by exhaustive search
  std::vector<std::uint32_t> family;     // sorted encodings generated from the parametric family
  LabReport report;
};

/// Exhaustive search of {+-1}^{4x4} for solutions of the mode's product
/// equations, compared against the parametric family generated over +-1
/// parameters (sign-twisted for even/odd, rank one for full).
inline N4Enumeration enumerate_n4_sign_solutions(EquationMode mode, Field field = Field::rationals()) {
  detail::Stopwatch clock;
  N4Enumeration out;
  out.report.lemma = std::string("n4-signs/") + to_string(mode);
  out.report.space = "all 2^16 matrices in {+1,-1}^(4x4), " + field.to_string();

  for (std::uint32_t code = 0; code < (1u << 16); ++code) {
    if (product_equations_check(decode_sign_matrix(field, code), mode).holds) out.solutions.push_back(code);
    ++out.report.checked;
  }

  std::set<std::uint32_t> generated;
  const Scalar one = Scalar::one(field);
  const Scalar minus = -one;
  for (std::uint32_t bits = 0; bits < (1u << 7); ++bits) {
    std::array<Scalar, 7> a;
    for (std::size_t k = 0; k < 7; ++k) a[k] = ((bits >> k) & 1) ? minus : one;
    const std::vector<Scalar> col{a[0], a[4], a[5], a[6]};
    const std::vector<Scalar> row{a[0], a[1], a[2], a[3]};
    Scalar lhs = one;
    for (std::size_t k = 0; k < 4; ++k) lhs *= col[k] * row[k];
    if (!(lhs == a[0].pow(4))) continue;
    if (mode == EquationMode::Full) {
      generated.insert(encode_sign_matrix(rank_one_family_matrix(col, row)));
      continue;
    }
    for (int eps_u : {1, -1}) {
      for (int eps_v : {1, -1}) {
        N4SignFamily fam{eps_u, eps_v, mode, a[0], {a[1], a[2], a[3]}, {a[4], a[5], a[6]}};
        generated.insert(encode_sign_matrix(n4_sign_family(fam)));
      }
    }
  }
  out.family.assign(generated.begin(), generated.end());
  out.report.hypothesis_hits = out.solutions.size();

  std::vector<std::uint32_t> missing, extra;
  std::set_difference(out.family.begin(), out.family.end(), out.solutions.begin(), out.solutions.end(),
                      std::back_inserter(missing));
  std::set_difference(out.solutions.begin(), out.solutions.end(), out.family.begin(), out.family.end(),
                      std::back_inserter(extra));
  for (auto code : missing) detail::record(out.report, "family member is not a solution: code " + std::to_string(code));
  for (auto code : extra) detail::record(out.report, "solution outside the family: code " + std::to_string(code));

  if (mode == EquationMode::Full) {
    for (auto code : out.solutions) {
      const auto cls = classify_solution(decode_sign_matrix(field, code), mode);
      if (cls.kind != SolutionClass::Kind::RankOneFamily) {
        detail::record(out.report, "full-mode solution not rank one: code " + std::to_string(code));
      }
    }
  }
  out.report.notes.push_back("enumerated solutions: " + std::to_string(out.solutions.size()));
  out.report.notes.push_back("family members: " + std::to_string(out.family.size()));
  out.report.ms = clock.ms();
  return out;
}

struct Rank1LemmaOptions {
  bool exhaustive = true;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t exhaustive_cap = 10'000'000;
};

/// Checks: P_2(A) = 0 and Pbar_2(A) = 0 imply A is zero, a row matrix or a
/// column matrix. hypothesis_hits counts nonzero A meeting the hypothesis.
/// Sampled mode mixes uniform draws with sparse ones so the hypothesis is
/// actually exercised.
inline LabReport verify_rank1_lemma(std::uint64_t p, std::size_t n, const Rank1LemmaOptions& opts = {}) {
  detail::Stopwatch clock;
  const Field field = Field::prime(p);
  LabReport report;
  report.lemma = "rank1";
  const std::size_t cells = n * n;

  const GenDetParams even = GenDetParams::even(field);
  const GenDetParams odd = GenDetParams::odd(field);
  auto check = [&](const DenseMatrix& a) {
    ++report.checked;
    if (!gen_minor_matrix(even, a, 2).is_zero()) return;
    if (!gen_minor_matrix(odd, a, 2).is_zero()) return;
    if (!a.is_zero()) ++report.hypothesis_hits;
    if (is_row_or_column(a).kind == RowColumnClass::Kind::Neither) detail::record(report, detail::matrix_text(a));
  };

  if (opts.exhaustive) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < cells; ++k) {
      if (total > opts.exhaustive_cap / p) {
        throw Error(ErrorCode::SizeCapExceeded, "exhaustive space exceeds " + std::to_string(opts.exhaustive_cap));
      }
      total *= p;
    }
    report.space = "all " + std::to_string(total) + " matrices " + std::to_string(n) + "x" + std::to_string(n) +
                   " over GF(" + std::to_string(p) + "), row-major base-p order";
    DenseMatrix a(field, n, n);
    std::vector<std::uint64_t> digits(cells, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      for (std::size_t k = 0; k < cells; ++k) a(k / n, k % n) = Scalar(field, static_cast<long long>(digits[k]));
      check(a);
      for (std::size_t k = 0; k < cells; ++k) {
        if (++digits[k] < p) break;
        digits[k] = 0;
      }
    }
  } else {
    report.space = std::to_string(opts.samples) + " sampled " + std::to_string(n) + "x" + std::to_string(n) +
                   " matrices over GF(" + std::to_string(p) + "), seed " + std::to_string(opts.seed) +
                   ", half uniform, half sparse";
    Rng rng(opts.seed);
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
      DenseMatrix a(field, n, n);
      const bool sparse = rng.coin();
      for (std::size_t k = 0; k < cells; ++k) {
        if (sparse && rng.below(2 * n) != 0) continue;
        a(k / n, k % n) = rng.scalar(field);
      }
      check(a);
    }
  }
  report.notes.push_back("evidence over a finite field, not a characteristic-0 proof");
  report.ms = clock.ms();
  return report;
}

/// For every ordered (k1, k2), (l1, l2) with distinct entries and every even
/// sigma sending (k1, k2) to (l1, l2) [resp. to (l2, l1)], differentiating
/// det^(alpha,beta)_n along the remaining x_{i, sigma(i)} must give the
/// generalized 2x2 minor [resp. the det^(beta,alpha) minor].
inline LabReport verify_derivative_identity(std::size_t n, const GenDetParams& params) {
  if (n != 4 && n != 5) throw Error(ErrorCode::InvalidArgument, "derivative sweep runs at n = 4 or 5");
  detail::Stopwatch clock;
  LabReport report;
  report.lemma = "derivative";
  report.space = "all ordered (k1,k2,l1,l2) with k1!=k2, l1!=l2 at n=" + std::to_string(n) +
                 ", every even completion sigma, params (" + params.alpha.to_string() + "," +
                 params.beta.to_string() + ")";
  const SparseMVPoly f = build_gen_det_poly(n, params);
  std::vector<Permutation> even_perms;
  for_each_permutation(n, [&](const std::vector<std::size_t>& w, Parity parity) {
    if (parity == Parity::Even) even_perms.push_back(Permutation::from_images(w));
  });
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      if (k1 == k2) continue;
      for (std::size_t l1 = 0; l1 < n; ++l1) {
        for (std::size_t l2 = 0; l2 < n; ++l2) {
          if (l1 == l2) continue;
          ++report.hypothesis_hits;
          const SparseMVPoly direct = gen_minor_2x2_poly(n, params, k1, k2, l1, l2);
          const SparseMVPoly swapped = gen_minor_2x2_poly(n, params.swapped(), k1, k2, l1, l2);
          for (const auto& sigma : even_perms) {
            const bool hits_direct = sigma(k1) == l1 && sigma(k2) == l2;
            const bool hits_swapped = sigma(k1) == l2 && sigma(k2) == l1;
            if (!hits_direct && !hits_swapped) continue;
            ++report.checked;
            const SparseMVPoly d = derivative_outside(f, k1, k2, sigma);
            if (!(d == (hits_direct ? direct : swapped))) {
              detail::record(report, "k=(" + std::to_string(k1 + 1) + "," + std::to_string(k2 + 1) + ") l=(" +
                                         std::to_string(l1 + 1) + "," + std::to_string(l2 + 1) + ") got " +
                                         to_string(d));
            }
          }
        }
      }
    }
  }
  report.notes.push_back("hypothesis_hits counts index tuples; checked counts (tuple, sigma) derivatives");
  report.ms = clock.ms();
  return report;
}

/// X -> C * X for C from an n = 4 sign family: a symbolic member of the
/// even (or odd) determinant's stabilizer, and - when the signs are not both
/// +1 - a non-member for generic alpha != +-beta with alpha beta != 0.
inline LabReport n4_exotic_stabilizer_demo(const N4SignFamily& fam) {
  detail::Stopwatch clock;
  const DenseMatrix c = n4_sign_family(fam);
  const Field field = fam.field();
  const LinearOperator t = LinearOperator::hadamard_operator(c);
  LabReport report;
  report.lemma = "n4-exotic";
  report.space = std::string("X -> C*X, eps=(") + std::to_string(fam.eps_u) + "," + std::to_string(fam.eps_v) +
                 "), mode " + to_string(fam.mode) + ", " + field.to_string();

  auto verdict = [&](long long a, long long b) {
    ++report.checked;
    const bool member = membership_symbolic(t, GenDetParams::make(field, a, b)).member;
    report.notes.push_back("params (" + std::to_string(a) + "," + std::to_string(b) + "): " +
                           (member ? "member" : "non-member"));
    return member;
  };

  const bool even_member = verdict(1, 0);
  const bool odd_member = verdict(0, 1);
  const bool base_member = fam.mode == EquationMode::Even ? even_member : odd_member;
  if (!base_member) report.violations.push_back(std::string("not a member for the ") + to_string(fam.mode) + " determinant");

  const bool trivial_signs = fam.eps_u == 1 && fam.eps_v == 1;
  for (auto [a, b] : {std::pair{1LL, 2LL}, std::pair{2LL, 5LL}, std::pair{3LL, -1LL}}) {
    const bool member = verdict(a, b);
    if (member != trivial_signs) {
      report.violations.push_back("params (" + std::to_string(a) + "," + std::to_string(b) + "): expected " +
                                  (trivial_signs ? "member" : "non-member"));
    }
  }
  report.hypothesis_hits = trivial_signs ? 0 : 1;
  report.ms = clock.ms();
  return report;
}

}  // namespace gdet
