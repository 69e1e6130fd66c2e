#include <gtest/gtest.h>

#include "gdet/sym_poly.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace gdet;

namespace {

const Field Q = Field::rationals();
const Field P = Field::prime(10007);

Monomial mono(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> cells) {
  Monomial m;
  for (auto [i, j] : cells) m = times_var(m, VarId::at(n, i, j));
  return m;
}

LinearOperator random_operator(Rng& rng, Field f, std::size_t n) {
  while (true) {
    try {
      return LinearOperator(n, oracle::random_matrix(rng, f, n * n, n * n));
    } catch (const Error&) {
    }
  }
}

LinearOperator left_permutation(Field f, const Permutation& s) {
  MonomialSpec spec = MonomialSpec::identity(f, s.size());
  spec.sigma = s;
  return from_monomial(spec);
}

}  // namespace

TEST(BuildGenDetPoly, TwoByTwo) {
  const auto p = GenDetParams::make(Q, 3, 7);
  const auto f = build_gen_det_poly(2, p);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.coefficient(mono(2, {{0, 0}, {1, 1}})), Scalar(Q, 3));
  EXPECT_EQ(f.coefficient(mono(2, {{0, 1}, {1, 0}})), Scalar(Q, 7));
  EXPECT_EQ(to_string(f), "3*x[1,1]*x[2,2] + 7*x[1,2]*x[2,1]");
  EXPECT_EQ(to_string(build_gen_det_poly(2, GenDetParams::permanent(Q))), "x[1,1]*x[2,2] + x[1,2]*x[2,1]");
  EXPECT_EQ(to_string(build_gen_det_poly(2, GenDetParams::determinant(Q))), "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
}

TEST(BuildGenDetPoly, EvenThreeByThree) {
  const auto f = build_gen_det_poly(3, GenDetParams::even(Q));
  EXPECT_EQ(f.size(), 3u);
  for (auto m : {mono(3, {{0, 0}, {1, 1}, {2, 2}}), mono(3, {{0, 1}, {1, 2}, {2, 0}}), mono(3, {{0, 2}, {1, 0}, {2, 1}})}) {
    EXPECT_TRUE(f.coefficient(m).is_one());
  }
}

TEST(BuildGenDetPoly, TermCounts) {
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(build_gen_det_poly(n, GenDetParams::make(Q, 2, 5)).size(), factorial(n));
    if (n >= 2) {
      EXPECT_EQ(build_gen_det_poly(n, GenDetParams::even(Q)).size(), factorial(n) / 2);
      EXPECT_EQ(build_gen_det_poly(n, GenDetParams::odd(Q)).size(), factorial(n) / 2);
    }
  }
  EXPECT_TRUE(build_gen_det_poly(3, GenDetParams::make(Q, 0, 0)).is_zero());
  EXPECT_THROW(build_gen_det_poly(8, GenDetParams::even(Q)), Error);
  EXPECT_THROW(build_gen_det_poly(0, GenDetParams::even(Q)), Error);
}

TEST(BuildGenDetPoly, EvaluationMatchesNumericRoutines) {
  Rng rng(21);
  for (Field f : {Q, P}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto det_poly = build_gen_det_poly(n, GenDetParams::determinant(f));
      const auto perm_poly = build_gen_det_poly(n, GenDetParams::permanent(f));
      const auto even_poly = build_gen_det_poly(n, GenDetParams::even(f));
      const auto odd_poly = build_gen_det_poly(n, GenDetParams::odd(f));
      for (int k = 0; k < 100; ++k) {
        const auto a = oracle::random_matrix(rng, f, n, n);
        EXPECT_EQ(evaluate(det_poly, a), det_exact(a));
        EXPECT_EQ(evaluate(perm_poly, a), permanent(a));
        const auto eo = even_odd_det(a);
        EXPECT_EQ(evaluate(even_poly, a), eo.even);
        EXPECT_EQ(evaluate(odd_poly, a), eo.odd);
      }
    }
  }
}

TEST(Evaluate, EdgeCases) {
  const auto p = GenDetParams::make(Q, 4, 9);
  EXPECT_EQ(evaluate(build_gen_det_poly(4, p), DenseMatrix::identity(Q, 4)), Scalar(Q, 4));
  EXPECT_EQ(evaluate(SparseMVPoly(3, Q), DenseMatrix::identity(Q, 3)), Scalar(Q, 0));
  EXPECT_THROW(evaluate(SparseMVPoly(3, Q), DenseMatrix::identity(Q, 2)), Error);
  EXPECT_THROW(evaluate(SparseMVPoly(2, Q), DenseMatrix::identity(P, 2)), Error);
}

TEST(SubstituteLinear, IdentityLeavesPolynomialUnchanged) {
  const auto f = build_gen_det_poly(4, GenDetParams::make(Q, 2, 3));
  EXPECT_EQ(substitute_linear(f, LinearOperator::identity(Q, 4)), f);
}

TEST(SubstituteLinear, OddRowPermutationNegatesDeterminant) {
  const auto f = build_gen_det_poly(3, GenDetParams::determinant(Q));
  const auto t = left_permutation(Q, Permutation::transposition(3, 0, 1));
  EXPECT_EQ(substitute_linear(f, t), f.scaled(Scalar(Q, -1)));
}

TEST(SubstituteLinear, ParityPreservingPermutationsFixGenDet) {
  Rng rng(6);
  const auto f = build_gen_det_poly(4, GenDetParams::make(Q, 2, 7));
  for (int k = 0; k < 10; ++k) {
    MonomialSpec spec = MonomialSpec::identity(Q, 4);
    spec.sigma = rng.permutation(4);
    spec.tau = rng.permutation(4);
    if (spec.parity_sign() != 1) spec.tau = spec.tau * Permutation::transposition(4, 2, 3);
    EXPECT_EQ(substitute_linear(f, from_monomial(spec)), f);
  }
}

TEST(SubstituteLinear, MatchesEvaluationAtTransformedPoint) {
  Rng rng(14);
  const auto f = build_gen_det_poly(3, GenDetParams::make(P, 5, 11));
  const auto t = random_operator(rng, P, 3);
  const auto g = substitute_linear(f, t);
  for (int k = 0; k < 10; ++k) {
    const auto a = oracle::random_matrix(rng, P, 3, 3);
    EXPECT_EQ(evaluate(g, a), evaluate(f, t.apply(a)));
  }
}

TEST(SubstituteLinear, CompositionIsContravariant) {
  Rng rng(15);
  const auto f = build_gen_det_poly(3, GenDetParams::make(P, 2, 9));
  const auto t1 = random_operator(rng, P, 3);
  const auto t2 = random_operator(rng, P, 3);
  EXPECT_EQ(substitute_linear(f, compose(t1, t2)), substitute_linear(substitute_linear(f, t1), t2));
}

TEST(SubstituteLinear, ErrorsAndCap) {
  Rng rng(16);
  const auto f = build_gen_det_poly(3, GenDetParams::permanent(P));
  EXPECT_THROW(substitute_linear(f, LinearOperator::identity(P, 2)), Error);
  ExpansionOptions opts;
  opts.term_cap = 50;
  try {
    substitute_linear(f, random_operator(rng, P, 3), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExpansionCapExceeded);
  }
}

TEST(PartialDerivative, Examples) {
  auto x = [](std::size_t i, std::size_t j) { return SparseMVPoly::variable(2, Q, VarId::at(2, i, j)); };
  EXPECT_EQ(partial_derivative(x(0, 0) * x(1, 1), VarId::at(2, 0, 0)), x(1, 1));
  const auto p = GenDetParams::make(Q, 3, 5);
  EXPECT_EQ(partial_derivative(build_gen_det_poly(2, p), VarId::at(2, 0, 1)), x(1, 0).scaled(p.beta));
  EXPECT_TRUE(partial_derivative(x(0, 0), VarId::at(2, 1, 1)).is_zero());
  const auto sq = x(0, 0) * x(0, 0) * x(1, 0);
  EXPECT_EQ(partial_derivative(sq, VarId::at(2, 0, 0)), (x(0, 0) * x(1, 0)).scaled(Scalar(Q, 2)));
}

TEST(PartialDerivative, MixedPartialsCommute) {
  Rng rng(19);
  for (int k = 0; k < 30; ++k) {
    SparseMVPoly f(3, Q);
    for (int t = 0; t < 8; ++t) {
      Monomial m;
      for (int d = 0; d < 4; ++d) m = times_var(m, VarId{static_cast<std::uint32_t>(rng.below(9))});
      f.add_term(m, rng.scalar(Q));
    }
    const VarId u{static_cast<std::uint32_t>(rng.below(9))}, v{static_cast<std::uint32_t>(rng.below(9))};
    EXPECT_EQ(partial_derivative(partial_derivative(f, u), v), partial_derivative(partial_derivative(f, v), u));
  }
}

TEST(MinorByDerivatives, IdentitySigma) {
  const auto p = GenDetParams::make(Q, 2, 5);
  const auto d = minor_by_derivatives(4, p, 0, 1, 0, 1, Permutation::identity(4));
  EXPECT_EQ(d, gen_minor_2x2_poly(4, p, 0, 1, 0, 1));
  EXPECT_EQ(to_string(d), "2*x[1,1]*x[2,2] + 5*x[1,2]*x[2,1]");
}

TEST(MinorByDerivatives, SwappedTargetsGiveBetaAlphaMinor) {
  const auto p = GenDetParams::make(Q, 2, 5);
  // sigma = (1 2)(3 4): even, sends rows 1, 2 to columns 2, 1.
  const auto sigma = Permutation::from_images({1, 0, 3, 2});
  ASSERT_TRUE(sigma.is_even());
  const auto d = minor_by_derivatives(4, p, 0, 1, 0, 1, sigma);
  EXPECT_EQ(d, gen_minor_2x2_poly(4, p.swapped(), 0, 1, 0, 1));
  EXPECT_EQ(to_string(d), "5*x[1,1]*x[2,2] + 2*x[1,2]*x[2,1]");
}

TEST(MinorByDerivatives, ExhaustiveAtFive) {
  const auto p = GenDetParams::make(P, 3, 8);
  std::size_t checked = 0;
  for_each_permutation(5, [&](const std::vector<std::size_t>& w, Parity parity) {
    if (parity != Parity::Even) return;
    const auto sigma = Permutation::from_images(w);
    for (std::size_t k1 = 0; k1 < 5; ++k1) {
      for (std::size_t k2 = k1 + 1; k2 < 5; ++k2) {
        const auto d = minor_by_derivatives(5, p, k1, k2, sigma(k1), sigma(k2), sigma);
        EXPECT_EQ(d, gen_minor_2x2_poly(5, p, k1, k2, sigma(k1), sigma(k2)));
        ++checked;
      }
    }
  });
  EXPECT_EQ(checked, 60u * 10u);
}

TEST(MinorByDerivatives, Preconditions) {
  const auto p = GenDetParams::make(Q, 2, 5);
  EXPECT_EQ(code_of([&] { minor_by_derivatives(4, p, 0, 1, 0, 1, Permutation::transposition(4, 2, 3)); }),
            ErrorCode::BadPermutation);
  EXPECT_EQ(code_of([&] { minor_by_derivatives(4, p, 0, 1, 2, 3, Permutation::identity(4)); }), ErrorCode::BadPermutation);
  EXPECT_THROW(minor_by_derivatives(3, p, 0, 1, 0, 1, Permutation::identity(3)), Error);
}

TEST(ToString, Formatting) {
  EXPECT_EQ(to_string(SparseMVPoly(2, Q)), "0");
  EXPECT_EQ(to_string(SparseMVPoly::constant(2, Scalar::parse(Q, "-3/4"))), "-3/4");
  auto f = SparseMVPoly::variable(2, Q, VarId::at(2, 1, 0));
  f = f * f;
  f.add_term({}, Scalar(Q, 1));
  EXPECT_EQ(to_string(f), "1 + x[2,1]^2");
  EXPECT_EQ(to_string(build_gen_det_poly(2, GenDetParams::determinant(Field::prime(7)))),
            "x[1,1]*x[2,2] + 6*x[1,2]*x[2,1]");
}
