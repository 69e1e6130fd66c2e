#include <gtest/gtest.h>

#include "gdet/mat_operator.hpp"
#include "gdet/rng.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace gdet;

namespace {

const Field Q = Field::rationals();
const Field P = Field::prime(10007);

MonomialSpec random_spec(Rng& rng, Field f, std::size_t n) {
  MonomialSpec s;
  s.transpose = rng.coin();
  s.sigma = rng.permutation(n);
  s.tau = rng.permutation(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.l.push_back(rng.nonzero_scalar(f));
    s.r.push_back(rng.nonzero_scalar(f));
  }
  return s;
}

DenseMatrix oracle_apply(const MonomialSpec& s, const DenseMatrix& x) {
  return oracle::apply_monomial(s.transpose, s.sigma.images(), s.tau.images(), s.l, s.r, x);
}

}  // namespace

TEST(LinearOperator, ConstructionValidates) {
  EXPECT_EQ(code_of([] { LinearOperator(2, DenseMatrix::identity(Q, 3)); }), ErrorCode::SizeMismatch);
  EXPECT_EQ(code_of([] { LinearOperator(2, DenseMatrix(Q, 4, 4)); }), ErrorCode::NotInvertible);
  EXPECT_NO_THROW(LinearOperator(2, DenseMatrix::identity(Q, 4)));
}

TEST(LinearOperator, IdentityAndInverseRoundTrip) {
  Rng rng(3);
  const auto a = oracle::random_matrix(rng, Q, 3, 3);
  EXPECT_EQ(LinearOperator::identity(Q, 3).apply(a), a);
  EXPECT_EQ(LinearOperator::identity(Q, 3).inverse(), LinearOperator::identity(Q, 3));
  for (Field f : {Q, P}) {
    for (int k = 0; k < 5; ++k) {
      LinearOperator t;
      while (true) {
        try {
          t = LinearOperator(3, oracle::random_matrix(rng, f, 9, 9));
          break;
        } catch (const Error&) {
        }
      }
      const auto x = oracle::random_matrix(rng, f, 3, 3);
      EXPECT_EQ(t.apply(t.inverse().apply(x)), x);
      EXPECT_EQ(compose(t, t.inverse()), LinearOperator::identity(f, 3));
      EXPECT_EQ(compose(t, LinearOperator::identity(f, 3)), t);
    }
  }
}

TEST(LinearOperator, ApplyErrors) {
  const auto t = LinearOperator::identity(Q, 3);
  EXPECT_EQ(code_of([&] { t.apply(DenseMatrix::identity(Q, 2)); }), ErrorCode::SizeMismatch);
  EXPECT_EQ(code_of([&] { t.apply(DenseMatrix::identity(P, 3)); }), ErrorCode::FieldMismatch);
  EXPECT_EQ(code_of([&] { compose(t, LinearOperator::identity(Q, 2)); }), ErrorCode::SizeMismatch);
}

TEST(LinearOperator, ComposeAppliesRightOperandFirst) {
  Rng rng(8);
  const auto t1 = from_monomial(random_spec(rng, Q, 4));
  const auto t2 = LinearOperator::from_linear_map(Q, 4, [](const DenseMatrix& x) { return x + x.transpose().scaled(Scalar(Q, 2)); });
  const auto x = oracle::random_matrix(rng, Q, 4, 4);
  EXPECT_EQ(compose(t1, t2).apply(x), t1.apply(t2.apply(x)));
}

TEST(FromMonomial, TrivialSpecs) {
  EXPECT_EQ(from_monomial(MonomialSpec::identity(Q, 4)), LinearOperator::identity(Q, 4));
  auto spec = MonomialSpec::identity(Q, 3);
  spec.transpose = true;
  const auto t = from_monomial(spec);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(t.apply(DenseMatrix::unit(Q, 3, i, j)), DenseMatrix::unit(Q, 3, j, i));
  }
}

TEST(FromMonomial, RowPermutationMovesUnitToSigmaRow) {
  auto spec = MonomialSpec::identity(Q, 3);
  spec.sigma = Permutation::transposition(3, 0, 1);
  EXPECT_EQ(from_monomial(spec).apply(DenseMatrix::unit(Q, 3, 0, 0)), DenseMatrix::unit(Q, 3, 1, 0));
}

TEST(FromMonomial, MatchesExplicitMatrixProducts) {
  Rng rng(11);
  for (Field f : {Q, P}) {
    for (std::size_t n = 2; n <= 5; ++n) {
      for (int k = 0; k < 10; ++k) {
        const auto spec = random_spec(rng, f, n);
        const auto t = from_monomial(spec);
        const auto x = oracle::random_matrix(rng, f, n, n);
        EXPECT_EQ(t.apply(x), oracle_apply(spec, x));
      }
    }
  }
}

TEST(FromMonomial, RejectsZeroDiagonal) {
  auto spec = MonomialSpec::identity(Q, 3);
  spec.r[2] = Scalar::zero(Q);
  EXPECT_EQ(code_of([&] { from_monomial(spec); }), ErrorCode::ZeroDiagonal);
  spec = MonomialSpec::identity(Q, 3);
  spec.l.pop_back();
  EXPECT_EQ(code_of([&] { from_monomial(spec); }), ErrorCode::SizeMismatch);
}

TEST(InverseSpec, ComposesToIdentity) {
  Rng rng(12);
  for (Field f : {Q, P}) {
    for (std::size_t n = 2; n <= 5; ++n) {
      for (int k = 0; k < 10; ++k) {
        const auto spec = random_spec(rng, f, n);
        const auto t = from_monomial(spec);
        const auto u = from_monomial(inverse_spec(spec));
        EXPECT_EQ(compose(t, u), LinearOperator::identity(f, n));
        EXPECT_EQ(compose(u, t), LinearOperator::identity(f, n));
        EXPECT_EQ(t.inverse(), u);
      }
    }
  }
}

TEST(UnitImages, IdentityGrid) {
  const auto g = unit_images(LinearOperator::identity(Q, 3));
  ASSERT_TRUE(g.monomial);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(g.mu_at(i, j), i);
      EXPECT_EQ(g.lambda_at(i, j), j);
      EXPECT_TRUE(g.c_at(i, j).is_one());
      EXPECT_EQ(g.image(i, j), DenseMatrix::unit(Q, 3, i, j));
    }
  }
}

TEST(UnitImages, MonomialSpecsGiveStructuredGrid) {
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 5;
    const auto spec = random_spec(rng, P, n);
    const auto g = unit_images(from_monomial(spec));
    ASSERT_TRUE(g.monomial);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(g.image(i, j).nonzero_count(), 1u);
        // The image of E_ij computed independently by explicit products.
        const auto f_ij = oracle_apply(spec, DenseMatrix::unit(P, n, i, j));
        const std::size_t mu = g.mu_at(i, j), lambda = g.lambda_at(i, j);
        EXPECT_EQ(f_ij(mu, lambda), g.c_at(i, j));
        EXPECT_EQ(g.c_at(i, j), spec.l[mu] * spec.r[lambda]);
        if (!spec.transpose) {
          EXPECT_EQ(mu, g.mu_at(i, 0));
          EXPECT_EQ(lambda, g.lambda_at(0, j));
        } else {
          EXPECT_EQ(mu, g.mu_at(0, j));
          EXPECT_EQ(lambda, g.lambda_at(i, 0));
        }
      }
    }
  }
}

TEST(UnitImages, ComposedMonomialsStayMonomial) {
  Rng rng(14);
  for (int k = 0; k < 10; ++k) {
    const auto t = compose(from_monomial(random_spec(rng, Q, 4)), from_monomial(random_spec(rng, Q, 4)));
    EXPECT_TRUE(unit_images(t).monomial);
  }
}

TEST(UnitImages, TracePerturbationHasWitnessAtFirstUnit) {
  const std::size_t n = 3;
  const auto t = LinearOperator::from_linear_map(Q, n, [&](const DenseMatrix& x) {
    Scalar tr = Scalar::zero(Q);
    for (std::size_t i = 0; i < n; ++i) tr += x(i, i);
    return x + DenseMatrix::identity(Q, n).scaled(tr);
  });
  const auto g = unit_images(t);
  EXPECT_FALSE(g.monomial);
  ASSERT_TRUE(g.witness.has_value());
  EXPECT_EQ(g.witness->i, 0u);
  EXPECT_EQ(g.witness->j, 0u);
  EXPECT_EQ(g.witness->nonzeros, n);
  EXPECT_EQ(g.image(0, 0), DenseMatrix::unit(Q, n, 0, 0) + DenseMatrix::identity(Q, n));
}

TEST(Hadamard, ScalesEntrywise) {
  const auto c = DenseMatrix::from_rows(Q, {{1, 2}, {-3, 5}});
  const auto t = LinearOperator::hadamard_operator(c);
  const auto x = DenseMatrix::from_rows(Q, {{7, 1}, {1, 2}});
  EXPECT_EQ(t.apply(x), hadamard(c, x));
  EXPECT_EQ(code_of([] { LinearOperator::hadamard_operator(DenseMatrix::from_rows(Q, {{1, 0}, {1, 1}})); }),
            ErrorCode::NotInvertible);
}
