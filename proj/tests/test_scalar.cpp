#include <gtest/gtest.h>

#include "gdet/permutation.hpp"
#include "gdet/rng.hpp"
#include "gdet/scalar.hpp"

using namespace gdet;

TEST(Field, RejectsCharacteristicTwoAndComposites) {
  EXPECT_THROW(Field::prime(2), Error);
  EXPECT_THROW(Field::prime(9), Error);
  EXPECT_THROW(Field::prime(1), Error);
  EXPECT_NO_THROW(Field::prime(3));
  EXPECT_EQ(Field::prime(10007).modulus(), 10007u);
  EXPECT_TRUE(Field::rationals().is_rational());
}

TEST(Scalar, RationalParsingIsCanonical) {
  const Field q = Field::rationals();
  EXPECT_EQ(Scalar::parse(q, "4/6").to_string(), "2/3");
  EXPECT_EQ(Scalar::parse(q, "-3").to_string(), "-3");
  EXPECT_EQ(Scalar::parse(q, "6/-4").to_string(), "-3/2");
  EXPECT_THROW(Scalar::parse(q, "1/0"), Error);
  EXPECT_THROW(Scalar::parse(q, "abc"), Error);
  EXPECT_THROW(Scalar::parse(q, ""), Error);
}

TEST(Scalar, PrimeFieldParsingReduces) {
  const Field f = Field::prime(7);
  EXPECT_EQ(Scalar::parse(f, "-1").to_string(), "6");
  EXPECT_EQ(Scalar::parse(f, "1/2").to_string(), "4");
  EXPECT_EQ(Scalar::parse(f, "15").to_string(), "1");
  EXPECT_THROW(Scalar::parse(f, "1/7"), Error);
}

TEST(Scalar, MixedFieldArithmeticThrows) {
  const Scalar a(Field::rationals(), 1);
  const Scalar b(Field::prime(5), 1);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
  }
}

TEST(Scalar, FieldAxiomsOnRandomElements) {
  for (Field f : {Field::rationals(), Field::prime(10007), Field::prime(3)}) {
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
      const Scalar a = rng.nonzero_scalar(f), b = rng.scalar(f), c = rng.scalar(f);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a / a), Scalar::one(f));
      EXPECT_EQ(a * a.inverse(), Scalar::one(f));
      EXPECT_EQ(b - b, Scalar::zero(f));
      EXPECT_EQ(-(-b), b);
      EXPECT_EQ(a.pow(3), a * a * a);
    }
  }
}

TEST(Scalar, DivisionByZeroThrows) {
  const Field f = Field::prime(11);
  EXPECT_THROW(Scalar::one(f) / Scalar::zero(f), Error);
  EXPECT_THROW(Scalar::zero(Field::rationals()).inverse(), Error);
}

TEST(Permutation, IncrementalParityMatchesInversionCount) {
  for (std::size_t n = 0; n <= 6; ++n) {
    std::size_t count = 0, even = 0;
    std::vector<std::size_t> prev;
    for_each_permutation(n, [&](const std::vector<std::size_t>& w, Parity parity) {
      EXPECT_EQ(parity, inversion_parity(w));
      if (!prev.empty()) EXPECT_TRUE(prev < w);
      prev = w;
      ++count;
      even += parity == Parity::Even;
    });
    EXPECT_EQ(count, factorial(n));
    if (n >= 2) EXPECT_EQ(even, factorial(n) / 2);
  }
}

TEST(Permutation, GroupOperations) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto a = rng.permutation(6), b = rng.permutation(6);
    EXPECT_EQ(a * a.inverse(), Permutation::identity(6));
    EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ((a * b)(i), a(b(i)));
  }
  EXPECT_EQ(Permutation::transposition(4, 0, 1).sign(), -1);
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), Error);
  EXPECT_THROW(Permutation::from_one_based({0, 1}), Error);
}

TEST(Rng, DeterministicPerSeed) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.below(1000), b.below(1000));
}
