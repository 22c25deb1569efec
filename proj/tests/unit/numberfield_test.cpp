#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heightlab/arith.hpp"
#include "heightlab/heights.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace heightlab;
using testing_support::prime_place;

TEST(Places, RationalPrimeIsOnePlace) {
  const auto ps = places_above(Field(), 7);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].ramification(), 1);
  EXPECT_EQ(ps[0].residue_degree(), 1);
  EXPECT_EQ(ps[0].weight(), 1);
}

TEST(Places, FiveSplitsInGaussianField) {
  const auto ps = places_above(Field::quadratic(-1), 5);
  ASSERT_EQ(ps.size(), 2u);
  for (const auto& v : ps) {
    EXPECT_EQ(v.ramification(), 1);
    EXPECT_EQ(v.residue_degree(), 1);
    EXPECT_EQ(v.weight(), mpq_class(1, 2));
  }
  // 2+i is a unit at exactly one of the two places.
  const Scalar g(2, 1, -1);
  EXPECT_NE(valuation(g, ps[0]), valuation(g, ps[1]));
  EXPECT_EQ(valuation(g, ps[0]) + valuation(g, ps[1]), 1);
}

TEST(Places, TwoRamifiesInGaussianField) {
  const auto ps = places_above(Field::quadratic(-1), 2);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].ramification(), 2);
  EXPECT_EQ(ps[0].residue_degree(), 1);
  EXPECT_EQ(ps[0].weight(), 1);
}

TEST(Places, InertPrime) {
  const auto ps = places_above(Field::quadratic(-1), 3);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].residue_degree(), 2);
  EXPECT_EQ(ps[0].weight(), 1);
}

TEST(Places, Archimedean) {
  auto q = archimedean_places(Field());
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].weight(), 1);
  auto r = archimedean_places(Field::quadratic(2));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].weight(), mpq_class(1, 2));
  EXPECT_EQ(r[1].weight(), mpq_class(1, 2));
  auto c = archimedean_places(Field::quadratic(-5));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].weight(), 1);
}

TEST(Places, LocalDegreesSumToFieldDegree) {
  for (long m : {-1L, -5L, 2L, 3L, 5L, -3L, 7L}) {
    const Field f = Field::quadratic(m);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      int total = 0;
      for (const auto& v : places_above(f, p)) total += v.local_degree();
      EXPECT_EQ(total, 2) << f.name() << " p=" << p;
    }
  }
}

TEST(AbsValue, PrimeHasInverseAbsoluteValue) {
  const auto m = abs_value(Scalar(7), prime_place(7));
  ASSERT_TRUE(m.is_exact());
  EXPECT_EQ(m.prime(), 7);
  EXPECT_EQ(m.exponent(), -1);
}

TEST(AbsValue, Zero) {
  EXPECT_TRUE(abs_value(Scalar(0), prime_place(3)).is_zero());
  EXPECT_TRUE(abs_value(Scalar(0), testing_support::real_place()).is_zero());
}

TEST(AbsValue, OnePlusIAboveTwo) {
  const Field f = Field::quadratic(-1);
  const auto m = abs_value(Scalar(1, 1, -1), prime_place(2, f));
  EXPECT_EQ(m.prime(), 2);
  EXPECT_EQ(m.exponent(), mpq_class(-1, 2));
}

TEST(AbsValue, RationalValuationMatchesOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-5000, 5000);
  for (int i = 0; i < 300; ++i) {
    long a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    const mpq_class q(a, b < 0 ? -b : b);
    mpq_class c = q;
    c.canonicalize();
    for (long p : {2L, 3L, 5L, 7L, 97L}) {
      EXPECT_EQ(valuation(Scalar(c), prime_place(p)), oracle::vp(c, p));
    }
  }
}

TEST(ProductFormula, Six) {
  const HeightValue h = product_formula_check(Scalar(6));
  EXPECT_EQ(h.finite().exponent_of(2), -1);
  EXPECT_EQ(h.finite().exponent_of(3), -1);
  EXPECT_NEAR(h.arch(), 6.0, 1e-12);
  EXPECT_NEAR(h.log(), 0.0, 1e-15);
}

TEST(ProductFormula, One) {
  const HeightValue h = product_formula_check(Scalar(1));
  EXPECT_TRUE(h.finite().is_one());
  EXPECT_EQ(h.log_arch(), 0.0);
}

TEST(ProductFormula, OnePlusI) {
  const HeightValue h = product_formula_check(Scalar(1, 1, -1));
  EXPECT_EQ(h.finite().exponent_of(2), mpq_class(-1, 2));
  EXPECT_NEAR(h.arch(), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(h.log(), 0.0, 1e-15);
}

TEST(ProductFormula, RandomQuadraticElements) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-60, 60);
  for (long m : {-1L, 2L, -5L, 3L}) {
    for (int i = 0; i < 40; ++i) {
      mpq_class a(d(rng), 1 + (d(rng) & 15)), b(d(rng), 1 + (d(rng) & 7));
      a.canonicalize();
      b.canonicalize();
      const Scalar x(a, b, m);
      if (x.is_zero()) continue;
      EXPECT_NEAR(product_formula_check(x).log(), 0.0, 1e-12) << x.str() << " m=" << m;
    }
  }
}

TEST(Scalar, FieldOperations) {
  const Scalar x(mpq_class(1, 2), mpq_class(3), 2);
  const Scalar y = x * x.inverse();
  EXPECT_EQ(y, Scalar(1));
  EXPECT_EQ((x * x.conjugate()).b(), 0);
  EXPECT_EQ((x * x.conjugate()).a(), x.norm());
}

TEST(Arith, SqrtModPrimePower) {
  for (long p : {7L, 17L, 23L}) {
    const mpz_class r = arith::sqrt_mod_prime_power(2, p, 6);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), 6);
    EXPECT_EQ(mpz_class((r * r - 2) % pk), 0);
  }
}
