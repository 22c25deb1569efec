#include <gtest/gtest.h>

#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/linalg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace heightlab;
using testing_support::mat;
using testing_support::vec;

namespace {

Polynomial poly(std::vector<long> c) {
  std::vector<Scalar> s(c.begin(), c.end());
  return Polynomial(Field(), s);
}

// det(xI - T) for 3x3 by cofactor expansion at a rational point.
mpq_class det3(const std::vector<mpq_class>& a) {
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6]);
}

}  // namespace

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly(mat("[[0,2],[1,0]]")).polynomial(), poly({-2, 0, 1}));
  EXPECT_EQ(char_poly(MatrixK::identity(Field(), 3)).polynomial(), poly({-1, 3, -3, 1}));
  EXPECT_EQ(char_poly(mat("[[1,1],[0,1]]")).polynomial(), poly({1, -2, 1}));
}

TEST(CharPoly, MatchesCofactorDeterminant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> e;
    std::vector<mpq_class> q;
    for (int i = 0; i < 9; ++i) {
      mpq_class v(d(rng), 1 + (d(rng) & 3));
      v.canonicalize();
      q.push_back(v);
      e.emplace_back(v);
    }
    const MatrixK m(Field(), 3, e);
    const Polynomial f = char_poly(m).polynomial();
    for (long x : {-3L, 0L, 2L, 7L}) {
      std::vector<mpq_class> a(9);
      for (int i = 0; i < 9; ++i) a[i] = (i % 4 == 0 ? mpq_class(x) : mpq_class(0)) - q[i];
      EXPECT_EQ(f(Scalar(x)), Scalar(det3(a)));
    }
  }
}

TEST(Kernel, Examples) {
  const auto k = kernel(mat("[[1,1],[1,1]]"));
  ASSERT_TRUE(k.has_value());
  EXPECT_TRUE(k->same_as(Subspace(Field(), 2, {vec("[1,-1]")})));
  EXPECT_FALSE(kernel(mat("[[1,2],[3,4]]")).has_value());
  const auto z = kernel(MatrixK::zero(Field(), 3));
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(z->dim(), 3u);
}

TEST(StableKernel, Examples) {
  const auto j = stable_kernel(mat("[[0,1],[0,0]]"));
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(j->dim(), 2u);
  EXPECT_FALSE(stable_kernel(mat("[[2,1],[0,3]]")).has_value());
  const auto d = stable_kernel(mat("[[0,0],[0,2]]"));
  ASSERT_TRUE(d.has_value());
  EXPECT_TRUE(d->same_as(Subspace(Field(), 2, {vec("[1,0]")})));
}

TEST(Plucker, Examples) {
  EXPECT_EQ(plucker(Subspace(Field(), 3, {vec("[1,0,0]"), vec("[0,1,0]")})), vec("[1,0,0]"));
  EXPECT_EQ(plucker(Subspace(Field(), 2, {vec("[3,4]")})), vec("[3,4]"));
  const VectorK p = plucker(Subspace(Field(), 3, {vec("[1,0,1]"), vec("[0,1,1]")}));
  EXPECT_TRUE(p == vec("[1,1,-1]") || p == vec("[-1,-1,1]"));
}

TEST(Plucker, IndependentOfBasis) {
  const Subspace a(Field(), 3, {vec("[1,2,3]"), vec("[0,1,5]")});
  const Subspace b(Field(), 3, {vec("[2,5,11]"), vec("[1/2,3/2,4]")});
  EXPECT_TRUE(a.same_as(b));
}

TEST(Subspace, RejectsDependentRows) {
  EXPECT_THROW(Subspace(Field(), 2, {vec("[1,2]"), vec("[2,4]")}), std::invalid_argument);
}

TEST(PowerStripped, Examples) {
  auto a = power_stripped(MatrixK::diagonal(Field(), {2, 2}), 10);
  EXPECT_EQ(a.matrix, MatrixK::identity(Field(), 2));
  EXPECT_EQ(a.scale, 1024);
  auto b = power_stripped(mat("[[1,1],[0,1]]"), 8);
  EXPECT_EQ(b.matrix, mat("[[1,8],[0,1]]"));
  EXPECT_EQ(b.scale, 1);
  auto c = power_stripped(mat("[[2,0],[0,4]]"), 3);
  EXPECT_EQ(c.matrix, mat("[[1,0],[0,8]]"));
  EXPECT_EQ(c.scale, 8);
}

TEST(PowerStripped, AgreesWithNaiveProduct) {
  const MatrixK t = mat("[[1/2,3],[-2,5/3]]");
  MatrixK p = MatrixK::identity(Field(), 2);
  for (unsigned long k = 1; k <= 13; ++k) {
    p = p * t;
    const auto s = power_stripped(t, k);
    EXPECT_EQ(Scalar(s.scale) * s.matrix, p) << k;
  }
}

TEST(PowerStripped, BudgetExceeded) {
  EXPECT_THROW(power_stripped(mat("[[3,1],[1,2]]"), 4096, 256), ResourceError);
}

TEST(Inverse, QuadraticField) {
  const Field f = Field::quadratic(2);
  const MatrixK t = mat("[[1,r],[2,3]]", f);
  EXPECT_EQ(t * inverse(t), MatrixK::identity(f, 2));
  EXPECT_THROW(inverse(mat("[[1,2],[2,4]]")), std::domain_error);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(mat("[[1,1],[1,1]]")), 1u);
  EXPECT_EQ(rank(mat("[[2,0,0],[0,3,0],[0,0,0]]")), 2u);
  EXPECT_EQ(rank(MatrixK::zero(Field(), 2)), 0u);
}

TEST(StripContent, RationalAndQuadratic) {
  auto [v, c] = strip_content({Scalar(mpq_class(6, 5)), Scalar(mpq_class(-9, 10))});
  EXPECT_EQ(c, mpq_class(3, 10));
  EXPECT_EQ(v[0], Scalar(4));
  EXPECT_EQ(v[1], Scalar(-3));
  auto [z, zc] = strip_content({Scalar(0), Scalar(0)});
  EXPECT_EQ(zc, 0);
}
