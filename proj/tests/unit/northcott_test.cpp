#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "heightlab/northcott.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace heightlab;
using testing_support::mat;

namespace {

std::set<std::vector<long>> as_set(const std::vector<ProjectivePoint>& pts) {
  std::set<std::vector<long>> out;
  for (const auto& p : pts) {
    std::vector<long> v;
    for (const auto& c : p.coords) v.push_back(c.get_si());
    out.insert(v);
  }
  return out;
}

std::set<std::vector<long>> as_set(const std::vector<EndoClass>& cls) {
  std::set<std::vector<long>> out;
  for (const auto& c : cls) {
    std::vector<long> v;
    for (const auto& s : c.matrix.entries()) v.push_back(s.a().get_num().get_si());
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(Points, Examples) {
  EXPECT_EQ(as_set(enum_projective_points(2, 1.0)), (std::set<std::vector<long>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(as_set(enum_projective_points(2, 1.5)),
            (std::set<std::vector<long>>{{0, 1}, {1, -1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(enum_projective_points(3, 1.0).size(), 3u);
  EXPECT_TRUE(enum_projective_points(2, 0.9).empty());
}

TEST(Points, LexicographicAndDuplicateFree) {
  const auto pts = enum_projective_points(3, 4.0);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i - 1].coords, pts[i].coords);
}

TEST(Points, MatchesEnlargedBoxOracle) {
  for (int n : {2, 3}) {
    for (double b : {1.0, 2.5, 5.0}) {
      const auto want = oracle::brute_points(n, exact_rational(b) * exact_rational(b), static_cast<long>(b) + 1);
      EXPECT_EQ(as_set(enum_projective_points(static_cast<std::size_t>(n), b)), want) << n << " " << b;
    }
  }
}

TEST(Points, MonotoneInBound) {
  std::size_t last = 0;
  for (double b = 1.0; b <= 6.0; b += 0.25) {
    const std::size_t c = enum_projective_points(2, b).size();
    EXPECT_GE(c, last);
    last = c;
  }
}

TEST(Points, WorkerCountDoesNotChangeOutput) {
  const auto a = enum_projective_points(3, 5.0, 1);
  const auto b = enum_projective_points(3, 5.0, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coords, b[i].coords);
}

TEST(Invertible, UnitBoundGivesSignedPermutations) {
  const auto got = as_set(enum_invertible_endos(2, 1.0));
  const std::set<std::vector<long>> want{{0, 1, 1, 0}, {0, 1, -1, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}};
  EXPECT_EQ(got, want);
  EXPECT_TRUE(enum_invertible_endos(2, 0.5).empty());
}

TEST(Invertible, MatchesEnlargedBoxOracle) {
  const auto want = oracle::brute_invertible_2x2(9, 4);
  EXPECT_EQ(as_set(enum_invertible_endos(2, 3.0)), want);
}

TEST(Invertible, OperatorHeightEqualsMatrixHeight) {
  for (const auto& c : enum_invertible_endos(2, 2.0)) {
    ASSERT_TRUE(c.op.value.has_value());
    EXPECT_EQ(c.op.value->log(), c.height.log());
    EXPECT_LE(c.height.value(), 2.0 + 1e-12);
    EXPECT_EQ(c.rank, 2u);
    EXPECT_TRUE(c.certified);
  }
}

TEST(RankOne, Examples) {
  EXPECT_EQ(enum_rank1_endos(2, std::sqrt(2.0), 1.0).size(), 8u);
  EXPECT_EQ(enum_rank1_endos(2, 1.0, 1.0).size(), 4u);
  EXPECT_TRUE(enum_rank1_endos(2, 0.5, 3.0).empty());
}

TEST(RankOne, MonotoneInKernelCap) {
  std::size_t last = 0;
  for (double c : {1.0, 1.5, 2.3, 3.0, 4.0}) {
    const std::size_t n = enum_rank1_endos(2, 2.0, c).size();
    EXPECT_GE(n, last);
    last = n;
  }
}

TEST(RankOne, KernelHeightMatchesDirectComputation) {
  for (const auto& c : enum_rank1_endos(3, 1.5, 1.5)) {
    ASSERT_TRUE(c.kernel.has_value());
    ASSERT_TRUE(c.kernel_height.has_value());
    EXPECT_NEAR(c.kernel_height->log(), height_subspace(*c.kernel).log(), 1e-12);
    EXPECT_EQ(c.rank, 1u);
  }
}

TEST(RankOne, UnboundedDemo) {
  const auto rows = rank1_unbounded_demo(3);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.op_height.finite().is_one());
    EXPECT_NEAR(r.op_height.log(), 0.5 * std::log(2.0), 1e-15);
    const double n = static_cast<double>(r.index);
    EXPECT_NEAR(r.kernel_height.log(), 0.5 * std::log(n * n + 1), 1e-14);
  }
  // Pairwise non-proportional.
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) EXPECT_NE(rows[i].matrix, rows[j].matrix);
}

TEST(MiddleRank, ScanIsNotCertified) {
  for (const auto& c : scan_middle_rank(3, 1.0)) {
    EXPECT_FALSE(c.certified);
    EXPECT_EQ(c.rank, 2u);
  }
}

TEST(SingularValueTest, ExactBoundary) {
  EXPECT_TRUE(largest_singular_value_at_most(mat("[[1,1],[1,1]]"), 4));
  EXPECT_FALSE(largest_singular_value_at_most(mat("[[1,1],[1,1]]"), mpq_class(399, 100)));
  EXPECT_TRUE(largest_singular_value_at_most(mat("[[1,1,0],[0,1,0],[0,0,1]]"), mpq_class(27, 10)));
  EXPECT_FALSE(largest_singular_value_at_most(mat("[[1,1,0],[0,1,0],[0,0,1]]"), mpq_class(26, 10)));
}
