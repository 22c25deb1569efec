#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "heightlab/asymptotics.hpp"
#include "support.hpp"

using namespace heightlab;
using testing_support::mat;
using testing_support::prime_place;
using testing_support::real_place;

TEST(Gelfand, UnipotentMatchesClosedForm) {
  const auto tr = gelfand_sequence(mat("[[1,1],[0,1]]"), 12);
  ASSERT_EQ(tr.entries.size(), 13u);
  EXPECT_FALSE(tr.truncated);
  EXPECT_EQ(tr.target_log, 0.0);
  for (const auto& e : tr.entries) {
    const double k = static_cast<double>(e.k);
    // sigma_max of [[1,k],[0,1]] squared is (k^2 + 2 + k sqrt(k^2 + 4)) / 2.
    const double want = std::log((k * k + 2 + k * std::sqrt(k * k + 4)) / 2) / (2 * k);
    EXPECT_NEAR(e.log_value, want, 1e-12) << e.k;
  }
  EXPECT_LT(tr.entries.back().residual, 0.01);
}

TEST(Gelfand, DiagonalIsExactAtEveryStep) {
  const auto tr = gelfand_sequence(mat("[[2,0],[0,3]]"), 12);
  for (const auto& e : tr.entries) {
    EXPECT_TRUE(e.finite_matches) << e.k;
    EXPECT_LT(e.residual, 1e-12) << e.k;
    EXPECT_TRUE(e.exact_flag);
  }
}

TEST(Gelfand, SingularMatrixHasNoExactFlag) {
  const auto tr = gelfand_sequence(mat("[[3,1],[0,0]]"), 6);
  for (const auto& e : tr.entries) EXPECT_FALSE(e.exact_flag);
  EXPECT_NEAR(tr.entries.back().log_value, tr.target_log, 0.1);
}

TEST(Gelfand, TruncatesOnBudget) {
  GelfandOptions o;
  o.bit_budget = 300;
  const auto tr = gelfand_sequence(mat("[[3,1],[1,2]]"), 12, o);
  EXPECT_TRUE(tr.truncated);
  EXPECT_FALSE(tr.truncation_reason.empty());
  EXPECT_LT(tr.entries.size(), 13u);
}

TEST(LocalGelfand, TwoAdicSquareRootOfTwo) {
  const auto tr = local_gelfand_sequence(mat("[[0,2],[1,0]]"), prime_place(2), 8);
  EXPECT_DOUBLE_EQ(tr.target_log, -0.5 * std::log(2.0));
  for (const auto& e : tr.entries) {
    EXPECT_TRUE(e.exact_flag);
    if (e.k % 2 == 0) {
      EXPECT_TRUE(e.finite_matches) << e.k;
      EXPECT_EQ(e.residual, 0.0);
    }
  }
  EXPECT_FALSE(tr.entries.front().finite_matches);
}

TEST(LocalGelfand, ArchimedeanConverges) {
  const auto tr = local_gelfand_sequence(mat("[[2,1],[1,3]]"), real_place(), 10);
  // Symmetric: the operator norm is the spectral radius at every k.
  for (const auto& e : tr.entries) EXPECT_LT(e.residual, 1e-12);
}

TEST(Csv, HeaderAndRows) {
  std::ostringstream os;
  write_csv(os, local_gelfand_sequence(mat("[[0,2],[1,0]]"), prime_place(2), 2));
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "k,log_height_over_k,target,residual,exact_flag");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
}
