#include <gtest/gtest.h>

#include "heightlab/invariants.hpp"

using namespace heightlab;

TEST(InvariantSuite, SmallRunPasses) {
  SuiteConfig c;
  c.samples = 12;
  const SuiteReport r = run_invariant_suite(c);
  EXPECT_EQ(r.checks.size(), invariant_check_names().size());
  for (const auto& o : r.checks) {
    EXPECT_EQ(o.failures, 0u) << o.name << ": " << o.witness.value_or("");
    EXPECT_GE(o.cases, 12u) << o.name;
  }
  EXPECT_TRUE(r.ok());
}

TEST(InvariantSuite, SelectsChecksByName) {
  SuiteConfig c;
  c.samples = 5;
  c.checks = {"product_formula", "newton_oracle"};
  const SuiteReport r = run_invariant_suite(c);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[0].name, "product_formula");
}

TEST(InvariantSuite, UnknownCheckThrows) {
  SuiteConfig c;
  c.checks = {"no_such_check"};
  EXPECT_THROW(run_invariant_suite(c), std::invalid_argument);
}

TEST(InvariantSuite, IndependentOfWorkerCount) {
  SuiteConfig a;
  a.samples = 8;
  a.checks = {"homogeneity", "spectral_conjugation"};
  SuiteConfig b = a;
  b.workers = 3;
  const auto ra = run_invariant_suite(a);
  const auto rb = run_invariant_suite(b);
  for (std::size_t i = 0; i < ra.checks.size(); ++i) {
    EXPECT_EQ(ra.checks[i].cases, rb.checks[i].cases);
    EXPECT_EQ(ra.checks[i].max_deviation, rb.checks[i].max_deviation);
  }
}
