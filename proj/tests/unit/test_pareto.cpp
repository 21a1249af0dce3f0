#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "islandsim/errors.hpp"
#include "islandsim/pareto.hpp"
#include "support/cases.hpp"

using namespace islandsim;

TEST(Pareto, HandExample) {
  const std::vector<ParetoPoint> pts{{"a", 0.40, 100}, {"b", 0.45, 120}, {"c", 0.45, 110}, {"d", 0.42, 90}};
  const auto f = extract_pareto(pts);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].scenario, "d");
  EXPECT_EQ(f[1].scenario, "c");
}

TEST(Pareto, SinglePointIsItsOwnFront) {
  const std::vector<ParetoPoint> pts{{"only", 0.3, 70}};
  EXPECT_TRUE(oracle::same_front(extract_pareto(pts), pts));
  EXPECT_TRUE(extract_pareto({}).empty());
}

TEST(Pareto, TiesKeepSmallestId) {
  const std::vector<ParetoPoint> pts{{"z", 0.4, 80}, {"b", 0.4, 80}, {"m", 0.4, 80}};
  const auto f = extract_pareto(pts);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].scenario, "b");
}

TEST(Pareto, NonFiniteRejected) {
  const std::vector<ParetoPoint> pts{{"x", NAN, 80}};
  EXPECT_THROW(extract_pareto(pts), ValidationError);
}

TEST(Pareto, MatchesPairwiseOracle) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 300; ++k) {
    const auto pts = oracle::random_points(rng, k % 2 == 0);
    EXPECT_TRUE(oracle::same_front(extract_pareto(pts), oracle::pareto_bruteforce(pts))) << "set " << k;
  }
}

TEST(Pareto, FrontIsMutuallyNonDominated) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto f = extract_pareto(oracle::random_points(rng, false));
    for (std::size_t i = 1; i < f.size(); ++i) {
      EXPECT_GT(f[i].res_penetration, f[i - 1].res_penetration);
      EXPECT_GT(f[i].lcoe, f[i - 1].lcoe);
    }
  }
}

TEST(Pareto, CsvRows) {
  std::ostringstream os;
  write_pareto_header(os);
  const std::vector<ParetoPoint> f{{"C_P030.0_H08.0", 0.41, 81.25}};
  write_pareto_rows("central", f, os);
  EXPECT_EQ(os.str(), "management,scenario,res_penetration,lcoe_eur_mwh\ncentral,C_P030.0_H08.0,0.410000,81.2500\n");
}
