#include <gtest/gtest.h>

#include "islandsim/domain.hpp"

using namespace islandsim;

namespace {

ThermalUnit unit() {
  ThermalUnit u;
  u.id = "G1";
  u.p_min = 10;
  u.p_max = 40;
  u.cost_at_pmin = 1500;
  u.cost_blocks = {{10, 120}, {20, 140}};
  u.startup_cost = 900;
  u.shutdown_cost = 100;
  u.ramp_up = 20;
  u.ramp_down = 20;
  u.min_up_time = 2;
  u.min_down_time = 2;
  return u;
}

bool has_field(const std::vector<Violation>& v, const std::string& field) {
  for (const auto& x : v) {
    if (x.field == field) return true;
  }
  return false;
}

}  // namespace

TEST(Domain, ValidUnitHasNoViolations) { EXPECT_TRUE(validate_unit(unit()).empty()); }

TEST(Domain, PminAbovePmaxRejected) {
  auto u = unit();
  u.p_min = 50;
  EXPECT_TRUE(has_field(validate_unit(u), "p_max"));
}

TEST(Domain, NonConvexCostBlocksRejected) {
  auto u = unit();
  u.cost_blocks = {{10, 140}, {20, 120}};
  EXPECT_TRUE(has_field(validate_unit(u), "cost_blocks"));
}

TEST(Domain, BlockWidthsMustCoverRange) {
  auto u = unit();
  u.cost_blocks = {{10, 120}};
  EXPECT_TRUE(has_field(validate_unit(u), "cost_blocks"));
}

TEST(Domain, BesInitialSocOutsideBounds) {
  BesUnit b{"B", 5, 5, 0, 10, 0.8, 12};
  EXPECT_TRUE(has_field(validate_bes(b), "initial_soc"));
  b.initial_soc = 5;
  EXPECT_TRUE(validate_bes(b).empty());
  EXPECT_DOUBLE_EQ(b.leg_efficiency(), std::sqrt(0.8));
}

TEST(Domain, HpsImbalancePriceBelowPurchaseRejected) {
  HpsPlant h;
  h.id = "H";
  h.p_max = 10;
  h.p_min_component = 1;
  h.storage = {"H.B", 5, 5, 0, 20, 0.8, 10};
  h.prices = {100, 50, 40};
  EXPECT_TRUE(has_field(validate_hps(h), "market_prices"));
  h.prices.imbalance = 150;
  EXPECT_TRUE(validate_hps(h).empty());
}

TEST(Domain, DuplicateReserveRuleRejected) {
  ReserveRule r;
  EXPECT_EQ(r.name(), "pr_up");
  Penalties p;
  EXPECT_FALSE(validate_reserve_rules({r, r}, p).empty());
  EXPECT_TRUE(validate_reserve_rules({r}, p).empty());
}

TEST(Domain, DownwardLargestInfeedRejected) {
  ReserveRule r;
  r.direction = ReserveDirection::down;
  EXPECT_TRUE(has_field(validate_reserve_rules({r}, Penalties{}), "rule"));
}

TEST(Domain, ProductionCostFillsCheapBlocksFirst) {
  const auto u = unit();
  EXPECT_DOUBLE_EQ(production_cost(u, 0, false), 0.0);
  EXPECT_DOUBLE_EQ(production_cost(u, 10, true), 1500.0);
  EXPECT_DOUBLE_EQ(production_cost(u, 15, true), 1500.0 + 5 * 120.0);
  EXPECT_DOUBLE_EQ(production_cost(u, 40, true), 1500.0 + 10 * 120.0 + 20 * 140.0);
}

TEST(Domain, ProductionCostIsConvexInOutput) {
  const auto u = unit();
  double prev_slope = -1.0;
  for (double p = 10; p < 40; p += 1.0) {
    const double slope = production_cost(u, p + 1, true) - production_cost(u, p, true);
    EXPECT_GE(slope, prev_slope - 1e-9);
    prev_slope = slope;
  }
}

TEST(Domain, SnapshotSeriesLengthChecked) {
  SystemSnapshot s;
  s.horizon = 2;
  s.load = {10, 10};
  s.wind_available = {1};
  s.pv_available = {0, 0};
  s.thermal_units = {unit()};
  s.prior_commitment = {{{true, true}, 10}};
  EXPECT_FALSE(validate_system(s).empty());
  s.wind_available = {1, 1};
  EXPECT_TRUE(validate_system(s).empty());
}

TEST(Domain, BalanceResidualOfHandSchedule) {
  SystemSnapshot s;
  s.horizon = 1;
  s.load = {50};
  s.wind_available = {10};
  s.pv_available = {5};
  s.thermal_units = {unit()};
  s.prior_commitment = {{{true}, 20}};
  DispatchSchedule d;
  d.horizon = 1;
  d.units = {{"G1", {33}, {1}, {0}, {0}, {}}};
  d.wind_curtailment = {0};
  d.energy_not_served = {2};
  d.surplus = {0};
  EXPECT_NEAR(balance_residual(s, d, 0), 0.0, 1e-12);
  d.units[0].output[0] = 30;
  EXPECT_NEAR(balance_residual(s, d, 0), -3.0, 1e-12);
}
