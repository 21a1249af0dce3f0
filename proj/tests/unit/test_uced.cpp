#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "islandsim/errors.hpp"
#include "islandsim/uced.hpp"
#include "support/oracles.hpp"

using namespace islandsim;

namespace {

milp::SolverSettings tight() {
  milp::SolverSettings s;
  s.gap_tolerance = 1e-9;
  return s;
}

HpsPlant plant() {
  HpsPlant h;
  h.id = "HPS1";
  h.p_max = 20;
  h.p_min_component = 1;
  h.grid_absorb_max = 10;
  h.storage = {"HPS1.BES", 10, 10, 0, 40, 0.8, 20};
  h.wind_capacity = 20;
  return h;
}

}  // namespace

TEST(Uced, MatchesCommitmentEnumeration) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    UcedProblem p;
    p.snapshot = oracle::random_micro_system(seed);
    const auto expected = oracle::uc_enumeration(p.snapshot);
    ASSERT_TRUE(expected.has_value()) << "seed " << seed;
    const auto d = solve_uced(p, tight());
    ASSERT_EQ(d.status, SolveStatus::optimal) << "seed " << seed;
    EXPECT_NEAR(d.objective, *expected, 1e-6 * std::max(1.0, std::abs(*expected))) << "seed " << seed;
  }
}

TEST(Uced, ScheduleBalancesEveryInterval) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(42);
  const auto d = solve_uced(p, tight());
  ASSERT_EQ(d.status, SolveStatus::optimal);
  for (int t = 0; t < d.horizon; ++t) EXPECT_LT(std::abs(balance_residual(p.snapshot, d, t)), 1e-6);
  for (std::size_t t = 0; t < 4; ++t) {
    const auto& b = d.storage[0];
    EXPECT_FALSE(b.charge[t] > 1e-9 && b.discharge[t] > 1e-9);
  }
}

TEST(Uced, CostBreakdownAddsUpToObjective) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(3);
  const auto d = solve_uced(p, tight());
  EXPECT_NEAR(d.costs.total(), d.objective, 1e-6 * std::max(1.0, d.objective));
}

TEST(Uced, MinimumUpTimeKeepsFreshUnitOnline) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(5);
  auto& s = p.snapshot;
  s.thermal_units[0].min_up_time = 4;
  s.thermal_units[0].startup_cost = 0;
  s.prior_commitment[0].history = {false, false, false, false, true};
  s.prior_commitment[0].output = s.thermal_units[0].p_min;
  s.load.assign(4, s.thermal_units[0].p_min + 1.0);
  const auto d = solve_uced(p, tight());
  for (int t = 0; t < 3; ++t) EXPECT_EQ(d.units[0].on[static_cast<std::size_t>(t)], 1) << t;
}

TEST(Uced, PrimaryReserveCoversLargestInfeed) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(11);
  ReserveRule pr;
  pr.reserve_cost = 1.0;
  p.snapshot.reserve_rules = {pr};
  const auto d = solve_uced(p, tight());
  ASSERT_EQ(d.status, SolveStatus::optimal);
  const auto need = primary_up_requirement(p.snapshot, d);
  for (std::size_t t = 0; t < 4; ++t) {
    double provided = d.storage[0].reserve[0][t];
    for (const auto& u : d.units) provided += u.reserve[0][t];
    EXPECT_GE(provided + d.reserve_shortfall[0][t] + 1e-6, need[t]);
    EXPECT_GE(d.reserve_requirement[0][t] + 1e-6, need[t]);
  }
}

TEST(Uced, PrimaryRequirementIsLargestOfUnitsAndWind) {
  const std::vector<double> outputs{12, 30, 7};
  EXPECT_DOUBLE_EQ(primary_up_requirement(outputs, 18), 30);
  EXPECT_DOUBLE_EQ(primary_up_requirement(outputs, 45), 45);
  EXPECT_DOUBLE_EQ(primary_up_requirement({}, 0), 0);
}

TEST(Uced, OfferUsesEightHourBlocks) {
  const auto h = plant();
  std::vector<double> f(24, 10.0);
  EXPECT_NEAR(build_offer(h, f), 0.6 * 80 + 0.5 * 80 + 0.4 * 80, 1e-12);
  std::iota(f.begin(), f.end(), 0.0);
  EXPECT_NEAR(build_offer(h, f), 0.6 * 28 + 0.5 * 92 + 0.4 * 156, 1e-12);
  EXPECT_THROW(build_offer(h, std::vector<double>(23, 1.0)), ValidationError);
}

TEST(Uced, IntradayOfferAddsUndeliveredEnergy) {
  const auto h = plant();
  const std::vector<double> f(12, 10.0);
  EXPECT_NEAR(build_intraday_offer(h, f, 5.0), 0.5 * 60 + 0.4 * 60 + 5.0, 1e-12);
  EXPECT_THROW(build_intraday_offer(h, f, -1.0), ValidationError);
  EXPECT_THROW(build_intraday_offer(h, std::vector<double>(24, 1.0), 0.0), ValidationError);
}

TEST(Uced, HpsDispatchStaysWithinOffer) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(17);
  p.snapshot.hps_plants = {plant()};
  p.snapshot.hps_res_available = {{15, 15, 15, 15}};
  p.hps_offers = {9.0};
  const auto d = solve_uced(p, tight());
  ASSERT_TRUE(d.status == SolveStatus::optimal);
  const auto& h = d.hps[0];
  EXPECT_LE(std::accumulate(h.dispatch.begin(), h.dispatch.end(), 0.0), 9.0 + 1e-6);
  for (int t = 0; t < 4; ++t) EXPECT_LT(std::abs(balance_residual(p.snapshot, d, t)), 1e-6);
  for (std::size_t t = 0; t < 4; ++t) EXPECT_FALSE(h.dispatch[t] > 1e-9 && h.grid_absorption[t] > 1e-9);
}

TEST(Uced, MissingOfferRejected) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(17);
  p.snapshot.hps_plants = {plant()};
  p.snapshot.hps_res_available = {{15, 15, 15, 15}};
  EXPECT_THROW(solve_uced(p), ValidationError);
}

TEST(Uced, WithoutSlacksAnOverloadedSystemIsInfeasible) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(2);
  p.snapshot.load.assign(4, 1000.0);
  p.allow_slacks = false;
  EXPECT_EQ(solve_uced(p).status, SolveStatus::infeasible);
  p.allow_slacks = true;
  const auto d = solve_uced(p);
  EXPECT_GT(d.energy_not_served[0], 0.0);
}

TEST(Uced, ScheduleCsvHasHeaderAndRows) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(9);
  const auto d = solve_uced(p);
  std::ostringstream os;
  write_schedule_csv(d, os);
  const std::string out = os.str();
  EXPECT_EQ(out.rfind("hour,asset,quantity,value\n", 0), 0u);
  EXPECT_NE(out.find(",G1,"), std::string::npos);
  std::ostringstream empty;
  write_schedule_csv(DispatchSchedule{}, empty);
  EXPECT_EQ(empty.str(), "hour,asset,quantity,value\n");
}

namespace {

ThermalUnit flat_unit(const std::string& id, double mc) {
  ThermalUnit u;
  u.id = id;
  u.p_min = 10;
  u.p_max = 50;
  u.cost_at_pmin = 10 * mc;
  u.cost_blocks = {{40, mc}};
  u.startup_cost = 500;
  u.shutdown_cost = 0;
  u.ramp_up = 50;
  u.ramp_down = 50;
  return u;
}

SystemSnapshot two_unit_system(double load, bool a_on, bool b_on) {
  SystemSnapshot s;
  s.horizon = 4;
  s.load.assign(4, load);
  s.wind_available.assign(4, 0.0);
  s.pv_available.assign(4, 0.0);
  s.thermal_units = {flat_unit("A", 100), flat_unit("B", 200)};
  s.prior_commitment = {{{a_on, a_on}, a_on ? std::min(load, 50.0) : 0.0},
                        {{b_on, b_on}, b_on ? 10.0 : 0.0}};
  return s;
}

}  // namespace

TEST(Uced, CheapUnitLoadedFirst) {
  UcedProblem p;
  p.snapshot = two_unit_system(60, true, true);
  const auto d = solve_uced(p, tight());
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_NEAR(d.units[0].output[t], 50, 1e-6);
    EXPECT_NEAR(d.units[1].output[t], 10, 1e-6);
  }
  EXPECT_NEAR(d.objective, 4 * (50 * 100 + 10 * 200), 1e-6);
  EXPECT_NEAR(d.objective, *oracle::uc_enumeration(p.snapshot), 1e-6);
}

TEST(Uced, StartupCostKeepsSecondUnitOff) {
  UcedProblem p;
  p.snapshot = two_unit_system(40, true, false);
  const auto d = solve_uced(p, tight());
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_NEAR(d.units[0].output[t], 40, 1e-6);
    EXPECT_EQ(d.units[1].on[t], 0);
  }
  EXPECT_NEAR(d.objective, *oracle::uc_enumeration(p.snapshot), 1e-6);
}

TEST(Uced, ZeroLoadAllOffCostsNothing) {
  UcedProblem p;
  p.snapshot = two_unit_system(0, false, false);
  const auto d = solve_uced(p, tight());
  EXPECT_NEAR(d.objective, 0.0, 1e-9);
  for (const auto& u : d.units) {
    for (auto on : u.on) EXPECT_EQ(on, 0);
  }
}

TEST(Uced, HorizonLongerThanStageRejected) {
  UcedProblem p;
  p.snapshot = two_unit_system(40, true, false);
  p.stage = Stage::intraday;
  p.snapshot.horizon = 13;
  EXPECT_THROW(solve_uced(p), ValidationError);
}
