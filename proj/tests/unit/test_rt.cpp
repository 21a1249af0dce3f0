#include <gtest/gtest.h>

#include "islandsim/errors.hpp"
#include "islandsim/rt_dispatch.hpp"
#include "support/oracles.hpp"

using namespace islandsim;

namespace {

RtProblem one_hour(std::uint64_t seed) {
  RtProblem p;
  p.snapshot = oracle::random_micro_system(seed);
  auto& s = p.snapshot;
  s.horizon = 1;
  s.load.resize(1);
  s.wind_available.resize(1);
  s.pv_available.resize(1);
  for (const auto& init : s.prior_commitment) p.commitment.push_back(init.online() ? 1 : 0);
  p.soc_reference = {s.prior_soc[0]};
  return p;
}

}  // namespace

TEST(Rt, BalancesAndKeepsCommitment) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = one_hour(seed);
    const auto d = solve_rt(p);
    ASSERT_TRUE(d.status == SolveStatus::optimal) << seed;
    EXPECT_LT(std::abs(balance_residual(p.snapshot, d, 0)), 1e-6) << seed;
    for (std::size_t i = 0; i < d.units.size(); ++i) EXPECT_EQ(d.units[i].on[0], p.commitment[i]);
    EXPECT_EQ(d.costs.startup, 0.0);
  }
}

TEST(Rt, StorageEndsAtOrAboveReference) {
  auto p = one_hour(4);
  auto& b = p.snapshot.bes_units[0];
  p.snapshot.prior_soc[0] = b.e_max * 0.5;
  b.initial_soc = p.snapshot.prior_soc[0];
  p.soc_reference = {b.e_max * 0.5 + 1.0};
  const auto d = solve_rt(p);
  EXPECT_GE(d.storage[0].soc[0], p.soc_reference[0] - 1e-6);
}

TEST(Rt, UnreachableReferenceIsCapped) {
  auto p = one_hour(4);
  auto& b = p.snapshot.bes_units[0];
  p.snapshot.prior_soc[0] = 0.0;
  b.initial_soc = 0.0;
  p.soc_reference = {b.e_max};
  const auto d = solve_rt(p);
  ASSERT_TRUE(d.status == SolveStatus::optimal);
  EXPECT_NEAR(d.storage[0].soc[0], std::min(b.e_max, b.leg_efficiency() * b.p_charge_max), 1e-6);
}

TEST(Rt, ReleasedReservesKeepOnlyPrimary) {
  auto p = one_hour(6);
  ReserveRule pr;
  ReserveRule sr;
  sr.kind = ReserveKind::secondary;
  sr.rule = RequirementRule::load_fraction;
  sr.parameter = 0.1;
  p.snapshot.reserve_rules = {pr, sr};
  auto d = solve_rt(p);
  ASSERT_EQ(d.rules.size(), 1u);
  EXPECT_EQ(d.rules[0].name(), "pr_up");
  p.release_reserves = false;
  d = solve_rt(p);
  EXPECT_EQ(d.rules.size(), 2u);
}

TEST(Rt, FixedHpsFlowsAreHonoured) {
  auto p = one_hour(8);
  HpsPlant h;
  h.id = "H";
  h.p_max = 20;
  h.p_min_component = 1;
  h.grid_absorb_max = 5;
  h.storage = {"H.B", 5, 5, 0, 20, 0.8, 10};
  p.snapshot.hps_plants = {h};
  p.snapshot.hps_res_available = {{6}};
  p.hps_energy = {8};
  auto d = solve_rt(p);
  EXPECT_LE(d.hps[0].dispatch[0], 8 + 1e-6);
  p.hps_fixed = {HpsFlows{3.5, 0.0}};
  d = solve_rt(p);
  EXPECT_NEAR(d.hps[0].dispatch[0], 3.5, 1e-9);
  EXPECT_NEAR(d.hps[0].grid_absorption[0], 0.0, 1e-9);
  EXPECT_LT(std::abs(balance_residual(p.snapshot, d, 0)), 1e-6);
}

TEST(Rt, MalformedProblemsRejected) {
  auto p = one_hour(2);
  p.commitment.pop_back();
  EXPECT_THROW(solve_rt(p), ValidationError);
  p = one_hour(2);
  p.snapshot.horizon = 2;
  EXPECT_THROW(solve_rt(p), ValidationError);
  p = one_hour(2);
  p.soc_reference.clear();
  EXPECT_THROW(solve_rt(p), ValidationError);
}
