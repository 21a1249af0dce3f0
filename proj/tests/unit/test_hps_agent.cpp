#include <gtest/gtest.h>

#include <cmath>

#include "islandsim/errors.hpp"
#include "islandsim/hps_agent.hpp"
#include "support/oracles.hpp"

using namespace islandsim;

namespace {

HpsPlant plant() {
  HpsPlant h;
  h.id = "H";
  h.p_max = 20;
  h.p_min_component = 1;
  h.grid_absorb_max = 10;
  h.roundtrip_eff = 0.81;
  h.storage = {"H.B", 10, 10, 0, 40, 0.81, 20};
  h.wind_capacity = 20;
  h.prices = {100, 50, 150};
  return h;
}

void expect_identities(const HpsPlant& h, const HpsOrder& o, double res, double soc, const HpsRealization& r) {
  EXPECT_NEAR(r.res_to_grid + r.res_to_storage + r.res_rejected, res, 1e-9);
  EXPECT_NEAR(r.res_to_grid + r.discharge + r.imbalance_production, o.production, 1e-9);
  const double eta = std::sqrt(h.roundtrip_eff);
  EXPECT_NEAR(r.end_soc, soc + eta * r.charge - r.discharge / eta, 1e-9);
  EXPECT_FALSE(r.charge > 1e-9 && r.discharge > 1e-9);
  EXPECT_LE(r.res_to_storage, r.charge + 1e-9);
  EXPECT_GE(r.end_soc, h.storage.e_min - 1e-9);
  EXPECT_LE(r.end_soc, h.storage.e_max + 1e-9);
}

}  // namespace

TEST(HpsAgent, OrderMetFromWindAlone) {
  const auto h = plant();
  const HpsOrder o{8, 0, 0};
  const auto r = self_dispatch(h, o, 12, 20);
  EXPECT_NEAR(r.res_to_grid, 8, 1e-9);
  EXPECT_NEAR(r.imbalance_production, 0, 1e-9);
  EXPECT_NEAR(r.res_to_storage, 4, 1e-9);  // surplus stored rather than rejected
  EXPECT_NEAR(r.objective, 800, 1e-6);
  expect_identities(h, o, 12, 20, r);
}

TEST(HpsAgent, StorageCoversWindShortfall) {
  const auto h = plant();
  const HpsOrder o{15, 0, 0};
  const auto r = self_dispatch(h, o, 9, 20);
  EXPECT_NEAR(r.res_to_grid, 9, 1e-9);
  EXPECT_NEAR(r.discharge, 6, 1e-9);
  EXPECT_NEAR(r.imbalance_production, 0, 1e-9);
  EXPECT_NEAR(r.injection(), 15, 1e-9);
  expect_identities(h, o, 9, 20, r);
}

TEST(HpsAgent, EmptyStorageLeavesImbalance) {
  const auto h = plant();
  const HpsOrder o{15, 0, 0};
  const auto r = self_dispatch(h, o, 9, 0);
  EXPECT_NEAR(r.imbalance_production, 6, 1e-9);
  EXPECT_NEAR(r.objective, 900 - 6 * 150, 1e-6);
}

TEST(HpsAgent, AbsorptionOrderChargesFromGrid) {
  const auto h = plant();
  const HpsOrder o{0, 5, 0};
  const auto r = self_dispatch(h, o, 3, 10);
  EXPECT_NEAR(r.absorption(), 5, 1e-9);
  EXPECT_NEAR(r.imbalance_absorption, 0, 1e-9);
  EXPECT_NEAR(r.charge, 8, 1e-9);
  EXPECT_NEAR(r.objective, -5 * 50, 1e-6);
  expect_identities(h, o, 3, 10, r);
}

TEST(HpsAgent, InvalidInputsRejected) {
  const auto h = plant();
  EXPECT_THROW(self_dispatch(h, {1, 0, 0}, -1, 10), ValidationError);
  EXPECT_THROW(self_dispatch(h, {1, 0, 0}, 1, 50), ValidationError);
  EXPECT_THROW(self_dispatch(h, {-1, 0, 0}, 1, 10), ValidationError);
}

TEST(HpsAgent, MatchesGridSearch) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto c = oracle::random_hps_case(seed);
    const auto r = self_dispatch(c.plant, {c.production, c.absorption, 0}, c.res, c.soc);
    const double ref = oracle::hps_grid_search(c);
    const auto& m = c.plant.prices;
    const double tol = 0.1 * (m.sale + m.purchase + m.imbalance);
    EXPECT_GE(r.objective, ref - 1e-6) << "seed " << seed;
    EXPECT_LE(r.objective, ref + tol) << "seed " << seed;
    expect_identities(c.plant, {c.production, c.absorption, 0}, c.res, c.soc, r);
  }
}

TEST(HpsAgent, PenaltyDominanceGivesZeroImbalance) {
  int feasible = 0;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    auto c = oracle::random_hps_case(seed);
    c.plant.prices.imbalance = c.plant.prices.sale + 10.0;
    if (!oracle::hps_order_feasible(c)) continue;
    ++feasible;
    const auto r = self_dispatch(c.plant, {c.production, c.absorption, 0}, c.res, c.soc);
    EXPECT_NEAR(r.imbalance_production + r.imbalance_absorption, 0.0, 1e-7) << "seed " << seed;
  }
  EXPECT_GT(feasible, 10);
}
