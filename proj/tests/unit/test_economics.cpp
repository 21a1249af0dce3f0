#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "islandsim/economics.hpp"
#include "islandsim/errors.hpp"
#include "support/cases.hpp"

using namespace islandsim;

TEST(Economics, InvestmentFromUnitCosts) {
  EconomicParams p;
  const auto inv = storage_and_wind_investment(p, 30, 240, 75);
  EXPECT_DOUBLE_EQ(inv.initial, 1000.0 * (75 * 1200 + 30 * 400 + 240 * 250));
  EXPECT_DOUBLE_EQ(inv.replacement, 1000.0 * 240 * 150);
}

TEST(Economics, CentralLcoeMatchesCashFlowOracle) {
  for (const auto& c : oracle::lcoe_cases()) {
    const std::vector<double> e(static_cast<std::size_t>(c.p.evaluation_years), c.annual_energy);
    const auto inv = storage_and_wind_investment(c.p, c.power, c.energy, c.wind);
    const double ref = oracle::dcf_lcoe(c.p, inv.initial, inv.replacement, e, {});
    const auto got = lcoe_central(c.p, c.power, c.energy, c.wind, e);
    ASSERT_TRUE(got.has_value());
    EXPECT_NEAR(*got, ref, 0.01);
  }
}

TEST(Economics, SelfLcoeChargesImbalances) {
  for (const auto& c : oracle::lcoe_cases()) {
    const auto n = static_cast<std::size_t>(c.p.evaluation_years);
    const std::vector<double> e(n, c.annual_energy), imb(n, c.imbalance);
    const auto h = oracle::hps_for(c);
    const auto inv = storage_and_wind_investment(c.p, c.power, c.energy, c.wind);
    const std::vector<double> charges(n, c.imbalance * h.prices.imbalance);
    const double ref = oracle::dcf_lcoe(c.p, inv.initial, inv.replacement, e, charges);
    EXPECT_NEAR(*lcoe_self(c.p, h, e, imb), ref, 0.01);
  }
}

TEST(Economics, UndiscountedUntaxedLcoeIsCapexOverEnergy) {
  EconomicParams p;
  p.discount_rate = 0;
  p.tax_rate = 0;
  p.om_rate = 0;
  const std::vector<double> e(20, 123456.0);
  const auto inv = storage_and_wind_investment(p, 30, 240, 75);
  EXPECT_DOUBLE_EQ(*lcoe_central(p, 30, 240, 75, e), (inv.initial + inv.replacement) / (20 * 123456.0));
}

TEST(Economics, ZeroEnergyLeavesLcoeUndefined) {
  EconomicParams p;
  EXPECT_FALSE(lcoe_central(p, 30, 240, 75, std::vector<double>(20, 0.0)).has_value());
}

TEST(Economics, LcoeRejectsBadInput) {
  EconomicParams p;
  EXPECT_THROW(lcoe_central(p, 30, 240, 75, std::vector<double>(19, 1.0)), ValidationError);
  p.tax_rate = 1.5;
  EXPECT_THROW(lcoe_central(p, 30, 240, 75, std::vector<double>(20, 1.0)), ValidationError);
}

TEST(Economics, LcoeFallsWithMoreEnergy) {
  EconomicParams p;
  const auto a = *lcoe_central(p, 30, 240, 75, std::vector<double>(20, 100000));
  const auto b = *lcoe_central(p, 30, 240, 75, std::vector<double>(20, 120000));
  EXPECT_GT(a, b);
}

TEST(Economics, SystemCostImpactSign) {
  CostSummary base{8760, 50e6, 150000, 0};
  CostSummary sc{8760, 40e6, 150000, 100000};
  EXPECT_DOUBLE_EQ(system_cost_impact(base, sc, 80.0), 10e6 - 8e6);
  sc.hours = 24;
  EXPECT_THROW(system_cost_impact(base, sc, 80.0), ValidationError);
}

TEST(Economics, TotalCostAddsAvoidedCapacity) {
  EXPECT_DOUBLE_EQ(total_cost_impact(1e6, 10, 177), 1e6 + 10 * 177000.0);
  EXPECT_THROW(total_cost_impact(0, -1, 177), ValidationError);
}

TEST(CapacityCredit, FlatLoadGivesZero) {
  EXPECT_DOUBLE_EQ(capacity_credit(std::vector<double>(48, 100.0), 20, 80, 0.81), 0.0);
}

TEST(CapacityCredit, TwoHourPeakIsEnergyLimited) {
  std::vector<double> day(24, 100.0);
  day[18] = day[19] = 120.0;
  // shaving s over two hours draws 2 s / 0.9 MWh
  EXPECT_DOUBLE_EQ(capacity_credit(day, 30, 10, 0.81), 10 * 0.9 / 2);
  EXPECT_NEAR(capacity_credit(day, 3, 100, 0.81), 3.0, 1e-12);
}

TEST(CapacityCredit, NeverExceedsRatedPower) {
  const auto load = oracle::peaky_days(14, 1);
  for (double p : {1.0, 5.0, 20.0, 60.0}) {
    for (double e : {1.0, 10.0, 100.0}) EXPECT_LE(capacity_credit(load, p, e, 0.8), p + 1e-12);
  }
}

TEST(CapacityCredit, MonotoneInPowerAndEnergy) {
  const auto load = oracle::peaky_days(14, 2);
  double prev = 0.0;
  for (double p = 1; p <= 60; p += 3) {
    const double v = capacity_credit(load, p, 60, 0.8);
    EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
  prev = 0.0;
  for (double e = 1; e <= 200; e += 7) {
    const double v = capacity_credit(load, 30, e, 0.8);
    EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
}

TEST(CapacityCredit, MatchesBisectionOracle) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const auto load = oracle::peaky_days(oracle::uniform_int(rng, 1, 5), 100 + k);
    const double p = oracle::uniform(rng, 1, 60);
    const double e = oracle::uniform(rng, 1, 300);
    const double eff = oracle::uniform(rng, 0.6, 1.0);
    EXPECT_NEAR(capacity_credit(load, p, e, eff), oracle::capacity_credit_bisection(load, p, e, eff), 1e-7)
        << "case " << k;
  }
}

TEST(CapacityCredit, RejectsPartialDays) {
  EXPECT_THROW(capacity_credit(std::vector<double>(25, 1.0), 1, 1, 0.8), ValidationError);
  EXPECT_DOUBLE_EQ(capacity_credit(std::vector<double>(24, 1.0), 0, 1, 0.8), 0.0);
}

TEST(Economics, ReportCsvHeaderAndUndefinedCells) {
  EconomicReport r;
  r.scenario = "BASE";
  r.management = "central";
  std::ostringstream os;
  write_economic_reports(std::span<const EconomicReport>(&r, 1), os);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "scenario,management,new_wind_mw,bes_power_mw,bes_energy_mwh,lcoe_eur_mwh,res_penetration,"
            "curtail_share_existing_wind,curtail_share_new_wind,curtail_share_hps,system_cost_delta_eur,"
            "capacity_credit_mw,total_cost_delta_eur");
  EXPECT_NE(s.find("undefined"), std::string::npos);
}
