#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "islandsim/config.hpp"
#include "islandsim/report.hpp"
#include "islandsim/scenario.hpp"
#include "islandsim/simulation.hpp"
#include "islandsim/sweep.hpp"
#include "support/oracles.hpp"

using namespace islandsim;
namespace fs = std::filesystem;

namespace {

const Config& reduced() {
  static const Config c = [] {
    Config cfg = default_config(true);
    cfg.simulation.days = 2;
    return cfg;
  }();
  return c;
}

const SeriesSet& series() {
  static const SeriesSet s = load_series(reduced().series);
  return s;
}

AnnualLedger run(const Scenario& sc, int days = 2) {
  const ScenarioSystem sys = build_scenario_system(reduced(), series(), sc);
  RunOptions opt = run_options(reduced());
  opt.days = days;
  return run_scenario(sys, opt);
}

std::string hours_csv(const AnnualLedger& l) {
  std::ostringstream os;
  write_hour_header(l, os);
  for (const auto& r : l.hours) write_hour_row(l, r, os);
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("islandsim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Simulation, CentralLedgerPassesChecks) {
  const Scenario sc = make_scenario(Management::central, 75.0, 30.0, 8.0);
  const auto sys = build_scenario_system(reduced(), series(), sc);
  const auto ledger = run(sc);
  ASSERT_EQ(ledger.hours.size(), 48u);
  ASSERT_EQ(ledger.days.size(), 2u);
  for (const auto& p : check_ledger(ledger, sys)) ADD_FAILURE() << p;
  for (const auto& p : check_energy_identities(ledger, 1e-6)) ADD_FAILURE() << p;
  for (std::size_t k = 0; k < ledger.hours.size(); ++k) EXPECT_EQ(ledger.hours[k].hour, static_cast<int>(k));
}

TEST(Simulation, SelfLedgerPassesChecks) {
  const Scenario sc = make_scenario(Management::self, 75.0, 30.0, 8.0);
  const auto sys = build_scenario_system(reduced(), series(), sc);
  const auto ledger = run(sc);
  ASSERT_EQ(ledger.hours.size(), 48u);
  for (const auto& p : check_ledger(ledger, sys)) ADD_FAILURE() << p;
  for (const auto& p : check_energy_identities(ledger, 1e-6)) ADD_FAILURE() << p;
}

TEST(Simulation, Deterministic) {
  const Scenario sc = make_scenario(Management::self, 75.0, 30.0, 6.0);
  EXPECT_EQ(hours_csv(run(sc, 1)), hours_csv(run(sc, 1)));
}

TEST(Simulation, EmptyStorageMatchesNoStorage) {
  const Scenario none = make_scenario(Management::central, 75.0, 0.0, 0.0);
  const Scenario zero = make_scenario(Management::central, 75.0, 0.0, 4.0);
  const auto a = summarize(run(none, 1));
  const auto b = summarize(run(zero, 1));
  EXPECT_NEAR(a.thermal_energy, b.thermal_energy, 1e-6);
  EXPECT_NEAR(a.wind_curtailed, b.wind_curtailed, 1e-6);
  EXPECT_NEAR(a.conventional_cost, b.conventional_cost, 1e-3);
}

TEST(Simulation, BaseCaseHasNoNewAssets) {
  const auto ledger = run(base_scenario(), 1);
  const auto t = summarize(ledger);
  EXPECT_EQ(t.wind_new_available, 0.0);
  EXPECT_EQ(t.bes_charge + t.bes_discharge, 0.0);
  EXPECT_TRUE(ledger.hps_ids.empty());
  EXPECT_GT(t.res_penetration(), 0.0);
  EXPECT_LT(t.res_penetration(), 1.0);
}

TEST(Simulation, SelfImbalanceOnlyWhenOrderInfeasible) {
  const Scenario sc = make_scenario(Management::self, 75.0, 30.0, 8.0);
  const auto sys = build_scenario_system(reduced(), series(), sc);
  const auto& plant = sys.hps_plants.at(0);
  ASSERT_GT(plant.prices.imbalance, plant.prices.sale);
  const auto ledger = run(sc);
  double soc = plant.storage.initial_soc;
  int feasible = 0;
  for (const auto& r : ledger.hours) {
    const auto& h = r.hps.at(0);
    oracle::HpsCase c{plant, h.order_production, h.order_absorption, h.res_available, soc};
    if (oracle::hps_order_feasible(c)) {
      ++feasible;
      EXPECT_NEAR(h.realization.imbalance_production, 0.0, 1e-6) << "hour " << r.hour;
      EXPECT_NEAR(h.realization.imbalance_absorption, 0.0, 1e-6) << "hour " << r.hour;
    }
    soc = h.realization.end_soc;
  }
  EXPECT_GT(feasible, 0);
}

TEST(Simulation, StoredScenarioResumes) {
  const fs::path dir = scratch("resume");
  const Scenario sc = make_scenario(Management::central, 75.0, 15.0, 4.0);
  SweepOptions opt;
  opt.out = dir;
  opt.run = run_options(reduced());
  opt.run.days = 1;
  const auto first = run_stored_scenario(reduced(), series(), sc, opt);
  ASSERT_TRUE(first.ok()) << first.error;
  EXPECT_EQ(first.ledger.hours.size(), 24u);

  opt.run.days = 2;
  const auto second = run_stored_scenario(reduced(), series(), sc, opt);
  ASSERT_TRUE(second.ok()) << second.error;
  EXPECT_EQ(second.reused_days, 1);
  EXPECT_EQ(second.ledger.hours.size(), 48u);
  EXPECT_EQ(hours_csv(second.ledger), hours_csv(run(sc, 2)));

  const auto again = run_stored_scenario(reduced(), series(), sc, opt);
  EXPECT_EQ(again.reused_days, 2);
  EXPECT_EQ(hours_csv(again.ledger), hours_csv(second.ledger));

  Config cfg = reduced();
  cfg.simulation.days = 2;
  EXPECT_EQ(hours_csv(load_stored_ledger(cfg, series(), dir, sc)), hours_csv(second.ledger));
  fs::remove_all(dir);
}

TEST(Simulation, LedgerFilesRoundTrip) {
  const auto ledger = run(make_scenario(Management::self, 75.0, 30.0, 8.0), 1);
  const fs::path dir = scratch("ledger");
  {
    std::ofstream h(dir / "h.csv", std::ios::binary), d(dir / "d.csv", std::ios::binary);
    write_hour_header(ledger, h);
    for (const auto& r : ledger.hours) write_hour_row(ledger, r, h);
    write_day_header(ledger, d);
    for (const auto& r : ledger.days) write_day_row(ledger, r, d);
  }
  AnnualLedger shape = ledger;
  shape.hours.clear();
  shape.days.clear();
  const auto back = read_ledger(dir / "h.csv", dir / "d.csv", shape);
  EXPECT_EQ(hours_csv(back), hours_csv(ledger));
  ASSERT_EQ(back.days.size(), 1u);
  EXPECT_EQ(back.days[0].das_offer, ledger.days[0].das_offer);
  fs::remove_all(dir);
}

TEST(Simulation, TruncatedLedgerDropsPartialDay) {
  const auto ledger = run(make_scenario(Management::central, 75.0, 15.0, 4.0), 1);
  const fs::path dir = scratch("partial");
  {
    std::ofstream h(dir / "h.csv", std::ios::binary), d(dir / "d.csv", std::ios::binary);
    write_hour_header(ledger, h);
    for (std::size_t k = 0; k < 10; ++k) write_hour_row(ledger, ledger.hours[k], h);
    write_day_header(ledger, d);
  }
  AnnualLedger shape = ledger;
  shape.hours.clear();
  shape.days.clear();
  const auto back = read_ledger(dir / "h.csv", dir / "d.csv", shape);
  EXPECT_TRUE(back.hours.empty());
  fs::remove_all(dir);
}

TEST(Reports, WritesFilesAndIsRepeatable) {
  Config cfg = reduced();
  cfg.sweep.report_week = 1;
  const Scenario base = base_scenario();
  const Scenario c = make_scenario(Management::central, 75.0, 30.0, 8.0);
  const Scenario s = make_scenario(Management::self, 75.0, 30.0, 8.0);
  std::vector<ReportInput> in{{base, run(base)}, {c, run(c)}, {s, run(s)}};
  RunInfo info;
  info.days = 2;
  const fs::path a = scratch("report_a");
  const fs::path b = scratch("report_b");
  const auto files = write_reports(cfg, series(), in, info, a);
  write_reports(cfg, series(), in, info, b);
  ASSERT_FALSE(files.empty());
  for (const auto& p : files) {
    const fs::path rel = fs::relative(p, a);
    EXPECT_EQ(slurp(p), slurp(b / rel)) << rel;
  }
  const auto rows = read_economic_reports(a / "economic_report.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].lcoe.has_value());
  EXPECT_TRUE(rows[1].lcoe.has_value());
  EXPECT_TRUE(rows[1].system_cost_delta.has_value());
  EXPECT_TRUE(fs::exists(a / "pareto.csv"));
  EXPECT_TRUE(fs::exists(a / "manifest.json"));
  EXPECT_FALSE(fs::exists(a / "weekly" / (c.id + "_week01.csv")));  // two days do not cover week 1
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Reports, WeekOutsideYearRejected) {
  const auto ledger = run(make_scenario(Management::central, 75.0, 15.0, 4.0), 1);
  std::ostringstream os;
  EXPECT_THROW(write_weekly_extract(ledger, 53, os), std::out_of_range);
  EXPECT_THROW(write_weekly_extract(ledger, 0, os), std::out_of_range);
  EXPECT_THROW(write_weekly_extract(ledger, 2, os), std::out_of_range);
}

TEST(Reports, WeeklyExtractHasOneRowPerHour) {
  Config cfg = reduced();
  const Scenario sc = make_scenario(Management::self, 75.0, 30.0, 8.0);
  RunOptions opt = run_options(cfg);
  opt.days = 7;
  const auto ledger = run_scenario(build_scenario_system(cfg, series(), sc), opt);
  std::ostringstream os;
  write_weekly_extract(ledger, 1, os);
  std::istringstream is(os.str());
  std::string line;
  int n = 0;
  while (std::getline(is, line)) ++n;
  EXPECT_EQ(n, 1 + 168);
}
