#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "islandsim/config.hpp"
#include "islandsim/economics.hpp"
#include "islandsim/pareto.hpp"
#include "islandsim/simulation.hpp"

namespace islandsim {

/// Economic figures of one simulated scenario. `base` is the reference run
/// (no new assets) of the same system; without it the cost deltas are undefined.
EconomicReport evaluate_scenario(const Config& config, const ScenarioSystem& system,
                                 const AnnualLedger& ledger, const AnnualTotals* base);

/// Cost figures of a ledger scaled to a full year.
CostSummary cost_summary(const AnnualLedger& ledger);

/// Hourly production stack and storage levels of week 1..52. Throws
/// std::out_of_range for other weeks or weeks the ledger does not cover.
void write_weekly_extract(const AnnualLedger& ledger, int week, std::ostream& os);

struct ReportInput {
  Scenario scenario;
  AnnualLedger ledger;
};

struct RunInfo {
  std::string config_hash;
  std::uint64_t seed = 0;
  milp::SolverSettings solver;
  int workers = 1;
  int days = 365;
  double wall_time_s = 0.0;
};

/// Writes economic_report.csv, pareto.csv, weekly/<id>_week<NN>.csv and
/// manifest.json into `out`. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> write_reports(const Config& config, const SeriesSet& series,
                                                 const std::vector<ReportInput>& results,
                                                 const RunInfo& info,
                                                 const std::filesystem::path& out);

/// Front of each management concept from report rows with a defined LCOE.
std::vector<ParetoPoint> pareto_points(const std::vector<EconomicReport>& rows,
                                       const std::string& management);

/// Parses economic_report.csv. Throws IoError.
std::vector<EconomicReport> read_economic_reports(const std::filesystem::path& path);

}  // namespace islandsim
