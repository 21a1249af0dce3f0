#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "islandsim/config.hpp"
#include "islandsim/scenario.hpp"
#include "islandsim/simulation.hpp"

namespace islandsim {

/// Ledger files of a scenario inside a sweep directory: <out>/<flag>/<id>.*
struct StorePaths {
  std::filesystem::path hours;
  std::filesystem::path days;
  std::filesystem::path done;
};

StorePaths store_paths(const std::filesystem::path& out, const Scenario& scenario);

struct SweepOptions {
  std::filesystem::path out;
  int workers = 1;
  RunOptions run;
  std::function<void(const std::string&)> log;  // progress lines; may be empty
};

enum class Failure { none, validation, solver, io, other };

struct ScenarioOutcome {
  Scenario scenario;
  AnnualLedger ledger;
  int reused_days = 0;  // days taken from an earlier partial or complete run
  std::string error;    // non-empty if the scenario failed
  Failure failure = Failure::none;

  bool ok() const { return error.empty(); }
};

/// Runs one scenario with its ledger persisted day by day. Completed days found
/// on disk are reused; only the missing days are simulated.
ScenarioOutcome run_stored_scenario(const Config& config, const SeriesSet& series,
                                    const Scenario& scenario, const SweepOptions& options);

/// Runs scenarios on a bounded worker pool. Results follow the input order.
std::vector<ScenarioOutcome> run_sweep(const Config& config, const SeriesSet& series,
                                       const std::vector<Scenario>& scenarios,
                                       const SweepOptions& options);

/// Reads the complete ledger of a finished scenario. Throws IoError if absent.
AnnualLedger load_stored_ledger(const Config& config, const SeriesSet& series,
                                const std::filesystem::path& out, const Scenario& scenario);

RunOptions run_options(const Config& config);

}  // namespace islandsim
