#include "islandsim/sweep.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "islandsim/errors.hpp"

namespace islandsim {

namespace fs = std::filesystem;

StorePaths store_paths(const fs::path& out, const Scenario& s) {
  const fs::path dir = out / store_flag(s.management);
  return {dir / (s.id + ".hours.csv"), dir / (s.id + ".days.csv"), dir / (s.id + ".done")};
}

RunOptions run_options(const Config& c) {
  RunOptions o;
  o.solver = c.solver;
  o.days = c.simulation.days;
  o.release_reserves = c.simulation.release_reserves;
  o.forecast_noise = c.simulation.forecast_noise;
  o.seed = c.series.seed;
  return o;
}

namespace {

std::ofstream open_out(const fs::path& p, std::ios::openmode mode) {
  std::ofstream f(p, mode | std::ios::binary);
  if (!f) throw IoError(p.string(), "cannot write ledger file");
  return f;
}

}  // namespace

ScenarioOutcome run_stored_scenario(const Config& config, const SeriesSet& series,
                                    const Scenario& scenario, const SweepOptions& options) {
  ScenarioOutcome outcome;
  outcome.scenario = scenario;
  const ScenarioSystem sys = build_scenario_system(config, series, scenario);
  ScenarioRunner runner(sys, options.run);
  const StorePaths paths = store_paths(options.out, scenario);
  std::error_code ec;
  fs::create_directories(paths.hours.parent_path(), ec);
  if (ec) throw IoError(paths.hours.parent_path().string(), ec.message());

  AnnualLedger ledger = runner.empty_ledger();
  if (fs::exists(paths.hours) && fs::exists(paths.days)) {
    ledger = read_ledger(paths.hours, paths.days, ledger);
    if (static_cast<int>(ledger.days.size()) > options.run.days) {
      ledger.days.resize(static_cast<std::size_t>(options.run.days));
      ledger.hours.resize(static_cast<std::size_t>(options.run.days) * 24);
    }
  }
  outcome.reused_days = static_cast<int>(ledger.days.size());

  // rewrite the complete days so a torn tail never survives
  {
    auto h = open_out(paths.hours, std::ios::trunc);
    auto d = open_out(paths.days, std::ios::trunc);
    write_hour_header(ledger, h);
    write_day_header(ledger, d);
    for (const auto& r : ledger.hours) write_hour_row(ledger, r, h);
    for (const auto& r : ledger.days) write_day_row(ledger, r, d);
  }
  if (outcome.reused_days < options.run.days) fs::remove(paths.done, ec);

  OperatingState state = runner.state_after(ledger);
  auto hours_out = open_out(paths.hours, std::ios::app);
  auto days_out = open_out(paths.days, std::ios::app);
  for (int day = outcome.reused_days; day < options.run.days; ++day) {
    const std::size_t first = ledger.hours.size();
    runner.run_day(day, state, ledger);
    for (std::size_t k = first; k < ledger.hours.size(); ++k) write_hour_row(ledger, ledger.hours[k], hours_out);
    write_day_row(ledger, ledger.days.back(), days_out);
    hours_out.flush();
    days_out.flush();
    if (!hours_out || !days_out) throw IoError(paths.hours.string(), "write failed");
  }
  {
    auto done = open_out(paths.done, std::ios::trunc);
    done << options.run.days << '\n';
  }
  outcome.ledger = std::move(ledger);
  return outcome;
}

std::vector<ScenarioOutcome> run_sweep(const Config& config, const SeriesSet& series,
                                       const std::vector<Scenario>& scenarios,
                                       const SweepOptions& options) {
  std::vector<ScenarioOutcome> results(scenarios.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto log = [&](const std::string& line) {
    if (!options.log) return;
    std::lock_guard<std::mutex> lock(log_mutex);
    options.log(line);
  };
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      const Scenario& s = scenarios[i];
      try {
        results[i] = run_stored_scenario(config, series, s, options);
        log(s.id + ": done (" + std::to_string(results[i].reused_days) + " days reused)");
      } catch (const std::exception& e) {
        results[i].scenario = s;
        results[i].error = e.what();
        if (dynamic_cast<const ValidationError*>(&e)) results[i].failure = Failure::validation;
        else if (dynamic_cast<const SolverError*>(&e)) results[i].failure = Failure::solver;
        else if (dynamic_cast<const IoError*>(&e)) results[i].failure = Failure::io;
        else results[i].failure = Failure::other;
        log(s.id + ": failed: " + e.what());
      }
    }
  };
  const int n = std::max(1, std::min<int>(options.workers, static_cast<int>(scenarios.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

AnnualLedger load_stored_ledger(const Config& config, const SeriesSet& series, const fs::path& out,
                                const Scenario& scenario) {
  const ScenarioSystem sys = build_scenario_system(config, series, scenario);
  ScenarioRunner runner(sys, run_options(config));
  const StorePaths paths = store_paths(out, scenario);
  if (!fs::exists(paths.done)) throw IoError(paths.done.string(), "scenario has not completed");
  return read_ledger(paths.hours, paths.days, runner.empty_ledger());
}

}  // namespace islandsim
