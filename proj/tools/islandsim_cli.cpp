#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "islandsim/config.hpp"
#include "islandsim/errors.hpp"
#include "islandsim/pareto.hpp"
#include "islandsim/report.hpp"
#include "islandsim/scenario.hpp"
#include "islandsim/series.hpp"
#include "islandsim/simulation.hpp"
#include "islandsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace islandsim;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kSolver = 3;
constexpr int kIo = 4;

struct Common {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> gap;
  std::optional<double> time_limit;
  std::optional<int> workers;
  bool reduced = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON configuration (default: built-in island)");
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--seed", c.seed, "Series seed");
  cmd->add_option("--gap", c.gap, "Relative MIP gap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--time-limit", c.time_limit, "Solver time limit per problem [s]")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Parallel scenarios")->check(CLI::PositiveNumber);
  cmd->add_flag("--reduced", c.reduced, "Use the built-in 3-unit island when no --config is given");
}

Config resolve_config(const Common& c) {
  Config cfg = c.config.empty() ? default_config(c.reduced) : load_config(c.config);
  if (c.seed) cfg.series.seed = *c.seed;
  if (c.gap) cfg.solver.gap_tolerance = *c.gap;
  if (c.time_limit) cfg.solver.time_limit = *c.time_limit;
  if (c.workers) cfg.workers = *c.workers;
  const auto violations = validate_config(cfg);
  if (!violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  " + v.to_string();
    throw ValidationError(msg);
  }
  return cfg;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string(), ec.message());
}

void log_line(const std::string& s) { std::cerr << s << '\n'; }

int exit_code(const std::vector<ScenarioOutcome>& outcomes) {
  int code = kOk;
  for (const auto& o : outcomes) {
    if (o.ok()) continue;
    switch (o.failure) {
      case Failure::validation: code = std::max(code, kValidation); break;
      case Failure::io: code = std::max(code, kIo); break;
      default: code = std::max(code, kSolver); break;
    }
  }
  return code;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunInfo run_info(const Config& cfg, double wall) {
  RunInfo info;
  info.config_hash = config_hash(cfg);
  info.seed = cfg.series.seed;
  info.solver = cfg.solver;
  info.workers = cfg.workers;
  info.days = cfg.simulation.days;
  info.wall_time_s = wall;
  return info;
}

int cmd_validate(const Common& c) {
  const Config cfg = resolve_config(c);
  const SeriesSet s = load_series(cfg.series);
  const auto plan = sweep_plan(cfg);
  for (const auto& sc : plan) build_scenario_system(cfg, s, sc);
  const fs::path out(c.out);
  make_dir(out);
  std::ofstream f(out / "config.json", std::ios::binary);
  f << dump_config(cfg);
  if (!f) throw IoError((out / "config.json").string(), "write failed");
  std::cout << "config ok: " << cfg.system.thermal_units.size() << " thermal units, " << plan.size()
            << " scenarios, load peak " << s.load.peak() << " MW, load factor " << s.load.factor()
            << ", hash " << config_hash(cfg) << '\n';
  return kOk;
}

int cmd_synthesize(const Common& c) {
  const Config cfg = resolve_config(c);
  const SeriesSet s = load_series(cfg.series);
  const fs::path out(c.out);
  make_dir(out);
  write_csv(s.load, out / "load.csv");
  write_csv(s.wind, out / "wind.csv");
  write_csv(s.new_wind, out / "new_wind.csv");
  write_csv(s.pv, out / "pv.csv");
  std::cout << "load: peak " << s.load.peak() << " MW, load factor " << s.load.factor() << '\n'
            << "wind: capacity factor " << s.wind.factor() << '\n'
            << "new_wind: capacity factor " << s.new_wind.factor() << '\n'
            << "pv: capacity factor " << s.pv.factor() << '\n';
  return kOk;
}

struct RunArgs {
  std::string management = "central";
  std::optional<double> wind;
  double power = 0.0;
  double hours = 0.0;
  std::optional<int> days;
};

int cmd_run(const Common& c, const RunArgs& a) {
  Config cfg = resolve_config(c);
  if (a.days) cfg.simulation.days = *a.days;
  const SeriesSet series = load_series(cfg.series);
  const Scenario sc = a.management == "base"
                          ? base_scenario()
                          : make_scenario(management_from_string(a.management),
                                          a.wind.value_or(cfg.sweep.new_wind_mw), a.power, a.hours);
  const fs::path out(c.out);
  make_dir(out);
  SweepOptions opt;
  opt.out = out / "ledgers";
  opt.workers = 1;
  opt.run = run_options(cfg);
  opt.log = log_line;
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcomes = run_sweep(cfg, series, {sc}, opt);
  if (!outcomes.front().ok()) {
    std::cerr << "error: " << outcomes.front().error << '\n';
    return exit_code(outcomes);
  }
  const auto& ledger = outcomes.front().ledger;
  const ScenarioSystem sys = build_scenario_system(cfg, series, sc);
  const AnnualTotals t = summarize(ledger);
  std::cout << sc.id << ": " << ledger.hours.size() << " h, RES penetration " << t.res_penetration()
            << ", energy not served " << t.energy_not_served << " MWh\n";
  const auto problems = check_ledger(ledger, sys, 1e-6);
  for (const auto& p : problems) std::cerr << "ledger check: " << p << '\n';
  write_reports(cfg, series, {{sc, ledger}}, run_info(cfg, seconds_since(t0)), out);
  return problems.empty() ? kOk : kSolver;
}

int cmd_sweep(const Common& c, std::optional<int> days) {
  Config cfg = resolve_config(c);
  if (days) cfg.simulation.days = *days;
  const SeriesSet series = load_series(cfg.series);
  const auto plan = sweep_plan(cfg);
  const fs::path out(c.out);
  make_dir(out);
  SweepOptions opt;
  opt.out = out / "ledgers";
  opt.workers = cfg.workers;
  opt.run = run_options(cfg);
  opt.log = log_line;
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcomes = run_sweep(cfg, series, plan, opt);
  std::vector<ReportInput> done;
  for (const auto& o : outcomes) {
    if (o.ok()) done.push_back({o.scenario, o.ledger});
  }
  if (!done.empty()) write_reports(cfg, series, done, run_info(cfg, seconds_since(t0)), out);
  std::cout << done.size() << " of " << plan.size() << " scenarios completed\n";
  return exit_code(outcomes);
}

int cmd_report(const Common& c, std::optional<int> week, std::optional<int> days) {
  Config cfg = resolve_config(c);
  if (week) cfg.sweep.report_week = *week;
  if (days) cfg.simulation.days = *days;
  const SeriesSet series = load_series(cfg.series);
  const fs::path out(c.out);
  std::vector<ReportInput> done;
  for (const auto& sc : sweep_plan(cfg)) {
    if (!fs::exists(store_paths(out / "ledgers", sc).done)) continue;
    done.push_back({sc, load_stored_ledger(cfg, series, out / "ledgers", sc)});
  }
  if (done.empty()) throw ValidationError("no completed scenario under " + (out / "ledgers").string());
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& p : write_reports(cfg, series, done, run_info(cfg, seconds_since(t0)), out)) {
    std::cout << p.string() << '\n';
  }
  return kOk;
}

int cmd_pareto(const Common& c, const std::string& input) {
  const fs::path out(c.out);
  const fs::path in = input.empty() ? out / "economic_report.csv" : fs::path(input);
  const auto rows = read_economic_reports(in);
  make_dir(out);
  const fs::path path = out / "pareto.csv";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(path.string(), "cannot write");
  write_pareto_header(f);
  for (const char* m : {"central", "self"}) {
    const auto front = extract_pareto(pareto_points(rows, m));
    write_pareto_rows(m, front, f);
    std::cout << m << ": " << front.size() << " front points\n";
  }
  f.close();
  if (!f) throw IoError(path.string(), "write failed");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Island power system storage simulator"};
  app.require_subcommand(1);

  Common common;
  RunArgs run_args;
  std::optional<int> days, week;
  std::string input;

  auto* validate = app.add_subcommand("validate", "Check a configuration and its input series");
  add_common(validate, common);
  auto* synth = app.add_subcommand("synthesize", "Write the hourly load, wind and pv series");
  add_common(synth, common);
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  add_common(run, common);
  run->add_option("--management", run_args.management, "central, self or base")
      ->check(CLI::IsMember({"central", "self", "base"}));
  run->add_option("--wind", run_args.wind, "New wind capacity [MW]")->check(CLI::NonNegativeNumber);
  run->add_option("--power", run_args.power, "Storage power [MW]")->check(CLI::NonNegativeNumber);
  run->add_option("--hours", run_args.hours, "Storage duration [h]")->check(CLI::NonNegativeNumber);
  run->add_option("--days", run_args.days, "Simulated days")->check(CLI::Range(1, 365));
  auto* sweep = app.add_subcommand("sweep", "Simulate every scenario of the sweep and report");
  add_common(sweep, common);
  sweep->add_option("--days", days, "Simulated days")->check(CLI::Range(1, 365));
  auto* pareto = app.add_subcommand("pareto", "Extract the fronts from an economic report");
  add_common(pareto, common);
  pareto->add_option("--input", input, "economic_report.csv (default: <out>/economic_report.csv)");
  auto* report = app.add_subcommand("report", "Write reports from stored ledgers");
  add_common(report, common);
  report->add_option("--week", week, "Week of the operation extract");
  report->add_option("--days", days, "Simulated days")->check(CLI::Range(1, 365));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*validate) return cmd_validate(common);
    if (*synth) return cmd_synthesize(common);
    if (*run) return cmd_run(common, run_args);
    if (*sweep) return cmd_sweep(common, days);
    if (*pareto) return cmd_pareto(common, input);
    if (*report) return cmd_report(common, week, days);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  }
  return kOk;
}
