// Acceptance run: one PASS/FAIL line per criterion on stdout, details on stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "islandsim/config.hpp"
#include "islandsim/economics.hpp"
#include "islandsim/hps_agent.hpp"
#include "islandsim/pareto.hpp"
#include "islandsim/report.hpp"
#include "islandsim/scenario.hpp"
#include "islandsim/simulation.hpp"
#include "islandsim/sweep.hpp"
#include "islandsim/uced.hpp"
#include "json.hpp"
#include "support/cases.hpp"

using namespace islandsim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void note(const std::string& s) { std::cerr << "  " << s << '\n'; }

struct Verdict {
  int id = 0;
  bool pass = false;
  std::string what;
  std::string detail;
};

std::vector<Verdict> verdicts;

void verdict(int id, bool pass, const std::string& what, const std::string& detail) {
  verdicts.push_back({id, pass, what, detail});
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << what << "  [" << detail
            << "]" << std::endl;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

void criterion_uc() {
  const auto t0 = Clock::now();
  milp::SolverSettings tight;
  tight.gap_tolerance = 1e-9;
  int n = 0, ok = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; n < 24; ++seed) {
    UcedProblem p;
    p.snapshot = oracle::random_micro_system(seed);
    const auto expected = oracle::uc_enumeration(p.snapshot);
    if (!expected) continue;
    ++n;
    const auto d = solve_uced(p, tight);
    const double rel = std::abs(d.objective - *expected) / std::max(1.0, std::abs(*expected));
    worst = std::max(worst, rel);
    if (d.status == SolveStatus::optimal && rel <= 1e-6) {
      ++ok;
    } else {
      note("uc seed " + std::to_string(seed) + ": solver " + fmt(d.objective, 12) + " vs enumeration " +
           fmt(*expected, 12));
    }
  }
  const double t = seconds(t0);
  verdict(1, ok == n && n >= 20 && t < 60.0, "UC-ED vs commitment enumeration",
          std::to_string(ok) + "/" + std::to_string(n) + " within 1e-6 rel, worst " + fmt(worst, 3) + ", " +
              fmt(t, 3) + " s");
}

void criterion_hps() {
  int n = 0, ok = 0, feasible = 0, zero = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto c = oracle::random_hps_case(seed);
    const auto r = self_dispatch(c.plant, {c.production, c.absorption, 0}, c.res, c.soc);
    const double ref = oracle::hps_grid_search(c);
    const auto& m = c.plant.prices;
    const double tol = 0.1 * (m.sale + m.purchase + m.imbalance);
    ++n;
    if (r.objective >= ref - 1e-6 && r.objective <= ref + tol) {
      ++ok;
    } else {
      note("hps seed " + std::to_string(seed) + ": " + fmt(r.objective, 10) + " vs grid " + fmt(ref, 10));
    }
  }
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    auto c = oracle::random_hps_case(seed);
    c.plant.prices.imbalance = c.plant.prices.sale + 1.0 + static_cast<double>(seed % 50);
    if (!oracle::hps_order_feasible(c)) continue;
    ++feasible;
    const auto r = self_dispatch(c.plant, {c.production, c.absorption, 0}, c.res, c.soc);
    if (r.imbalance_production + r.imbalance_absorption <= 1e-7) {
      ++zero;
    } else {
      note("hps dominance seed " + std::to_string(seed) + ": imbalance " +
           fmt(r.imbalance_production + r.imbalance_absorption));
    }
  }
  verdict(2, ok == n && n >= 100 && zero == feasible && feasible > 0, "HPS agent vs grid search, penalty dominance",
          std::to_string(ok) + "/" + std::to_string(n) + " within grid tolerance, " + std::to_string(zero) + "/" +
              std::to_string(feasible) + " feasible orders without imbalance");
}

void criterion_lcoe() {
  int n = 0, ok = 0;
  double worst = 0.0;
  for (const auto& c : oracle::lcoe_cases()) {
    const auto years = static_cast<std::size_t>(c.p.evaluation_years);
    const std::vector<double> e(years, c.annual_energy), imb(years, c.imbalance);
    const auto inv = storage_and_wind_investment(c.p, c.power, c.energy, c.wind);
    const double ref_c = oracle::dcf_lcoe(c.p, inv.initial, inv.replacement, e, {});
    const auto h = oracle::hps_for(c);
    const double ref_s = oracle::dcf_lcoe(c.p, inv.initial, inv.replacement, e,
                                          std::vector<double>(years, c.imbalance * h.prices.imbalance));
    const auto got_c = lcoe_central(c.p, c.power, c.energy, c.wind, e);
    const auto got_s = lcoe_self(c.p, h, e, imb);
    ++n;
    if (!got_c || !got_s) continue;
    const double d = std::max(std::abs(*got_c - ref_c), std::abs(*got_s - ref_s));
    worst = std::max(worst, d);
    if (d <= 0.01) ++ok;
  }
  EconomicParams p;
  p.discount_rate = 0.0;
  p.tax_rate = 0.0;
  p.om_rate = 0.0;
  const std::vector<double> e(static_cast<std::size_t>(p.evaluation_years), 123456.0);
  const auto inv = storage_and_wind_investment(p, 30, 240, 75);
  const auto collapse = lcoe_central(p, 30, 240, 75, e);
  const double expected = (inv.initial + inv.replacement) / (p.evaluation_years * 123456.0);
  const bool exact = collapse && *collapse == expected;
  verdict(4, ok == n && n >= 10 && exact, "LCOE vs discounted cash flow",
          std::to_string(ok) + "/" + std::to_string(n) + " within 0.01 EUR/MWh, worst " + fmt(worst, 3) +
              ", collapse " + (exact ? "exact" : "off"));
}

void criterion_pareto() {
  std::mt19937_64 rng(4242);
  int ok = 0;
  const int n = 1000;
  for (int k = 0; k < n; ++k) {
    const auto pts = oracle::random_points(rng, k % 2 == 0);
    if (oracle::same_front(extract_pareto(pts), oracle::pareto_bruteforce(pts))) ++ok;
  }
  verdict(5, ok == n, "Pareto extraction vs pairwise dominance", std::to_string(ok) + "/" + std::to_string(n) + " identical");
}

void criterion_capacity_credit(const SeriesSet& series) {
  std::vector<std::string> problems;
  const auto& load = series.load.values;
  const double eff = 0.8;
  double prev_p = 0.0;
  for (double p = 0.0; p <= 75.0; p += 7.5) {
    const double v = capacity_credit(load, p, 240.0, eff);
    if (v < prev_p - 1e-9) problems.push_back("falls with power at " + fmt(p));
    if (v > p + 1e-9) problems.push_back("exceeds power at " + fmt(p));
    prev_p = v;
  }
  double prev_e = 0.0;
  for (double e = 0.0; e <= 600.0; e += 30.0) {
    const double v = capacity_credit(load, 45.0, e, eff);
    if (v < prev_e - 1e-9) problems.push_back("falls with energy at " + fmt(e));
    if (v > 45.0 + 1e-9) problems.push_back("exceeds power at energy " + fmt(e));
    prev_e = v;
  }
  if (capacity_credit(std::vector<double>(24 * 7, 80.0), 30, 240, eff) != 0.0) problems.push_back("flat load not 0");
  std::vector<double> day(24, 100.0);
  day[18] = day[19] = 120.0;
  const double hand = capacity_credit(day, 30, 10, 0.81);
  const double energy_limited = 10.0 * std::sqrt(0.81) / 2.0;
  if (hand != energy_limited) {
    problems.push_back("two-hour peak gives " + fmt(hand, 17) + ", expected " + fmt(energy_limited, 17));
  }
  for (const auto& p : problems) note("capacity credit: " + p);
  verdict(8, problems.empty(), "capacity credit properties",
          "island load: 45 MW / 600 MWh credit " + fmt(prev_e) + " MW, two-hour peak " + fmt(hand, 12) + " MW");
}

// ---------------------------------------------------------------------------

struct AnnualRun {
  Scenario scenario;
  AnnualLedger ledger;
  double wall_s = 0.0;
  std::vector<std::string> problems;
};

AnnualRun annual(const Config& cfg, const SeriesSet& series, const Scenario& sc) {
  AnnualRun r;
  r.scenario = sc;
  const ScenarioSystem sys = build_scenario_system(cfg, series, sc);
  const auto t0 = Clock::now();
  r.ledger = run_scenario(sys, run_options(cfg));
  r.wall_s = seconds(t0);
  r.problems = check_ledger(r.ledger, sys, 1e-6);
  for (auto& p : check_energy_identities(r.ledger, 1e-6)) r.problems.push_back(std::move(p));
  const auto t = summarize(r.ledger);
  note(sc.id + ": " + std::to_string(r.ledger.hours.size()) + " h in " + fmt(r.wall_s) + " s, penetration " +
       fmt(100.0 * t.res_penetration()) + " %, ENS " + fmt(t.energy_not_served) + " MWh, " +
       std::to_string(r.problems.size()) + " check failures");
  return r;
}

double penetration_pp(const AnnualRun& r) { return 100.0 * summarize(r.ledger).res_penetration(); }

void criterion_residuals(const std::vector<const AnnualRun*>& runs, int days) {
  std::size_t failures = 0;
  double slowest = 0.0;
  for (const auto* r : runs) {
    failures += r->problems.size();
    for (std::size_t k = 0; k < std::min<std::size_t>(r->problems.size(), 5); ++k) {
      note(r->scenario.id + ": " + r->problems[k]);
    }
    slowest = std::max(slowest, r->wall_s);
  }
  const bool full_year = days == 365;
  verdict(3, failures == 0 && full_year && slowest < 1800.0, "constraint residuals on annual runs",
          std::to_string(runs.size()) + " runs of " + std::to_string(days) + " days, " + std::to_string(failures) +
              " failures, slowest run " + fmt(slowest) + " s");
}

void criterion_central_vs_self(const Config& cfg, const SeriesSet& series, const AnnualRun& c, const AnnualRun& s) {
  const auto rc = evaluate_scenario(cfg, build_scenario_system(cfg, series, c.scenario), c.ledger, nullptr);
  const auto rs = evaluate_scenario(cfg, build_scenario_system(cfg, series, s.scenario), s.ledger, nullptr);
  const double pc = 100.0 * rc.res_penetration;
  const double ps = 100.0 * rs.res_penetration;
  const bool lcoe_ok = rc.lcoe && rs.lcoe && *rc.lcoe < *rs.lcoe;
  const bool pen_ok = pc >= ps - 0.5;
  verdict(6, lcoe_ok && pen_ok, "central vs self at 30 MW / 240 MWh, 75 MW new wind",
          "LCOE central " + (rc.lcoe ? fmt(*rc.lcoe) : std::string("undefined")) + " vs self " +
              (rs.lcoe ? fmt(*rs.lcoe) : std::string("undefined")) + " EUR/MWh, penetration central " + fmt(pc) +
              " % vs self " + fmt(ps) + " %");
}

void criterion_energy_sensitivity(const AnnualRun& c2, const AnnualRun& c10, const AnnualRun& s2,
                                  const AnnualRun& s10) {
  const double dc = std::abs(penetration_pp(c10) - penetration_pp(c2));
  const double ds = std::abs(penetration_pp(s10) - penetration_pp(s2));
  verdict(7, dc < 2.0 && ds > dc, "energy sensitivity at 45 MW, 2 h to 10 h",
          "central change " + fmt(dc) + " pp, self change " + fmt(ds) + " pp");
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string manifest_without_wall_time(const fs::path& p) {
  auto j = nlohmann::ordered_json::parse(slurp(p));
  j.erase("wall_time_s");
  return j.dump();
}

std::map<std::string, std::string> report_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), dir).generic_string();
    if (rel.rfind("ledgers/", 0) == 0) continue;
    out[rel] = rel == "manifest.json" ? manifest_without_wall_time(e.path()) : slurp(e.path());
  }
  return out;
}

void criterion_determinism(const Config& base_cfg, const SeriesSet& series, const fs::path& out, int workers) {
  Config cfg = base_cfg;
  cfg.simulation.days = 14;
  cfg.sweep.report_week = 2;
  cfg.sweep.central = {{15.0, 30.0}, {2.0, 8.0}};
  cfg.sweep.self = {{30.0}, {8.0}};
  const auto plan = sweep_plan(cfg);
  std::map<std::string, std::string> first;
  bool same = true;
  std::string detail;
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path dir = out / ("determinism_" + std::to_string(pass));
    fs::remove_all(dir);
    SweepOptions opt;
    opt.out = dir / "ledgers";
    opt.workers = workers;
    opt.run = run_options(cfg);
    const auto outcomes = run_sweep(cfg, series, plan, opt);
    std::vector<ReportInput> done;
    for (const auto& o : outcomes) {
      if (!o.ok()) {
        note("determinism: " + o.scenario.id + " failed: " + o.error);
        same = false;
        continue;
      }
      done.push_back({o.scenario, o.ledger});
    }
    RunInfo info;
    info.config_hash = config_hash(cfg);
    info.seed = cfg.series.seed;
    info.solver = cfg.solver;
    info.workers = workers;
    info.days = cfg.simulation.days;
    info.wall_time_s = static_cast<double>(pass);
    write_reports(cfg, series, done, info, dir);
    auto files = report_files(dir);
    if (pass == 0) {
      first = std::move(files);
      continue;
    }
    if (files.size() != first.size()) same = false;
    for (const auto& [name, bytes] : first) {
      const auto it = files.find(name);
      if (it == files.end() || it->second != bytes) {
        note("determinism: " + name + " differs");
        same = false;
      }
    }
    detail = std::to_string(plan.size()) + " scenarios x 14 days, " + std::to_string(first.size()) +
             " report files compared";
  }
  verdict(9, same, "byte-identical reports across two sweep runs", detail);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string out = "acceptance_out";
  int days = 365;
  int workers = 1;
  std::vector<int> only;
  app.add_option("--out", out, "Scratch directory");
  app.add_option("--days", days, "Days of the long runs (365 for the full check)")->check(CLI::Range(1, 365));
  app.add_option("--workers", workers, "Parallel scenarios in the sweep check")->check(CLI::PositiveNumber);
  app.add_option("--only", only, "Criteria to run (default: all)");
  CLI11_PARSE(app, argc, argv);
  auto want = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };

  fs::create_directories(out);
  Config cfg = default_config(true);
  cfg.simulation.days = days;
  const SeriesSet series = load_series(cfg.series);

  if (want(1)) criterion_uc();
  if (want(2)) criterion_hps();
  if (want(4)) criterion_lcoe();
  if (want(5)) criterion_pareto();
  if (want(8)) criterion_capacity_credit(series);
  if (want(9)) criterion_determinism(cfg, series, out, workers);

  if (want(3) || want(6) || want(7)) {
    const double wind = cfg.sweep.new_wind_mw;
    const auto c30 = annual(cfg, series, make_scenario(Management::central, wind, 30.0, 8.0));
    const auto s30 = annual(cfg, series, make_scenario(Management::self, wind, 30.0, 8.0));
    if (want(3)) criterion_residuals({&c30, &s30}, days);
    if (want(6)) criterion_central_vs_self(cfg, series, c30, s30);
    if (want(7)) {
      const auto c2 = annual(cfg, series, make_scenario(Management::central, wind, 45.0, 2.0));
      const auto c10 = annual(cfg, series, make_scenario(Management::central, wind, 45.0, 10.0));
      const auto s2 = annual(cfg, series, make_scenario(Management::self, wind, 45.0, 2.0));
      const auto s10 = annual(cfg, series, make_scenario(Management::self, wind, 45.0, 10.0));
      criterion_energy_sensitivity(c2, c10, s2, s10);
    }
  }

  std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& a, const Verdict& b) { return a.id < b.id; });
  int failed = 0;
  std::cout << "summary:";
  for (const auto& v : verdicts) {
    std::cout << ' ' << v.id << '=' << (v.pass ? "PASS" : "FAIL");
    failed += !v.pass;
  }
  std::cout << std::endl;
  return failed == 0 ? 0 : 1;
}
