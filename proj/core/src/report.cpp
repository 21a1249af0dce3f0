#include "islandsim/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "islandsim/errors.hpp"
#include "numfmt.hpp"

namespace islandsim {

namespace fs = std::filesystem;

namespace {

double year_scale(const AnnualLedger& l) {
  return l.hours.empty() ? 0.0 : static_cast<double>(kHoursPerYear) / static_cast<double>(l.hours.size());
}

double share(double part, double whole) { return whole > 0.0 ? part / whole : 0.0; }

}  // namespace

CostSummary cost_summary(const AnnualLedger& ledger) {
  const AnnualTotals a = summarize(ledger);
  const double k = year_scale(ledger);
  CostSummary c;
  c.hours = kHoursPerYear;
  c.conventional_variable_cost = k * a.conventional_cost;
  c.existing_res_energy = k * (a.wind_existing_injected + a.pv);
  c.new_asset_energy = k * (ledger.scenario.management == Management::central ? a.wind_new_injected
                                                                                : a.hps_net_injection());
  return c;
}

EconomicReport evaluate_scenario(const Config& config, const ScenarioSystem& system,
                                 const AnnualLedger& ledger, const AnnualTotals* base) {
  const Scenario& s = ledger.scenario;
  const AnnualTotals a = summarize(ledger);
  const double k = year_scale(ledger);
  const auto& p = config.economics;
  const auto years = static_cast<std::size_t>(p.evaluation_years);

  EconomicReport r;
  r.scenario = s.id;
  r.management = to_string(s.management);
  r.new_wind_mw = s.new_wind_mw;
  r.bes_power_mw = s.bes_power_mw;
  r.bes_energy_mwh = s.bes_energy_mwh();
  r.res_penetration = a.res_penetration();
  r.curtailment_existing_wind = share(a.wind_existing_available - a.wind_existing_injected, a.wind_existing_available);
  if (s.management == Management::central) {
    r.curtailment_new_wind = share(a.wind_new_available - a.wind_new_injected, a.wind_new_available);
  } else {
    r.curtailment_new_wind = share(a.hps_res_rejected, a.hps_res_available);
    r.curtailment_hps = r.curtailment_new_wind;
  }

  if (!s.is_base()) {
    if (s.management == Management::central) {
      r.lcoe = lcoe_central(p, s.bes_power_mw, s.bes_energy_mwh(), s.new_wind_mw,
                            std::vector<double>(years, k * a.wind_new_injected));
    } else {
      r.lcoe = lcoe_self(p, system.hps_plants.front(), std::vector<double>(years, k * a.hps_net_injection()),
                         std::vector<double>(years, k * a.hps_imbalance));
    }
  }
  if (s.bes_power_mw > 0.0 && s.bes_energy_mwh() > 0.0) {
    r.capacity_credit_mw = capacity_credit(system.load, s.bes_power_mw, s.bes_energy_mwh(),
                                           config.system.bes_roundtrip_eff);
  }
  if (base != nullptr) {
    CostSummary b;
    b.hours = kHoursPerYear;
    const double kb = base->hours > 0 ? static_cast<double>(kHoursPerYear) / base->hours : 0.0;
    b.conventional_variable_cost = kb * base->conventional_cost;
    b.existing_res_energy = kb * (base->wind_existing_injected + base->pv);
    const CostSummary sc = cost_summary(ledger);
    r.system_cost_delta = system_cost_impact(b, sc, r.lcoe.value_or(0.0), p.existing_res_tariff);
    r.total_cost_delta = total_cost_impact(*r.system_cost_delta, r.capacity_credit_mw, p.thermal_annualized_fixed);
  }
  return r;
}

void write_weekly_extract(const AnnualLedger& l, int week, std::ostream& os) {
  using detail::num;
  if (week < 1 || week > 52) throw std::out_of_range("week must lie in 1..52, got " + std::to_string(week));
  const std::size_t first = static_cast<std::size_t>(week - 1) * 168;
  if (first + 168 > l.hours.size()) {
    throw std::out_of_range("week " + std::to_string(week) + " is not covered by the simulated days");
  }
  os << "hour,timestamp,load,thermal,wind_existing,wind_new,wind_curtailment,pv,bes_charge,"
        "bes_discharge,bes_soc,hps_injection,hps_absorption,hps_res_rejected,hps_soc,ens\n";
  for (std::size_t k = first; k < first + 168; ++k) {
    const auto& r = l.hours[k];
    double thermal = 0.0, ch = 0.0, dch = 0.0, soc = 0.0, inj = 0.0, abs = 0.0, rej = 0.0, hsoc = 0.0;
    for (double v : r.unit_output) thermal += v;
    for (double v : r.bes_charge) ch += v;
    for (double v : r.bes_discharge) dch += v;
    for (double v : r.bes_soc) soc += v;
    for (const auto& h : r.hps) {
      inj += h.realization.injection();
      abs += h.realization.absorption();
      rej += h.realization.res_rejected;
      hsoc += h.realization.end_soc;
    }
    os << r.hour << ',' << hour_timestamp(r.hour) << ',' << num(r.load) << ',' << num(thermal) << ','
       << num(r.wind_existing) << ',' << num(r.wind_new) << ',' << num(r.wind_curtailment) << ','
       << num(r.pv) << ',' << num(ch) << ',' << num(dch) << ',' << num(soc) << ',' << num(inj) << ','
       << num(abs) << ',' << num(rej) << ',' << num(hsoc) << ',' << num(r.energy_not_served) << '\n';
  }
}

std::vector<ParetoPoint> pareto_points(const std::vector<EconomicReport>& rows, const std::string& management) {
  std::vector<ParetoPoint> pts;
  for (const auto& r : rows) {
    if (r.management == management && r.lcoe) pts.push_back({r.scenario, r.res_penetration, *r.lcoe});
  }
  return pts;
}

namespace {

std::ofstream open_report(const fs::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(p.string(), "cannot write report file");
  return f;
}

void close_report(std::ofstream& f, const fs::path& p) {
  f.close();
  if (!f) throw IoError(p.string(), "write failed");
}

}  // namespace

std::vector<fs::path> write_reports(const Config& config, const SeriesSet& series,
                                    const std::vector<ReportInput>& results, const RunInfo& info,
                                    const fs::path& out) {
  const int week = config.sweep.report_week;
  if (week < 1 || week > 52) throw std::out_of_range("week must lie in 1..52, got " + std::to_string(week));
  if (results.empty()) throw ValidationError("no completed scenario to report");
  std::vector<fs::path> written;
  std::error_code ec;
  fs::create_directories(out / "weekly", ec);
  if (ec) throw IoError((out / "weekly").string(), ec.message());

  const AnnualTotals* base = nullptr;
  AnnualTotals base_totals;
  for (const auto& r : results) {
    if (r.scenario.is_base()) {
      base_totals = summarize(r.ledger);
      base = &base_totals;
    }
  }
  std::vector<EconomicReport> rows;
  for (const auto& r : results) {
    const ScenarioSystem sys = build_scenario_system(config, series, r.scenario);
    rows.push_back(evaluate_scenario(config, sys, r.ledger, base));
  }

  const fs::path report_path = out / "economic_report.csv";
  auto f = open_report(report_path);
  write_economic_reports(rows, f);
  close_report(f, report_path);
  written.push_back(report_path);

  const fs::path pareto_path = out / "pareto.csv";
  auto pf = open_report(pareto_path);
  write_pareto_header(pf);
  for (const char* m : {"central", "self"}) {
    const auto pts = pareto_points(rows, m);
    write_pareto_rows(m, extract_pareto(pts), pf);
  }
  close_report(pf, pareto_path);
  written.push_back(pareto_path);

  for (const auto& r : results) {
    if (r.ledger.hours.size() < static_cast<std::size_t>(week) * 168) continue;
    char name[64];
    std::snprintf(name, sizeof name, "_week%02d.csv", week);
    const fs::path wp = out / "weekly" / (r.scenario.id + name);
    auto wf = open_report(wp);
    write_weekly_extract(r.ledger, week, wf);
    close_report(wf, wp);
    written.push_back(wp);
  }

  nlohmann::ordered_json m;
  m["config_hash"] = info.config_hash;
  m["seed"] = info.seed;
  m["solver"] = {{"gap", info.solver.gap_tolerance}, {"time_limit", info.solver.time_limit}, {"backend", "HiGHS"}};
  m["workers"] = info.workers;
  m["days"] = info.days;
  m["wall_time_s"] = info.wall_time_s;
  nlohmann::ordered_json scen = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    scen.push_back({{"id", r.scenario.id},
                    {"management", to_string(r.scenario.management)},
                    {"store", store_flag(r.scenario.management)},
                    {"hours", r.ledger.hours.size()}});
  }
  m["scenarios"] = scen;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& w : written) files.push_back(fs::relative(w, out).generic_string());
  m["files"] = files;
  const fs::path manifest = out / "manifest.json";
  auto mf = open_report(manifest);
  mf << m.dump(2) << '\n';
  close_report(mf, manifest);
  written.push_back(manifest);
  return written;
}

std::vector<EconomicReport> read_economic_reports(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open report file");
  std::string line;
  std::getline(in, line);
  std::string expected;
  for (const auto& c : economic_report_columns()) expected += (expected.empty() ? "" : ",") + c;
  if (line != expected) throw IoError(path.string(), "unexpected report header");
  std::vector<EconomicReport> rows;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != economic_report_columns().size()) {
      throw IoError(path.string(), "row " + std::to_string(row) + ": wrong column count");
    }
    auto number = [&](std::size_t i) -> std::optional<double> {
      if (cells[i] == "undefined") return std::nullopt;
      double v = 0.0;
      auto [end, ec] = std::from_chars(cells[i].data(), cells[i].data() + cells[i].size(), v);
      if (ec != std::errc{} || end != cells[i].data() + cells[i].size()) {
        throw IoError(path.string(), "row " + std::to_string(row) + ": bad number '" + cells[i] + "'");
      }
      return v;
    };
    EconomicReport r;
    r.scenario = cells[0];
    r.management = cells[1];
    r.new_wind_mw = number(2).value_or(0.0);
    r.bes_power_mw = number(3).value_or(0.0);
    r.bes_energy_mwh = number(4).value_or(0.0);
    r.lcoe = number(5);
    r.res_penetration = number(6).value_or(0.0);
    r.curtailment_existing_wind = number(7).value_or(0.0);
    r.curtailment_new_wind = number(8).value_or(0.0);
    r.curtailment_hps = number(9).value_or(0.0);
    r.system_cost_delta = number(10);
    r.capacity_credit_mw = number(11).value_or(0.0);
    r.total_cost_delta = number(12);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace islandsim
