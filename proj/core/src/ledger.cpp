#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "islandsim/errors.hpp"
#include "islandsim/simulation.hpp"
#include "numfmt.hpp"

namespace islandsim {

namespace {

const char* const kHpsFields[] = {"hps_res",   "hps_order_p", "hps_order_gr", "hps_energy_cap",
                                  "hps_res_g", "hps_res_s",   "hps_res_r",    "hps_dch",
                                  "hps_ch",    "hps_imb_p",   "hps_imb_a",    "hps_soc",
                                  "hps_revenue"};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void join(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

SolveStatus status_from(const std::string& s, const std::string& where) {
  for (auto st : {SolveStatus::optimal, SolveStatus::feasible_gap, SolveStatus::infeasible, SolveStatus::error}) {
    if (to_string(st) == s) return st;
  }
  throw IoError(where, "unknown status '" + s + "'");
}

class RowReader {
 public:
  RowReader(std::vector<std::string> cells, std::string where)
      : cells_(std::move(cells)), where_(std::move(where)) {}

  double number() {
    const std::string& c = next();
    double v = 0.0;
    auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
    if (ec != std::errc{} || end != c.data() + c.size()) throw IoError(where_, "bad number '" + c + "'");
    return v;
  }
  int integer() {
    const std::string& c = next();
    int v = 0;
    auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
    if (ec != std::errc{} || end != c.data() + c.size()) throw IoError(where_, "bad integer '" + c + "'");
    return v;
  }
  SolveStatus status() { return status_from(next(), where_); }

 private:
  const std::string& next() {
    if (pos_ >= cells_.size()) throw IoError(where_, "row has too few columns");
    return cells_[pos_++];
  }
  std::vector<std::string> cells_;
  std::string where_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> hour_columns(const AnnualLedger& l) {
  std::vector<std::string> c{"hour", "load", "pv", "wind_existing", "wind_new", "wind_curtailment", "ens", "surplus"};
  for (const auto& id : l.unit_ids) {
    c.push_back("p_thermal." + id);
    c.push_back("on." + id);
  }
  for (const auto& id : l.bes_ids) {
    for (const char* f : {"bes_charge", "bes_discharge", "bes_soc", "bes_soc_floor"}) c.push_back(std::string(f) + "." + id);
  }
  for (const auto& id : l.hps_ids) {
    for (const char* f : kHpsFields) c.push_back(std::string(f) + "." + id);
  }
  for (const char* f : {"production_cost", "startup_cost", "shutdown_cost", "reserve_shortfall", "passes", "status"}) {
    c.emplace_back(f);
  }
  return c;
}

std::vector<std::string> day_columns(const AnnualLedger& l) {
  std::vector<std::string> c{"day", "das_status", "das_objective", "das_gap",
                             "intraday_status", "intraday_objective", "intraday_gap"};
  for (const auto& id : l.hps_ids) {
    c.push_back("offer." + id);
    c.push_back("intraday_offer." + id);
    c.push_back("undelivered." + id);
  }
  return c;
}

void write_hour_header(const AnnualLedger& l, std::ostream& os) { join(os, hour_columns(l)); }

void write_day_header(const AnnualLedger& l, std::ostream& os) { join(os, day_columns(l)); }

void write_hour_row(const AnnualLedger& l, const HourRecord& r, std::ostream& os) {
  using detail::num;
  std::vector<std::string> c{std::to_string(r.hour), num(r.load),     num(r.pv),
                             num(r.wind_existing),  num(r.wind_new), num(r.wind_curtailment),
                             num(r.energy_not_served), num(r.surplus)};
  for (std::size_t i = 0; i < l.unit_ids.size(); ++i) {
    c.push_back(num(r.unit_output[i]));
    c.push_back(std::to_string(static_cast<int>(r.unit_on[i])));
  }
  for (std::size_t b = 0; b < l.bes_ids.size(); ++b) {
    c.push_back(num(r.bes_charge[b]));
    c.push_back(num(r.bes_discharge[b]));
    c.push_back(num(r.bes_soc[b]));
    c.push_back(num(r.bes_soc_floor[b]));
  }
  for (std::size_t h = 0; h < l.hps_ids.size(); ++h) {
    const auto& hh = r.hps[h];
    const auto& x = hh.realization;
    for (double v : {hh.res_available, hh.order_production, hh.order_absorption, hh.energy_cap,
                     x.res_to_grid, x.res_to_storage, x.res_rejected, x.discharge, x.charge,
                     x.imbalance_production, x.imbalance_absorption, x.end_soc, x.objective}) {
      c.push_back(num(v));
    }
  }
  c.push_back(num(r.production_cost));
  c.push_back(num(r.startup_cost));
  c.push_back(num(r.shutdown_cost));
  c.push_back(num(r.reserve_shortfall));
  c.push_back(std::to_string(r.passes));
  c.push_back(to_string(r.status));
  join(os, c);
}

void write_day_row(const AnnualLedger& l, const DayRecord& r, std::ostream& os) {
  using detail::num;
  std::vector<std::string> c{std::to_string(r.day),          to_string(r.das_status),
                             num(r.das_objective),           num(r.das_gap),
                             to_string(r.intraday_status),   num(r.intraday_objective),
                             num(r.intraday_gap)};
  for (std::size_t h = 0; h < l.hps_ids.size(); ++h) {
    c.push_back(num(r.das_offer[h]));
    c.push_back(num(r.intraday_offer[h]));
    c.push_back(num(r.undelivered[h]));
  }
  join(os, c);
}

namespace {

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path,
                                                const std::vector<std::string>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open ledger file");
  std::string line;
  if (!std::getline(in, line) || split(line) != expected) {
    throw IoError(path.string(), "ledger header does not match the scenario");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    auto cells = split(line);
    // a torn final line from an interrupted write is ignored
    if (cells.size() != expected.size()) break;
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

AnnualLedger read_ledger(const std::filesystem::path& hours_csv, const std::filesystem::path& days_csv,
                         const AnnualLedger& shape) {
  AnnualLedger l;
  l.scenario = shape.scenario;
  l.unit_ids = shape.unit_ids;
  l.bes_ids = shape.bes_ids;
  l.hps_ids = shape.hps_ids;
  const auto hour_rows = read_rows(hours_csv, hour_columns(l));
  const auto day_rows = read_rows(days_csv, day_columns(l));
  const std::size_t days = std::min(day_rows.size(), hour_rows.size() / 24);

  for (std::size_t d = 0; d < days; ++d) {
    RowReader rr(day_rows[d], days_csv.string() + ": row " + std::to_string(d + 1));
    DayRecord r;
    r.day = rr.integer();
    r.das_status = rr.status();
    r.das_objective = rr.number();
    r.das_gap = rr.number();
    r.intraday_status = rr.status();
    r.intraday_objective = rr.number();
    r.intraday_gap = rr.number();
    for (std::size_t h = 0; h < l.hps_ids.size(); ++h) {
      r.das_offer.push_back(rr.number());
      r.intraday_offer.push_back(rr.number());
      r.undelivered.push_back(rr.number());
    }
    if (r.day != static_cast<int>(d)) throw IoError(days_csv.string(), "days out of order");
    l.days.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < days * 24; ++k) {
    RowReader rr(hour_rows[k], hours_csv.string() + ": row " + std::to_string(k + 1));
    HourRecord r;
    r.hour = rr.integer();
    r.load = rr.number();
    r.pv = rr.number();
    r.wind_existing = rr.number();
    r.wind_new = rr.number();
    r.wind_curtailment = rr.number();
    r.energy_not_served = rr.number();
    r.surplus = rr.number();
    for (std::size_t i = 0; i < l.unit_ids.size(); ++i) {
      r.unit_output.push_back(rr.number());
      r.unit_on.push_back(static_cast<std::uint8_t>(rr.integer()));
    }
    for (std::size_t b = 0; b < l.bes_ids.size(); ++b) {
      r.bes_charge.push_back(rr.number());
      r.bes_discharge.push_back(rr.number());
      r.bes_soc.push_back(rr.number());
      r.bes_soc_floor.push_back(rr.number());
    }
    for (std::size_t h = 0; h < l.hps_ids.size(); ++h) {
      HpsHour hh;
      auto& x = hh.realization;
      hh.res_available = rr.number();
      hh.order_production = rr.number();
      hh.order_absorption = rr.number();
      hh.energy_cap = rr.number();
      x.res_to_grid = rr.number();
      x.res_to_storage = rr.number();
      x.res_rejected = rr.number();
      x.discharge = rr.number();
      x.charge = rr.number();
      x.imbalance_production = rr.number();
      x.imbalance_absorption = rr.number();
      x.end_soc = rr.number();
      x.objective = rr.number();
      r.hps.push_back(hh);
    }
    r.production_cost = rr.number();
    r.startup_cost = rr.number();
    r.shutdown_cost = rr.number();
    r.reserve_shortfall = rr.number();
    r.passes = rr.integer();
    r.status = rr.status();
    if (r.hour != static_cast<int>(k)) throw IoError(hours_csv.string(), "hours out of order");
    l.hours.push_back(std::move(r));
  }
  return l;
}

}  // namespace islandsim
