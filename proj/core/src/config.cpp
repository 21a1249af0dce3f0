#include "islandsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "islandsim/errors.hpp"

namespace islandsim {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// enums

template <class E>
struct EnumNames;

template <>
struct EnumNames<ReserveKind> {
  static constexpr std::pair<ReserveKind, const char*> items[] = {
      {ReserveKind::primary, "primary"},
      {ReserveKind::secondary, "secondary"},
      {ReserveKind::tertiary, "tertiary"}};
};
template <>
struct EnumNames<ReserveDirection> {
  static constexpr std::pair<ReserveDirection, const char*> items[] = {
      {ReserveDirection::up, "up"}, {ReserveDirection::down, "down"}};
};
template <>
struct EnumNames<RequirementRule> {
  static constexpr std::pair<RequirementRule, const char*> items[] = {
      {RequirementRule::largest_infeed, "largest_infeed"},
      {RequirementRule::load_fraction, "load_fraction"},
      {RequirementRule::largest_committed_capacity, "largest_committed_capacity"},
      {RequirementRule::fixed, "fixed"}};
};

template <class E>
std::string enum_name(E e) {
  for (const auto& [v, n] : EnumNames<E>::items) {
    if (v == e) return n;
  }
  return "?";
}

template <class E>
E enum_value(const json& j, const std::string& where) {
  const auto s = j.get<std::string>();
  for (const auto& [v, n] : EnumNames<E>::items) {
    if (s == n) return v;
  }
  throw ValidationError(where + ": unknown value '" + s + "'");
}

// ---------------------------------------------------------------------------
// reading helpers

class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ValidationError(where_ + ": expected an object");
  }
  ~Reader() = default;

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ValidationError(where_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string at(const char* key) const { return where_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ValidationError(where_ + ": unknown key '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json to_json_unit(const ThermalUnit& u) {
  json blocks = json::array();
  for (const auto& b : u.cost_blocks) blocks.push_back({{"width_mw", b.width_mw}, {"marginal_cost", b.marginal_cost}});
  return {{"id", u.id},
          {"p_min", u.p_min},
          {"p_max", u.p_max},
          {"cost_at_pmin", u.cost_at_pmin},
          {"cost_blocks", blocks},
          {"startup_cost", u.startup_cost},
          {"shutdown_cost", u.shutdown_cost},
          {"ramp_up", u.ramp_up},
          {"ramp_down", u.ramp_down},
          {"min_up_time", u.min_up_time},
          {"min_down_time", u.min_down_time}};
}

ThermalUnit unit_from_json(const json& j, const std::string& where, UnitStartState& start) {
  ThermalUnit u;
  Reader r(j, where);
  r.get("id", u.id);
  r.get("p_min", u.p_min);
  r.get("p_max", u.p_max);
  r.get("cost_at_pmin", u.cost_at_pmin);
  r.get("startup_cost", u.startup_cost);
  r.get("shutdown_cost", u.shutdown_cost);
  r.get("ramp_up", u.ramp_up);
  r.get("ramp_down", u.ramp_down);
  r.get("min_up_time", u.min_up_time);
  r.get("min_down_time", u.min_down_time);
  if (const json* blocks = r.child("cost_blocks")) {
    if (!blocks->is_array()) throw ValidationError(r.at("cost_blocks") + ": expected an array");
    for (std::size_t b = 0; b < blocks->size(); ++b) {
      CostBlock blk;
      Reader rb((*blocks)[b], r.at("cost_blocks") + "[" + std::to_string(b) + "]");
      rb.get("width_mw", blk.width_mw);
      rb.get("marginal_cost", blk.marginal_cost);
      rb.finish();
      u.cost_blocks.push_back(blk);
    }
  }
  if (const json* s = r.child("start")) {
    Reader rs(*s, r.at("start"));
    rs.get("online", start.online);
    rs.get("hours_in_state", start.hours_in_state);
    rs.get("output", start.output);
    rs.finish();
  }
  r.finish();
  return u;
}

json to_json_rule(const ReserveRule& e) {
  return {{"kind", enum_name(e.kind)},
          {"direction", enum_name(e.direction)},
          {"rule", enum_name(e.rule)},
          {"parameter", e.parameter},
          {"reserve_cost", e.reserve_cost},
          {"violation_penalty", e.violation_penalty},
          {"enabled", e.enabled}};
}

ReserveRule rule_from_json(const json& j, const std::string& where) {
  ReserveRule e;
  Reader r(j, where);
  if (const json* v = r.child("kind")) e.kind = enum_value<ReserveKind>(*v, r.at("kind"));
  if (const json* v = r.child("direction")) e.direction = enum_value<ReserveDirection>(*v, r.at("direction"));
  if (const json* v = r.child("rule")) e.rule = enum_value<RequirementRule>(*v, r.at("rule"));
  r.get("parameter", e.parameter);
  r.get("reserve_cost", e.reserve_cost);
  r.get("violation_penalty", e.violation_penalty);
  r.get("enabled", e.enabled);
  r.finish();
  return e;
}

json to_json_source(const SeriesSource& s) {
  return {{"csv", s.csv},
          {"peak", s.targets.peak},
          {"load_factor", s.targets.load_factor},
          {"capacity_factor", s.targets.capacity_factor}};
}

SeriesSource source_from_json(const json& j, const std::string& where, SeriesSource s) {
  Reader r(j, where);
  r.get("csv", s.csv);
  r.get("peak", s.targets.peak);
  r.get("load_factor", s.targets.load_factor);
  r.get("capacity_factor", s.targets.capacity_factor);
  r.finish();
  s.targets.capacity = 1.0;
  return s;
}

json to_json_axis(const SweepAxis& a) { return {{"power_mw", a.power_mw}, {"hours", a.hours}}; }

SweepAxis axis_from_json(const json& j, const std::string& where, SweepAxis a) {
  Reader r(j, where);
  r.get("power_mw", a.power_mw);
  r.get("hours", a.hours);
  r.finish();
  return a;
}

json to_json(const Config& c) {
  const auto& s = c.system;
  json units = json::array();
  for (std::size_t i = 0; i < s.thermal_units.size(); ++i) {
    json u = to_json_unit(s.thermal_units[i]);
    const UnitStartState st = i < s.start_states.size() ? s.start_states[i] : UnitStartState{};
    u["start"] = {{"online", st.online}, {"hours_in_state", st.hours_in_state}, {"output", st.output}};
    units.push_back(std::move(u));
  }
  json rules = json::array();
  for (const auto& e : s.reserve_rules) rules.push_back(to_json_rule(e));
  const auto& h = s.hps;
  json system = {
      {"thermal_units", units},
      {"reserve_rules", rules},
      {"penalties",
       {{"energy_not_served", s.penalties.energy_not_served},
        {"hps_grid_energy", s.penalties.hps_grid_energy}}},
      {"existing_wind_mw", s.existing_wind_mw},
      {"pv_mw", s.pv_mw},
      {"bes_roundtrip_eff", s.bes_roundtrip_eff},
      {"bes_initial_soc_fraction", s.bes_initial_soc_fraction},
      {"hps",
       {{"p_min_component", h.p_min_component},
        {"offer_coefficients", h.offer_coefficients},
        {"prices", {{"sale", h.prices.sale}, {"purchase", h.prices.purchase}, {"imbalance", h.prices.imbalance}}}}}};
  const auto& e = c.economics;
  json economics = {{"evaluation_years", e.evaluation_years},
                    {"tax_rate", e.tax_rate},
                    {"om_rate", e.om_rate},
                    {"depreciation_years", e.depreciation_years},
                    {"discount_rate", e.discount_rate},
                    {"bes_energy_capex", e.bes_energy_capex},
                    {"bes_replacement_capex", e.bes_replacement_capex},
                    {"bes_power_capex", e.bes_power_capex},
                    {"wind_capex", e.wind_capex},
                    {"replacement_year", e.replacement_year},
                    {"existing_res_tariff", e.existing_res_tariff},
                    {"thermal_capex", e.thermal_capex},
                    {"thermal_annualized_fixed", e.thermal_annualized_fixed}};
  return {{"system", system},
          {"series",
           {{"seed", c.series.seed},
            {"load", to_json_source(c.series.load)},
            {"wind", to_json_source(c.series.wind)},
            {"new_wind", to_json_source(c.series.new_wind)},
            {"pv", to_json_source(c.series.pv)}}},
          {"economics", economics},
          {"solver", {{"gap", c.solver.gap_tolerance}, {"time_limit", c.solver.time_limit}}},
          {"simulation",
           {{"days", c.simulation.days},
            {"release_reserves", c.simulation.release_reserves},
            {"forecast_noise", c.simulation.forecast_noise}}},
          {"sweep",
           {{"new_wind_mw", c.sweep.new_wind_mw},
            {"include_base", c.sweep.include_base},
            {"central", to_json_axis(c.sweep.central)},
            {"self", to_json_axis(c.sweep.self)},
            {"report_week", c.sweep.report_week}}},
          {"workers", c.workers}};
}

Config from_json(const json& root) {
  Config c = default_config(false);
  Reader r(root, "config");
  if (const json* sj = r.child("system")) {
    SystemConfig& s = c.system;
    Reader rs(*sj, "system");
    if (const json* units = rs.child("thermal_units")) {
      if (!units->is_array()) throw ValidationError("system.thermal_units: expected an array");
      s.thermal_units.clear();
      s.start_states.clear();
      for (std::size_t i = 0; i < units->size(); ++i) {
        UnitStartState st;
        s.thermal_units.push_back(
            unit_from_json((*units)[i], "system.thermal_units[" + std::to_string(i) + "]", st));
        s.start_states.push_back(st);
      }
    }
    if (const json* rules = rs.child("reserve_rules")) {
      if (!rules->is_array()) throw ValidationError("system.reserve_rules: expected an array");
      s.reserve_rules.clear();
      for (std::size_t i = 0; i < rules->size(); ++i) {
        s.reserve_rules.push_back(
            rule_from_json((*rules)[i], "system.reserve_rules[" + std::to_string(i) + "]"));
      }
    }
    if (const json* p = rs.child("penalties")) {
      Reader rp(*p, "system.penalties");
      rp.get("energy_not_served", s.penalties.energy_not_served);
      rp.get("hps_grid_energy", s.penalties.hps_grid_energy);
      rp.finish();
    }
    rs.get("existing_wind_mw", s.existing_wind_mw);
    rs.get("pv_mw", s.pv_mw);
    rs.get("bes_roundtrip_eff", s.bes_roundtrip_eff);
    rs.get("bes_initial_soc_fraction", s.bes_initial_soc_fraction);
    if (const json* h = rs.child("hps")) {
      Reader rh(*h, "system.hps");
      rh.get("p_min_component", s.hps.p_min_component);
      rh.get("offer_coefficients", s.hps.offer_coefficients);
      if (const json* p = rh.child("prices")) {
        Reader rp(*p, "system.hps.prices");
        rp.get("sale", s.hps.prices.sale);
        rp.get("purchase", s.hps.prices.purchase);
        rp.get("imbalance", s.hps.prices.imbalance);
        rp.finish();
      }
      rh.finish();
    }
    rs.finish();
  }
  if (const json* sj = r.child("series")) {
    Reader rs(*sj, "series");
    rs.get("seed", c.series.seed);
    if (const json* v = rs.child("load")) c.series.load = source_from_json(*v, "series.load", c.series.load);
    if (const json* v = rs.child("wind")) c.series.wind = source_from_json(*v, "series.wind", c.series.wind);
    if (const json* v = rs.child("new_wind")) c.series.new_wind = source_from_json(*v, "series.new_wind", c.series.new_wind);
    if (const json* v = rs.child("pv")) c.series.pv = source_from_json(*v, "series.pv", c.series.pv);
    rs.finish();
  }
  if (const json* ej = r.child("economics")) {
    auto& e = c.economics;
    Reader re(*ej, "economics");
    re.get("evaluation_years", e.evaluation_years);
    re.get("tax_rate", e.tax_rate);
    re.get("om_rate", e.om_rate);
    re.get("depreciation_years", e.depreciation_years);
    re.get("discount_rate", e.discount_rate);
    re.get("bes_energy_capex", e.bes_energy_capex);
    re.get("bes_replacement_capex", e.bes_replacement_capex);
    re.get("bes_power_capex", e.bes_power_capex);
    re.get("wind_capex", e.wind_capex);
    re.get("replacement_year", e.replacement_year);
    re.get("existing_res_tariff", e.existing_res_tariff);
    re.get("thermal_capex", e.thermal_capex);
    re.get("thermal_annualized_fixed", e.thermal_annualized_fixed);
    re.finish();
  }
  if (const json* sj = r.child("solver")) {
    Reader rs(*sj, "solver");
    rs.get("gap", c.solver.gap_tolerance);
    rs.get("time_limit", c.solver.time_limit);
    rs.finish();
  }
  if (const json* sj = r.child("simulation")) {
    Reader rs(*sj, "simulation");
    rs.get("days", c.simulation.days);
    rs.get("release_reserves", c.simulation.release_reserves);
    rs.get("forecast_noise", c.simulation.forecast_noise);
    rs.finish();
  }
  if (const json* sj = r.child("sweep")) {
    Reader rs(*sj, "sweep");
    rs.get("new_wind_mw", c.sweep.new_wind_mw);
    rs.get("include_base", c.sweep.include_base);
    if (const json* v = rs.child("central")) c.sweep.central = axis_from_json(*v, "sweep.central", c.sweep.central);
    if (const json* v = rs.child("self")) c.sweep.self = axis_from_json(*v, "sweep.self", c.sweep.self);
    rs.get("report_week", c.sweep.report_week);
    rs.finish();
  }
  r.get("workers", c.workers);
  r.finish();
  return c;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(source, std::string("invalid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  Config c = parse_config(ss.str(), path.string());
  const auto base = std::filesystem::absolute(path).parent_path();
  for (SeriesSource* s : {&c.series.load, &c.series.wind, &c.series.new_wind, &c.series.pv}) {
    if (!s->csv.empty() && std::filesystem::path(s->csv).is_relative()) {
      s->csv = (base / s->csv).lexically_normal().string();
    }
  }
  return c;
}

std::string dump_config(const Config& config) { return to_json(config).dump(2) + "\n"; }

std::string config_hash(const Config& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Violation> validate_config(const Config& c) {
  std::vector<Violation> out;
  auto require = [&](bool ok, const std::string& asset, const std::string& field, const std::string& rule) {
    if (!ok) out.push_back({asset, field, rule});
  };
  const auto& s = c.system;
  require(!s.thermal_units.empty(), "system", "thermal_units", "at least one unit required");
  require(s.start_states.size() == s.thermal_units.size(), "system", "start", "one start state per unit");
  for (const auto& u : s.thermal_units) {
    auto v = validate_unit(u);
    out.insert(out.end(), v.begin(), v.end());
  }
  for (std::size_t i = 0; i < s.start_states.size() && i < s.thermal_units.size(); ++i) {
    const auto& st = s.start_states[i];
    const auto& u = s.thermal_units[i];
    require(st.hours_in_state >= 1, u.id, "start.hours_in_state", "must be >= 1");
    require(st.output >= 0.0 && st.output <= u.p_max, u.id, "start.output", "must lie in [0, p_max]");
    require(st.online || st.output == 0.0, u.id, "start.output", "must be 0 for an offline unit");
  }
  auto v = validate_reserve_rules(s.reserve_rules, s.penalties);
  out.insert(out.end(), v.begin(), v.end());
  require(s.existing_wind_mw >= 0.0, "system", "existing_wind_mw", "must be >= 0");
  require(s.pv_mw >= 0.0, "system", "pv_mw", "must be >= 0");
  require(s.bes_roundtrip_eff > 0.0 && s.bes_roundtrip_eff <= 1.0, "system", "bes_roundtrip_eff",
          "must lie in (0, 1]");
  require(s.bes_initial_soc_fraction >= 0.0 && s.bes_initial_soc_fraction <= 1.0, "system",
          "bes_initial_soc_fraction", "must lie in [0, 1]");
  require(s.hps.p_min_component > 0.0, "system.hps", "p_min_component", "must be > 0");
  for (double k : s.hps.offer_coefficients) {
    require(k >= 0.0 && k <= 1.0, "system.hps", "offer_coefficients", "must lie in [0, 1]");
  }
  require(s.hps.prices.purchase >= 0.0 && s.hps.prices.imbalance >= s.hps.prices.purchase,
          "system.hps", "prices", "need imbalance >= purchase >= 0");
  try {
    c.economics.validate();
  } catch (const ValidationError& e) {
    out.push_back({"economics", "params", e.what()});
  }
  require(c.solver.gap_tolerance >= 0.0 && c.solver.gap_tolerance < 1.0, "solver", "gap",
          "must lie in [0, 1)");
  require(c.solver.time_limit > 0.0, "solver", "time_limit", "must be > 0");
  require(c.simulation.days >= 1 && c.simulation.days <= 365, "simulation", "days", "must lie in [1, 365]");
  require(c.simulation.forecast_noise >= 0.0, "simulation", "forecast_noise", "must be >= 0");
  require(c.sweep.new_wind_mw >= 0.0, "sweep", "new_wind_mw", "must be >= 0");
  require(c.sweep.report_week >= 1 && c.sweep.report_week <= 52, "sweep", "report_week",
          "must lie in [1, 52]");
  for (const auto* axis : {&c.sweep.central, &c.sweep.self}) {
    for (double p : axis->power_mw) require(p > 0.0, "sweep", "power_mw", "must be > 0");
    for (double h : axis->hours) require(h > 0.0, "sweep", "hours", "must be > 0");
  }
  require(c.workers >= 1, "config", "workers", "must be >= 1");
  return out;
}

namespace {

ThermalUnit make_unit(const std::string& id, double p_max, double mc, int min_up, int min_down) {
  ThermalUnit u;
  u.id = id;
  u.p_max = p_max;
  u.p_min = 0.4 * p_max;
  // no-load premium folded into the cost at p_min
  u.cost_at_pmin = u.p_min * mc * 1.12;
  const double span = p_max - u.p_min;
  u.cost_blocks = {{span / 3.0, mc}, {span / 3.0, mc * 1.04}, {span - 2.0 * (span / 3.0), mc * 1.09}};
  u.startup_cost = 45.0 * p_max;
  u.shutdown_cost = 5.0 * p_max;
  u.ramp_up = 0.6 * p_max;
  u.ramp_down = 0.6 * p_max;
  u.min_up_time = min_up;
  u.min_down_time = min_down;
  return u;
}

}  // namespace

Config default_config(bool reduced) {
  Config c;
  auto& s = c.system;
  if (reduced) {
    s.thermal_units = {make_unit("U1", 90.0, 160.0, 4, 3), make_unit("U2", 80.0, 180.0, 4, 3),
                       make_unit("U3", 60.0, 220.0, 2, 2)};
  } else {
    const double sizes[] = {30, 30, 30, 25, 25, 20, 20, 15, 15, 12, 12, 10, 10, 8, 8, 6, 5, 5};
    for (std::size_t i = 0; i < std::size(sizes); ++i) {
      const double p = sizes[i];
      // smaller sets burn more fuel per MWh
      const double mc = 150.0 + 3.0 * (30.0 - p) + 1.5 * static_cast<double>(i);
      const int up = p >= 20 ? 6 : (p >= 10 ? 3 : 1);
      const int down = p >= 20 ? 4 : (p >= 10 ? 2 : 1);
      s.thermal_units.push_back(make_unit("U" + std::to_string(i + 1), p, mc, up, down));
    }
  }
  s.start_states.assign(s.thermal_units.size(), UnitStartState{true, 24, 0.0});
  if (reduced) s.start_states[2] = {false, 24, 0.0};

  ReserveRule pr{ReserveKind::primary, ReserveDirection::up, RequirementRule::largest_infeed, 0.0};
  ReserveRule sr{ReserveKind::secondary, ReserveDirection::up, RequirementRule::load_fraction, 0.10};
  ReserveRule tr{ReserveKind::tertiary, ReserveDirection::up,
                 RequirementRule::largest_committed_capacity, 0.0};
  ReserveRule dn{ReserveKind::secondary, ReserveDirection::down, RequirementRule::load_fraction, 0.05};
  if (reduced) tr.enabled = false;
  s.reserve_rules = {pr, sr, tr, dn};

  c.series.load.targets = {210.0, 0.46, 1.0, 0.4};
  c.series.wind.targets = {210.0, 0.46, 1.0, 0.40};
  c.series.new_wind.targets = {210.0, 0.46, 1.0, 0.40};
  c.series.pv.targets = {210.0, 0.46, 1.0, 0.21};

  for (int k = 1; k <= 10; ++k) c.sweep.central.power_mw.push_back(7.5 * k);
  c.sweep.central.hours = {1.0, 2.5, 5.0, 7.5, 10.0};
  c.sweep.self.power_mw = {30.0, 40.0, 50.0, 60.0, 70.0};
  for (int h = 6; h <= 15; ++h) c.sweep.self.hours.push_back(h);
  return c;
}

}  // namespace islandsim
