#include "islandsim/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "islandsim/errors.hpp"

namespace islandsim {

std::string store_flag(Management m) { return m == Management::central ? "1" : "2"; }

std::string to_string(Management m) { return m == Management::central ? "central" : "self"; }

Management management_from_string(const std::string& s) {
  if (s == "central" || s == "1") return Management::central;
  if (s == "self" || s == "2") return Management::self;
  throw ValidationError("unknown management concept '" + s + "'");
}

Scenario base_scenario() { return Scenario{"BASE", Management::central, 0.0, 0.0, 0.0}; }

Scenario make_scenario(Management m, double new_wind_mw, double bes_power_mw, double bes_hours) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_P%05.1f_H%04.1f", m == Management::central ? "C" : "S",
                bes_power_mw, bes_hours);
  std::string id = buf;
  if (new_wind_mw != 75.0) {
    std::snprintf(buf, sizeof buf, "_W%05.1f", new_wind_mw);
    id += buf;
  }
  return Scenario{id, m, new_wind_mw, bes_power_mw, bes_hours};
}

namespace {

HourlySeries series_from(const SeriesSource& src, SeriesKind kind, std::uint64_t seed,
                         const std::string& label) {
  HourlySeries s;
  if (!src.csv.empty()) {
    s = ingest_csv(src.csv, label, kind == SeriesKind::load ? 0.0 : 1.0);
    if (kind != SeriesKind::load && s.peak() > 1.0 + 1e-9) {
      throw ValidationError(src.csv + ": per-unit profile exceeds 1");
    }
  } else {
    SynthesisTargets t = src.targets;
    if (kind != SeriesKind::load) t.capacity = 1.0;
    s = synthesize(kind, t, seed);
  }
  s.label = label;
  return s;
}

std::vector<double> scaled(const HourlySeries& s, double mw) {
  std::vector<double> out(s.values.size());
  std::transform(s.values.begin(), s.values.end(), out.begin(), [mw](double v) { return v * mw; });
  return out;
}

UnitInitialState initial_state(const ThermalUnit& u, const UnitStartState& st) {
  const int len = std::max({u.min_up_time, u.min_down_time, 1}) + 1;
  UnitInitialState init;
  const int same = std::min(st.hours_in_state, len);
  for (int k = 0; k < len; ++k) init.history.push_back(k >= len - same ? st.online : !st.online);
  init.output = st.online ? (st.output > 0.0 ? st.output : u.p_min) : 0.0;
  return init;
}

}  // namespace

SeriesSet load_series(const SeriesConfig& c) {
  SeriesSet s;
  s.load = series_from(c.load, SeriesKind::load, c.seed, "load");
  s.wind = series_from(c.wind, SeriesKind::wind, c.seed + 1, "wind");
  s.new_wind = series_from(c.new_wind, SeriesKind::wind, c.seed + 2, "new_wind");
  s.pv = series_from(c.pv, SeriesKind::pv, c.seed + 3, "pv");
  return s;
}

ScenarioSystem build_scenario_system(const Config& config, const SeriesSet& series,
                                     const Scenario& scenario) {
  const auto& sys = config.system;
  if (sys.start_states.size() != sys.thermal_units.size()) {
    throw ValidationError("one start state per thermal unit required");
  }
  if (scenario.new_wind_mw < 0.0 || scenario.bes_power_mw < 0.0 || scenario.bes_hours < 0.0) {
    throw ValidationError(scenario.id + ": sizes must be >= 0");
  }
  ScenarioSystem s;
  s.scenario = scenario;
  s.thermal_units = sys.thermal_units;
  for (std::size_t i = 0; i < sys.thermal_units.size(); ++i) {
    s.initial_units.push_back(initial_state(sys.thermal_units[i], sys.start_states[i]));
  }
  s.reserve_rules = sys.reserve_rules;
  s.penalties = sys.penalties;
  s.load = series.load.values;
  s.pv = scaled(series.pv, sys.pv_mw);
  s.wind_existing = scaled(series.wind, sys.existing_wind_mw);
  s.wind_new.assign(s.load.size(), 0.0);

  const bool has_storage = scenario.bes_power_mw > 0.0 && scenario.bes_energy_mwh() > 0.0;
  BesUnit bes;
  if (has_storage) {
    bes.p_charge_max = scenario.bes_power_mw;
    bes.p_discharge_max = scenario.bes_power_mw;
    bes.e_min = 0.0;
    bes.e_max = scenario.bes_energy_mwh();
    bes.roundtrip_eff = sys.bes_roundtrip_eff;
    bes.initial_soc = sys.bes_initial_soc_fraction * bes.e_max;
  }

  if (scenario.management == Management::central) {
    s.wind_new = scaled(series.new_wind, scenario.new_wind_mw);
    if (has_storage) {
      bes.id = "BES1";
      s.bes_units.push_back(bes);
    }
  } else {
    if (!has_storage) throw ValidationError(scenario.id + ": a self-dispatched HPS needs storage");
    HpsPlant h;
    h.id = "HPS1";
    h.wind_capacity = scenario.new_wind_mw;
    h.p_max = scenario.bes_power_mw;
    h.p_min_component = std::min(sys.hps.p_min_component, h.p_max);
    h.grid_absorb_max = scenario.bes_power_mw;
    h.roundtrip_eff = sys.bes_roundtrip_eff;
    bes.id = "HPS1.BES";
    h.storage = bes;
    h.offer_coefficients = sys.hps.offer_coefficients;
    h.prices = sys.hps.prices;
    auto v = validate_hps(h);
    if (!v.empty()) throw ValidationError(scenario.id + ": " + v.front().to_string());
    s.hps_plants.push_back(h);
    s.hps_res.push_back(scaled(series.new_wind, scenario.new_wind_mw));
  }
  if (!s.bes_units.empty()) {
    auto v = validate_bes(s.bes_units.front());
    if (!v.empty()) throw ValidationError(scenario.id + ": " + v.front().to_string());
  }
  return s;
}

std::vector<Scenario> sweep_plan(const Config& config) {
  std::vector<Scenario> plan;
  std::set<std::string> ids;
  auto add = [&](const Scenario& s) {
    if (ids.insert(s.id).second) plan.push_back(s);
  };
  if (config.sweep.include_base) add(base_scenario());
  for (double p : config.sweep.central.power_mw) {
    for (double h : config.sweep.central.hours) {
      add(make_scenario(Management::central, config.sweep.new_wind_mw, p, h));
    }
  }
  for (double p : config.sweep.self.power_mw) {
    for (double h : config.sweep.self.hours) {
      add(make_scenario(Management::self, config.sweep.new_wind_mw, p, h));
    }
  }
  return plan;
}

}  // namespace islandsim
