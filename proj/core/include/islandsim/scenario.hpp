#pragma once

#include <string>
#include <vector>

#include "islandsim/config.hpp"
#include "islandsim/domain.hpp"

namespace islandsim {

/// Who operates the storage: the system operator, or an HPS owner.
enum class Management { central, self };

/// Result-store key of a management concept: "1" central, "2" self.
std::string store_flag(Management m);
std::string to_string(Management m);
Management management_from_string(const std::string& s);

/// A storage and wind configuration under one management concept.
struct Scenario {
  std::string id;
  Management management = Management::central;
  double new_wind_mw = 0.0;
  double bes_power_mw = 0.0;
  double bes_hours = 0.0;

  double bes_energy_mwh() const { return bes_power_mw * bes_hours; }
  bool is_base() const { return new_wind_mw == 0.0 && bes_power_mw == 0.0; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Reference system without new assets.
Scenario base_scenario();

/// Fixed-width id such as C_P045.0_H02.0 or S_P030.0_H08.0.
Scenario make_scenario(Management m, double new_wind_mw, double bes_power_mw, double bes_hours);

/// Load and per-unit RES profiles of the simulated year.
struct SeriesSet {
  HourlySeries load;
  HourlySeries wind;      // existing wind farms, per unit
  HourlySeries new_wind;  // new wind farm, per unit
  HourlySeries pv;        // per unit
};

/// Reads or synthesizes every series the configuration names.
SeriesSet load_series(const SeriesConfig& config);

/// Everything one annual run needs, with the storage attached according to
/// the management concept.
struct ScenarioSystem {
  Scenario scenario;
  std::vector<ThermalUnit> thermal_units;
  std::vector<UnitInitialState> initial_units;
  std::vector<BesUnit> bes_units;   // central storage
  std::vector<HpsPlant> hps_plants;  // self-dispatched storage with the new wind
  std::vector<ReserveRule> reserve_rules;
  Penalties penalties;
  std::vector<double> load;
  std::vector<double> pv;
  std::vector<double> wind_existing;  // MW available
  std::vector<double> wind_new;       // MW available, central concept only
  std::vector<std::vector<double>> hps_res;  // per HPS, MW available

  /// Wind outside any HPS: existing plus central new wind.
  double external_wind(std::size_t hour) const { return wind_existing[hour] + wind_new[hour]; }
};

/// Throws ValidationError on an inconsistent scenario.
ScenarioSystem build_scenario_system(const Config& config, const SeriesSet& series,
                                     const Scenario& scenario);

/// All scenarios of the configured sweep, base first, without duplicates.
std::vector<Scenario> sweep_plan(const Config& config);

}  // namespace islandsim
