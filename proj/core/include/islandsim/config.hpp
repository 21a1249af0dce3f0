#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "islandsim/domain.hpp"
#include "islandsim/economics.hpp"
#include "islandsim/milp.hpp"
#include "islandsim/series.hpp"

namespace islandsim {

/// Operating point of a thermal unit before the first simulated hour.
struct UnitStartState {
  bool online = true;
  int hours_in_state = 24;
  double output = 0.0;  // MW; 0 with online means p_min

  friend bool operator==(const UnitStartState&, const UnitStartState&) = default;
};

/// Parameters shared by every HPS the scenarios create.
struct HpsTemplate {
  double p_min_component = 1.0;
  std::array<double, 3> offer_coefficients{0.6, 0.5, 0.4};
  HpsPrices prices;

  friend bool operator==(const HpsTemplate&, const HpsTemplate&) = default;
};

struct SystemConfig {
  std::vector<ThermalUnit> thermal_units;
  std::vector<UnitStartState> start_states;  // per unit
  std::vector<ReserveRule> reserve_rules;
  Penalties penalties;
  double existing_wind_mw = 55.0;
  double pv_mw = 36.0;
  double bes_roundtrip_eff = 0.8;
  double bes_initial_soc_fraction = 0.5;
  HpsTemplate hps;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// A series either read from CSV or synthesized from targets.
struct SeriesSource {
  std::string csv;  // empty: synthesize
  SynthesisTargets targets;

  friend bool operator==(const SeriesSource&, const SeriesSource&) = default;
};

struct SeriesConfig {
  std::uint64_t seed = 7;
  SeriesSource load;      // MW
  SeriesSource wind;      // per-unit profile of the existing wind farms
  SeriesSource new_wind;  // per-unit profile of the new wind farm
  SeriesSource pv;        // per-unit profile

  friend bool operator==(const SeriesConfig&, const SeriesConfig&) = default;
};

struct SimulationConfig {
  int days = 365;
  bool release_reserves = true;
  double forecast_noise = 0.0;  // relative standard deviation of forecast errors

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Storage sizes swept for one management concept.
struct SweepAxis {
  std::vector<double> power_mw;
  std::vector<double> hours;

  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct SweepConfig {
  double new_wind_mw = 75.0;
  bool include_base = true;
  SweepAxis central;
  SweepAxis self;
  int report_week = 1;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct Config {
  SystemConfig system;
  SeriesConfig series;
  EconomicParams economics;
  milp::SolverSettings solver;
  SimulationConfig simulation;
  SweepConfig sweep;
  int workers = 1;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Throws IoError (unreadable, bad JSON) or ValidationError (bad values).
/// Relative CSV paths resolve against the config file's directory.
Config load_config(const std::filesystem::path& path);
Config parse_config(const std::string& text, const std::string& source = "<config>");

/// Canonical JSON: sorted keys, two-space indent, shortest round-trip numbers.
std::string dump_config(const Config& config);

/// Empty iff the configuration is consistent.
std::vector<Violation> validate_config(const Config& config);

/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const Config& config);

/// The 18-unit synthetic island, or its 3-unit reduced variant.
Config default_config(bool reduced = false);

}  // namespace islandsim
