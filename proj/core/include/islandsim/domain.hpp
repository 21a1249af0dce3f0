#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace islandsim {

/// One segment of a convex piecewise-linear production cost curve above p_min.
struct CostBlock {
  double width_mw = 0.0;
  double marginal_cost = 0.0;  // €/MWh

  friend bool operator==(const CostBlock&, const CostBlock&) = default;
};

/// Oil-fired conventional generator.
struct ThermalUnit {
  std::string id;
  double p_min = 0.0;         // MW
  double p_max = 0.0;         // MW
  double cost_at_pmin = 0.0;  // €/h while online at p_min
  std::vector<CostBlock> cost_blocks;
  double startup_cost = 0.0;   // €
  double shutdown_cost = 0.0;  // €
  double ramp_up = 0.0;        // MW/h
  double ramp_down = 0.0;      // MW/h
  int min_up_time = 1;         // h
  int min_down_time = 1;       // h

  friend bool operator==(const ThermalUnit&, const ThermalUnit&) = default;
};

/// Battery energy storage. Efficiency is applied symmetrically as sqrt(roundtrip)
/// on the charge and discharge legs.
struct BesUnit {
  std::string id;
  double p_charge_max = 0.0;     // MW
  double p_discharge_max = 0.0;  // MW
  double e_min = 0.0;            // MWh
  double e_max = 0.0;            // MWh
  double roundtrip_eff = 0.8;
  double initial_soc = 0.0;  // MWh

  double leg_efficiency() const { return std::sqrt(roundtrip_eff); }

  friend bool operator==(const BesUnit&, const BesUnit&) = default;
};

/// Unit prices the HPS operator faces in real time (€/MWh).
struct HpsPrices {
  double sale = 100.0;       // m1
  double purchase = 50.0;    // m2
  double imbalance = 150.0;  // m3

  friend bool operator==(const HpsPrices&, const HpsPrices&) = default;
};

/// Hybrid power station: a wind farm and a battery offered to the system
/// operator as one dispatchable entity.
struct HpsPlant {
  std::string id;
  double p_max = 0.0;            // declared maximum output, MW
  double p_min_component = 0.0;  // smallest component minimum, MW
  double grid_absorb_max = 0.0;  // MW
  double roundtrip_eff = 0.8;
  BesUnit storage;
  double wind_capacity = 0.0;  // MW
  std::array<double, 3> offer_coefficients{0.6, 0.5, 0.4};
  HpsPrices prices;

  friend bool operator==(const HpsPlant&, const HpsPlant&) = default;
};

enum class ReserveKind { primary, secondary, tertiary };
enum class ReserveDirection { up, down };

/// How a reserve requirement is computed each interval.
enum class RequirementRule {
  largest_infeed,              // max(max unit output, net wind); co-varies with dispatch
  load_fraction,               // parameter * load
  largest_committed_capacity,  // max over online units of p_max
  fixed,                       // parameter MW
};

struct ReserveRule {
  ReserveKind kind = ReserveKind::primary;
  ReserveDirection direction = ReserveDirection::up;
  RequirementRule rule = RequirementRule::largest_infeed;
  double parameter = 0.0;
  double reserve_cost = 0.0;         // €/MW per hour
  double violation_penalty = 500.0;  // €/MW per hour of shortfall
  bool enabled = true;

  /// e.g. "pr_up", "sr_dn"
  std::string name() const;

  friend bool operator==(const ReserveRule&, const ReserveRule&) = default;
};

struct Penalties {
  double energy_not_served = 10000.0;  // €/MWh, also applied to surplus dumping
  double hps_grid_energy = 1.0;        // €/MWh absorbed by HPS plants from the grid

  friend bool operator==(const Penalties&, const Penalties&) = default;
};

/// Commitment history of one unit before the first interval of a problem.
struct UnitInitialState {
  std::vector<bool> history;  // back() is the hour just before the horizon
  double output = 0.0;        // MW during that hour

  bool online() const { return !history.empty() && history.back(); }

  friend bool operator==(const UnitInitialState&, const UnitInitialState&) = default;
};

/// One scheduling problem instance.
struct SystemSnapshot {
  int horizon = 24;
  int start_hour = 0;  // absolute hour of the first interval
  std::vector<double> load;
  std::vector<double> wind_available;  // wind farms outside any HPS
  std::vector<double> pv_available;
  std::vector<std::vector<double>> hps_res_available;  // [hps][t]
  std::vector<ThermalUnit> thermal_units;
  std::vector<BesUnit> bes_units;
  std::vector<HpsPlant> hps_plants;
  std::vector<UnitInitialState> prior_commitment;  // per thermal unit
  std::vector<double> prior_soc;                   // per BES, MWh
  std::vector<ReserveRule> reserve_rules;
  Penalties penalties;
};

/// A broken invariant, reported as data.
struct Violation {
  std::string asset;
  std::string field;
  std::string rule;

  std::string to_string() const { return asset + "." + field + ": " + rule; }
};

std::vector<Violation> validate_unit(const ThermalUnit& unit);
std::vector<Violation> validate_bes(const BesUnit& bes);
std::vector<Violation> validate_hps(const HpsPlant& hps);
std::vector<Violation> validate_reserve_rules(const std::vector<ReserveRule>& rules,
                                              const Penalties& penalties);

/// Empty iff every invariant of the snapshot and its assets holds.
std::vector<Violation> validate_system(const SystemSnapshot& snapshot);

/// Cost of running `unit` at `output` MW for one hour, filling cheaper blocks first.
double production_cost(const ThermalUnit& unit, double output, bool online);

// ---------------------------------------------------------------------------
// Solution of a scheduling problem

struct CostBreakdown {
  double production = 0.0;  // C_p
  double startup = 0.0;     // C_su
  double shutdown = 0.0;    // C_sd
  double reserve = 0.0;     // C_e
  double hps_grid = 0.0;    // C_hps^gr
  double slack = 0.0;       // C_sl

  double total() const { return production + startup + shutdown + reserve + hps_grid + slack; }
};

struct UnitSchedule {
  std::string id;
  std::vector<double> output;
  std::vector<std::uint8_t> on, startup, shutdown;
  std::vector<std::vector<double>> reserve;  // [rule][t]
};

struct StorageSchedule {
  std::string id;
  std::vector<double> charge, discharge, soc;
  std::vector<std::uint8_t> charging, discharging;
  std::vector<std::vector<double>> reserve;  // [rule][t]
};

struct HpsSchedule {
  std::string id;
  std::vector<double> dispatch;         // P_h
  std::vector<double> grid_absorption;  // P_h^gr
  std::vector<std::uint8_t> committed;  // l_h
  std::vector<double> available_energy;
  std::vector<std::vector<double>> reserve;  // [rule][t]
  double offer = 0.0;           // MWh offered for the horizon
  double non_dispatched = 0.0;  // x_h
};

enum class SolveStatus { optimal, feasible_gap, infeasible, error };

std::string to_string(SolveStatus status);

struct DispatchSchedule {
  int horizon = 0;
  int start_hour = 0;
  std::vector<ReserveRule> rules;  // rules active in this solution, same order as reserve vectors
  std::vector<UnitSchedule> units;
  std::vector<StorageSchedule> storage;
  std::vector<HpsSchedule> hps;
  std::vector<double> wind_curtailment;
  std::vector<double> energy_not_served;
  std::vector<double> surplus;                          // over-generation dumped
  std::vector<std::vector<double>> reserve_requirement;  // [rule][t]
  std::vector<std::vector<double>> reserve_shortfall;    // [rule][t]
  double objective = 0.0;
  CostBreakdown costs;
  SolveStatus status = SolveStatus::error;
  double gap = 0.0;
};

/// Left side minus right side of the system power balance at interval t.
double balance_residual(const SystemSnapshot& snapshot, const DispatchSchedule& schedule, int t);

}  // namespace islandsim
