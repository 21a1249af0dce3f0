#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "islandsim/hps_agent.hpp"
#include "islandsim/milp.hpp"
#include "islandsim/scenario.hpp"

namespace islandsim {

struct HpsHour {
  double res_available = 0.0;
  double order_production = 0.0;
  double order_absorption = 0.0;
  double energy_cap = 0.0;  // dispatchable energy the operator saw this hour
  HpsRealization realization;
};

/// One realized real-time hour.
struct HourRecord {
  int hour = 0;  // hour of the year
  double load = 0.0;
  double pv = 0.0;
  double wind_existing = 0.0;  // available
  double wind_new = 0.0;       // available, central concept
  double wind_curtailment = 0.0;
  double energy_not_served = 0.0;
  double surplus = 0.0;
  std::vector<double> unit_output;
  std::vector<std::uint8_t> unit_on;
  std::vector<double> bes_charge, bes_discharge, bes_soc, bes_soc_floor;
  std::vector<HpsHour> hps;
  double production_cost = 0.0;
  double startup_cost = 0.0;
  double shutdown_cost = 0.0;
  double reserve_shortfall = 0.0;  // MW summed over reserve types
  int passes = 1;
  SolveStatus status = SolveStatus::optimal;
};

/// Day-ahead and intraday scheduling results of one day.
struct DayRecord {
  int day = 0;
  SolveStatus das_status = SolveStatus::optimal;
  double das_objective = 0.0;
  double das_gap = 0.0;
  SolveStatus intraday_status = SolveStatus::optimal;
  double intraday_objective = 0.0;
  double intraday_gap = 0.0;
  std::vector<double> das_offer;       // per HPS
  std::vector<double> intraday_offer;  // per HPS
  std::vector<double> undelivered;     // per HPS
};

struct AnnualLedger {
  Scenario scenario;
  std::vector<std::string> unit_ids, bes_ids, hps_ids;
  std::vector<HourRecord> hours;
  std::vector<DayRecord> days;
};

/// Annual energy and cost accounting of a ledger.
struct AnnualTotals {
  int hours = 0;
  double load = 0.0;
  double pv = 0.0;
  double wind_existing_available = 0.0;
  double wind_new_available = 0.0;
  double wind_curtailed = 0.0;
  double wind_existing_injected = 0.0;
  double wind_new_injected = 0.0;
  double hps_res_available = 0.0;
  double hps_res_to_grid = 0.0;
  double hps_res_to_storage = 0.0;
  double hps_res_rejected = 0.0;
  double hps_discharge = 0.0;
  double hps_charge = 0.0;
  double hps_grid_absorption = 0.0;
  double hps_imbalance = 0.0;
  double thermal_energy = 0.0;
  double conventional_cost = 0.0;  // production plus start-up and shut-down, €
  double bes_charge = 0.0;
  double bes_discharge = 0.0;
  double energy_not_served = 0.0;
  double surplus = 0.0;
  double reserve_shortfall = 0.0;  // MWh

  double hps_net_injection() const { return hps_res_to_grid + hps_discharge; }
  /// RES energy reaching consumers over the load.
  double res_delivered() const;
  double res_penetration() const;
};

AnnualTotals summarize(const AnnualLedger& ledger);

/// Hourly balance and storage checks on a ledger; each failure is described.
std::vector<std::string> check_ledger(const AnnualLedger& ledger, const ScenarioSystem& system,
                                      double tolerance = 1e-6);

/// Annual identities: generation + ENS = load + charging + HPS absorption + surplus,
/// and curtailment within availability, to `tolerance_mwh`.
std::vector<std::string> check_energy_identities(const AnnualLedger& ledger,
                                                 double tolerance_mwh = 1.0);

/// Carried from one hour to the next.
struct OperatingState {
  std::vector<UnitInitialState> units;
  std::vector<double> bes_soc;
  std::vector<double> hps_soc;
};

struct RunOptions {
  milp::SolverSettings solver;
  int days = 365;
  bool release_reserves = true;
  double forecast_noise = 0.0;
  std::uint64_t seed = 0;
};

/// Daily loop: offers, day-ahead UC-ED, twelve real-time hours, intraday
/// UC-ED, twelve more real-time hours. State carries across days.
class ScenarioRunner {
 public:
  ScenarioRunner(const ScenarioSystem& system, RunOptions options);

  AnnualLedger empty_ledger() const;
  OperatingState initial_state() const;
  /// State after the last complete day of `ledger`.
  OperatingState state_after(const AnnualLedger& ledger) const;
  /// Appends the day's 24 hours and its day record. Throws SolverError if an
  /// optimization fails.
  void run_day(int day, OperatingState& state, AnnualLedger& ledger) const;

  const RunOptions& options() const { return opt_; }

 private:
  struct DayContext;
  void realize_hour(DayContext& ctx, const DispatchSchedule& plan, int plan_index,
                    OperatingState& state, AnnualLedger& ledger) const;
  std::vector<double> forecast(const std::vector<double>& actual, int day, std::uint64_t stream) const;
  SystemSnapshot snapshot(int start_hour, int horizon, const OperatingState& state) const;

  const ScenarioSystem& sys_;
  RunOptions opt_;
  int history_length_ = 1;
};

/// Runs `options.days` days from the start. `on_day` sees the ledger after each day.
AnnualLedger run_scenario(const ScenarioSystem& system, const RunOptions& options,
                          const std::function<void(const AnnualLedger&, int)>& on_day = {});

// ---------------------------------------------------------------------------
// Ledger files: hourly rows and daily rows, append-only.

std::vector<std::string> hour_columns(const AnnualLedger& ledger);
std::vector<std::string> day_columns(const AnnualLedger& ledger);
void write_hour_header(const AnnualLedger& ledger, std::ostream& os);
void write_hour_row(const AnnualLedger& ledger, const HourRecord& row, std::ostream& os);
void write_day_header(const AnnualLedger& ledger, std::ostream& os);
void write_day_row(const AnnualLedger& ledger, const DayRecord& row, std::ostream& os);

/// Reads the complete days of a ledger pair. Trailing partial days are dropped.
/// Throws IoError on malformed files.
AnnualLedger read_ledger(const std::filesystem::path& hours_csv,
                         const std::filesystem::path& days_csv, const AnnualLedger& shape);

}  // namespace islandsim
