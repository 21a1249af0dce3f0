#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "islandsim/domain.hpp"

namespace islandsim {

struct EconomicParams {
  int evaluation_years = 20;
  double tax_rate = 0.25;
  double om_rate = 0.02;  // share of the initial investment per year
  int depreciation_years = 10;
  double discount_rate = 0.08;
  double bes_energy_capex = 250.0;       // €/kWh
  double bes_replacement_capex = 150.0;  // €/kWh
  double bes_power_capex = 400.0;        // €/kW
  double wind_capex = 1200.0;            // €/kW
  int replacement_year = 10;
  double existing_res_tariff = 65.0;      // €/MWh paid to existing RES
  double thermal_capex = 1400.0;          // €/kW
  double thermal_annualized_fixed = 177.0;  // €/kW per year

  /// Throws ValidationError if a rate leaves [0, 1] or a cost is negative.
  void validate() const;

  friend bool operator==(const EconomicParams&, const EconomicParams&) = default;
};

struct Investment {
  double initial = 0.0;      // I0, €
  double replacement = 0.0;  // battery replacement, €
};

Investment storage_and_wind_investment(const EconomicParams& p, double bes_power_mw,
                                       double bes_energy_mwh, double wind_mw);

/// After-tax levelized cost with linear depreciation. `annual_energy` and
/// `annual_extra_cost` (taxed like O&M, may be empty) have one entry per year.
/// nullopt when the discounted energy is zero.
std::optional<double> levelized_cost(const EconomicParams& p, const Investment& inv,
                                     std::span<const double> annual_energy,
                                     std::span<const double> annual_extra_cost = {});

/// New wind plus centrally dispatched storage; energy is the new wind injection.
std::optional<double> lcoe_central(const EconomicParams& p, double bes_power_mw,
                                   double bes_energy_mwh, double wind_mw,
                                   std::span<const double> annual_new_wind_injection);

/// Self-dispatched HPS; energy is the station's net injection and imbalances
/// are charged at the plant's imbalance price.
std::optional<double> lcoe_self(const EconomicParams& p, const HpsPlant& hps,
                                std::span<const double> annual_net_injection,
                                std::span<const double> annual_imbalances);

/// Annual cost figures of one simulated year.
struct CostSummary {
  int hours = 0;
  double conventional_variable_cost = 0.0;  // €
  double existing_res_energy = 0.0;         // MWh at the feed-in tariff
  double new_asset_energy = 0.0;            // MWh at the scenario LCOE
};

/// Base total minus scenario total; positive means savings.
double system_cost_impact(const CostSummary& base, const CostSummary& scenario,
                          double scenario_lcoe, double existing_res_tariff = 65.0);

/// Largest constant shave of every daily peak a storage can sustain, recharging
/// off-peak within the same day. `load` covers whole days.
double capacity_credit(std::span<const double> load, double bes_power_mw, double bes_energy_mwh,
                       double roundtrip_eff);

/// Variable cost delta plus avoided thermal capacity.
double total_cost_impact(double system_cost_impact, double capacity_credit_mw,
                         double annualized_fixed_per_kw = 177.0);

struct EconomicReport {
  std::string scenario;
  std::string management;  // "central" or "self"
  double new_wind_mw = 0.0;
  double bes_power_mw = 0.0;
  double bes_energy_mwh = 0.0;
  std::optional<double> lcoe;
  double res_penetration = 0.0;
  double curtailment_existing_wind = 0.0;  // share of available energy
  double curtailment_new_wind = 0.0;
  double curtailment_hps = 0.0;
  std::optional<double> system_cost_delta;  // needs the base case
  double capacity_credit_mw = 0.0;
  std::optional<double> total_cost_delta;
};

/// Column names of the report CSV, in order.
const std::vector<std::string>& economic_report_columns();

void write_economic_reports(std::span<const EconomicReport> rows, std::ostream& os);

}  // namespace islandsim
