#include "islandsim/economics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "islandsim/errors.hpp"
#include "numfmt.hpp"

namespace islandsim {

namespace {

void require_rate(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string("economics.") + name + " must lie in [0, 1]");
}

void require_nonneg(double v, const char* name) {
  if (!(v >= 0.0)) throw ValidationError(std::string("economics.") + name + " must be >= 0");
}

}  // namespace

void EconomicParams::validate() const {
  require_rate(tax_rate, "tax_rate");
  require_rate(om_rate, "om_rate");
  require_rate(discount_rate, "discount_rate");
  require_nonneg(bes_energy_capex, "bes_energy_capex");
  require_nonneg(bes_replacement_capex, "bes_replacement_capex");
  require_nonneg(bes_power_capex, "bes_power_capex");
  require_nonneg(wind_capex, "wind_capex");
  require_nonneg(existing_res_tariff, "existing_res_tariff");
  require_nonneg(thermal_capex, "thermal_capex");
  require_nonneg(thermal_annualized_fixed, "thermal_annualized_fixed");
  if (evaluation_years < 1) throw ValidationError("economics.evaluation_years must be >= 1");
  if (depreciation_years < 1) throw ValidationError("economics.depreciation_years must be >= 1");
  if (replacement_year < 1 || replacement_year >= evaluation_years) {
    throw ValidationError("economics.replacement_year must lie in [1, evaluation_years)");
  }
}

Investment storage_and_wind_investment(const EconomicParams& p, double bes_power_mw,
                                       double bes_energy_mwh, double wind_mw) {
  Investment inv;
  inv.initial = 1000.0 * (wind_mw * p.wind_capex + bes_power_mw * p.bes_power_capex +
                          bes_energy_mwh * p.bes_energy_capex);
  inv.replacement = 1000.0 * bes_energy_mwh * p.bes_replacement_capex;
  return inv;
}

std::optional<double> levelized_cost(const EconomicParams& p, const Investment& inv,
                                     std::span<const double> annual_energy,
                                     std::span<const double> annual_extra_cost) {
  p.validate();
  const auto years = static_cast<std::size_t>(p.evaluation_years);
  if (annual_energy.size() != years) {
    throw ValidationError("annual energy series must have " + std::to_string(years) +
                          " entries, got " + std::to_string(annual_energy.size()));
  }
  if (!annual_extra_cost.empty() && annual_extra_cost.size() != years) {
    throw ValidationError("annual cost series must have " + std::to_string(years) + " entries");
  }
  const double i = p.discount_rate;
  const double tr = p.tax_rate;
  const double om = p.om_rate * inv.initial;
  const int dy = p.depreciation_years;
  const int ry = p.replacement_year;

  double numerator = inv.initial + inv.replacement / std::pow(1.0 + i, ry);
  double energy = 0.0;
  for (std::size_t k = 0; k < years; ++k) {
    const int y = static_cast<int>(k) + 1;
    const double df = std::pow(1.0 + i, y);
    double dep = 0.0;
    if (y <= dy) dep += inv.initial / dy;
    if (y > ry && y <= ry + dy) dep += inv.replacement / dy;
    const double extra = annual_extra_cost.empty() ? 0.0 : annual_extra_cost[k];
    numerator += ((om + extra) * (1.0 - tr) - dep * tr) / df;
    energy += annual_energy[k] / df;
  }
  const double denominator = (1.0 - tr) * energy;
  if (!(denominator > 0.0)) return std::nullopt;
  return numerator / denominator;
}

std::optional<double> lcoe_central(const EconomicParams& p, double bes_power_mw,
                                   double bes_energy_mwh, double wind_mw,
                                   std::span<const double> annual_new_wind_injection) {
  return levelized_cost(p, storage_and_wind_investment(p, bes_power_mw, bes_energy_mwh, wind_mw),
                        annual_new_wind_injection);
}

std::optional<double> lcoe_self(const EconomicParams& p, const HpsPlant& hps,
                                std::span<const double> annual_net_injection,
                                std::span<const double> annual_imbalances) {
  if (annual_imbalances.size() != annual_net_injection.size()) {
    throw ValidationError("imbalance and injection series must have equal length");
  }
  std::vector<double> charges;
  for (double e : annual_imbalances) charges.push_back(e * hps.prices.imbalance);
  auto inv = storage_and_wind_investment(p, hps.storage.p_discharge_max, hps.storage.e_max,
                                         hps.wind_capacity);
  return levelized_cost(p, inv, annual_net_injection, charges);
}

double system_cost_impact(const CostSummary& base, const CostSummary& scenario,
                          double scenario_lcoe, double existing_res_tariff) {
  if (base.hours != scenario.hours) {
    throw ValidationError("ledger lengths differ: " + std::to_string(base.hours) + " vs " +
                          std::to_string(scenario.hours));
  }
  auto total = [&](const CostSummary& c, double lcoe) {
    return c.conventional_variable_cost + c.existing_res_energy * existing_res_tariff +
           c.new_asset_energy * lcoe;
  };
  const double base_lcoe = 0.0;  // the base case carries no new assets
  return total(base, base_lcoe) - total(scenario, scenario_lcoe);
}

namespace {

// Largest constant reduction of the daily peak the storage sustains: every
// hour above the reduced peak is served by discharge, and the energy drawn is
// recharged in the hours below it without creating a new peak. need(s) and
// room(s) are piecewise linear in s, so the limit is solved segment by segment.
double day_shave(std::span<const double> day, double power, double energy, double leg) {
  const double peak = *std::max_element(day.begin(), day.end());
  std::vector<double> bp{0.0, power};
  for (double l : day) {
    for (double b : {peak - l, peak - l - power}) {
      if (b > 0.0 && b < power) bp.push_back(b);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  const double leg2 = leg * leg;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const double mid = 0.5 * (bp[k] + bp[k + 1]);
    // need = a1 + n s, room = a2 - m s
    double a1 = 0.0, a2 = 0.0;
    int n = 0, m = 0;
    for (double l : day) {
      if (l > peak - mid) {
        a1 += l - peak;
        ++n;
      } else if (peak - mid - l >= power) {
        a2 += power;
      } else {
        a2 += peak - l;
        ++m;
      }
    }
    double limit = bp[k + 1];
    if (n > 0) limit = std::min(limit, (energy * leg - a1) / n);
    const double denom = n + m * leg2;
    if (denom > 0.0) limit = std::min(limit, (a2 * leg2 - a1) / denom);
    if (limit < bp[k + 1]) return std::max(bp[k], limit);
  }
  return power;
}

}  // namespace

double capacity_credit(std::span<const double> load, double bes_power_mw, double bes_energy_mwh,
                       double roundtrip_eff) {
  if (load.empty() || load.size() % 24 != 0) {
    throw ValidationError("capacity credit needs whole days of hourly load");
  }
  if (!(roundtrip_eff > 0.0 && roundtrip_eff <= 1.0)) {
    throw ValidationError("roundtrip efficiency must lie in (0, 1]");
  }
  for (double l : load) {
    if (!(l >= 0.0)) throw ValidationError("load must be non-negative");
  }
  if (!(bes_power_mw > 0.0) || !(bes_energy_mwh > 0.0)) return 0.0;
  const double leg = std::sqrt(roundtrip_eff);
  double credit = bes_power_mw;
  for (std::size_t d = 0; d < load.size(); d += 24) {
    credit = std::min(credit, day_shave(load.subspan(d, 24), bes_power_mw, bes_energy_mwh, leg));
  }
  return credit;
}

double total_cost_impact(double system_cost_impact, double capacity_credit_mw,
                         double annualized_fixed_per_kw) {
  if (!(capacity_credit_mw >= 0.0)) throw ValidationError("capacity credit must be >= 0");
  return system_cost_impact + capacity_credit_mw * 1000.0 * annualized_fixed_per_kw;
}

const std::vector<std::string>& economic_report_columns() {
  static const std::vector<std::string> cols{
      "scenario",          "management",           "new_wind_mw",
      "bes_power_mw",      "bes_energy_mwh",    "lcoe_eur_mwh",
      "res_penetration",   "curtail_share_existing_wind", "curtail_share_new_wind",
      "curtail_share_hps", "system_cost_delta_eur", "capacity_credit_mw",
      "total_cost_delta_eur"};
  return cols;
}

void write_economic_reports(std::span<const EconomicReport> rows, std::ostream& os) {
  using detail::fixed;
  auto opt = [](const std::optional<double>& v, int decimals) {
    return v ? fixed(*v, decimals) : std::string("undefined");
  };
  const auto& cols = economic_report_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.management << ',' << fixed(r.new_wind_mw, 3) << ','
       << fixed(r.bes_power_mw, 3) << ',' << fixed(r.bes_energy_mwh, 3) << ','
       << opt(r.lcoe, 4) << ','
       << fixed(r.res_penetration, 6) << ',' << fixed(r.curtailment_existing_wind, 6) << ','
       << fixed(r.curtailment_new_wind, 6) << ',' << fixed(r.curtailment_hps, 6) << ','
       << opt(r.system_cost_delta, 2) << ',' << fixed(r.capacity_credit_mw, 4) << ','
       << opt(r.total_cost_delta, 2) << '\n';
  }
}

}  // namespace islandsim
