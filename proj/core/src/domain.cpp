#include "islandsim/domain.hpp"

#include <algorithm>
#include <set>

namespace islandsim {

namespace {

constexpr double kWidthTolerance = 1e-6;

void require(std::vector<Violation>& out, bool ok, const std::string& asset,
             const std::string& field, const std::string& rule) {
  if (!ok) out.push_back({asset, field, rule});
}

void check_series(std::vector<Violation>& out, const std::vector<double>& series,
                  int horizon, const std::string& name) {
  if (static_cast<int>(series.size()) != horizon) {
    out.push_back({"snapshot", name,
                   "series length mismatch: expected " + std::to_string(horizon) + ", got " +
                       std::to_string(series.size())});
    return;
  }
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!(series[t] >= 0.0) || !std::isfinite(series[t])) {
      out.push_back({"snapshot", name, "negative or non-finite value at interval " +
                                           std::to_string(t)});
      return;
    }
  }
}

}  // namespace

std::string ReserveRule::name() const {
  std::string s;
  switch (kind) {
    case ReserveKind::primary: s = "pr"; break;
    case ReserveKind::secondary: s = "sr"; break;
    case ReserveKind::tertiary: s = "tr"; break;
  }
  return s + (direction == ReserveDirection::up ? "_up" : "_dn");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_gap: return "feasible_gap";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::error: return "error";
  }
  return "error";
}

std::vector<Violation> validate_unit(const ThermalUnit& u) {
  std::vector<Violation> out;
  const std::string& a = u.id;
  require(out, u.p_min > 0.0, a, "p_min", "must be > 0");
  require(out, u.p_min <= u.p_max, a, "p_max", "p_min must not exceed p_max");
  double width = 0.0;
  for (const auto& b : u.cost_blocks) width += b.width_mw;
  require(out, std::abs(width - (u.p_max - u.p_min)) <= kWidthTolerance * std::max(1.0, u.p_max),
          a, "cost_blocks", "block widths must sum to p_max - p_min");
  for (std::size_t b = 0; b < u.cost_blocks.size(); ++b) {
    const auto& blk = u.cost_blocks[b];
    require(out, blk.width_mw > 0.0, a, "cost_blocks", "block width must be > 0");
    require(out, blk.marginal_cost >= 0.0, a, "cost_blocks", "marginal cost must be >= 0");
    if (b > 0) {
      require(out, blk.marginal_cost >= u.cost_blocks[b - 1].marginal_cost, a, "cost_blocks",
              "marginal costs must be non-decreasing (convex cost curve)");
    }
  }
  require(out, u.cost_at_pmin >= 0.0, a, "cost_at_pmin", "must be >= 0");
  require(out, u.startup_cost >= 0.0 && u.shutdown_cost >= 0.0, a, "startup_cost",
          "start-up and shut-down costs must be >= 0");
  require(out, u.ramp_up > 0.0, a, "ramp_up", "must be > 0");
  require(out, u.ramp_down > 0.0, a, "ramp_down", "must be > 0");
  require(out, u.ramp_up >= u.p_min, a, "ramp_up", "must be >= p_min so the unit can start");
  require(out, u.min_up_time >= 1, a, "min_up_time", "must be >= 1 h");
  require(out, u.min_down_time >= 1, a, "min_down_time", "must be >= 1 h");
  return out;
}

std::vector<Violation> validate_bes(const BesUnit& b) {
  std::vector<Violation> out;
  const std::string& a = b.id;
  require(out, b.p_charge_max > 0.0, a, "p_charge_max", "must be > 0");
  require(out, b.p_discharge_max > 0.0, a, "p_discharge_max", "must be > 0");
  require(out, b.e_min >= 0.0, a, "e_min", "must be >= 0");
  require(out, b.e_min <= b.initial_soc, a, "initial_soc", "must be >= e_min");
  require(out, b.initial_soc <= b.e_max, a, "initial_soc", "must be <= e_max");
  require(out, b.roundtrip_eff > 0.0 && b.roundtrip_eff <= 1.0, a, "roundtrip_eff",
          "must lie in (0, 1]");
  return out;
}

std::vector<Violation> validate_hps(const HpsPlant& h) {
  std::vector<Violation> out;
  const std::string& a = h.id;
  require(out, h.p_min_component > 0.0, a, "p_min_component", "must be > 0");
  require(out, h.p_min_component <= h.p_max, a, "p_max", "p_min_component must not exceed p_max");
  require(out, h.grid_absorb_max >= 0.0, a, "grid_absorb_max", "must be >= 0");
  require(out, h.roundtrip_eff > 0.0 && h.roundtrip_eff <= 1.0, a, "roundtrip_eff",
          "must lie in (0, 1]");
  require(out, h.wind_capacity >= 0.0, a, "wind_capacity", "must be >= 0");
  for (double c : h.offer_coefficients) {
    require(out, c >= 0.0 && c <= 1.0, a, "offer_coefficients", "must lie in [0, 1]");
  }
  require(out, h.prices.purchase >= 0.0, a, "market_prices", "m2 must be >= 0");
  require(out, h.prices.imbalance >= h.prices.purchase, a, "market_prices", "m3 must be >= m2");
  for (auto& v : validate_bes(h.storage)) {
    out.push_back({a + "/" + v.asset, v.field, v.rule});
  }
  return out;
}

std::vector<Violation> validate_reserve_rules(const std::vector<ReserveRule>& rules,
                                              const Penalties& penalties) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const auto& r : rules) {
    const std::string a = "reserve:" + r.name();
    require(out, seen.insert(r.name()).second, a, "kind", "duplicate reserve type");
    require(out, r.parameter >= 0.0, a, "parameter", "must be >= 0");
    if (r.rule == RequirementRule::load_fraction) {
      require(out, r.parameter <= 1.0, a, "parameter", "load fraction must be <= 1");
    }
    if (r.rule == RequirementRule::largest_infeed) {
      require(out, r.direction == ReserveDirection::up, a, "rule",
              "largest-infeed rule applies to upward reserves only");
    }
    require(out, r.reserve_cost >= 0.0, a, "reserve_cost", "must be >= 0");
    require(out, r.violation_penalty > r.reserve_cost, a, "violation_penalty",
            "must exceed reserve_cost");
    require(out, 10.0 * r.violation_penalty <= penalties.energy_not_served, a,
            "violation_penalty", "must be well below the energy-not-served penalty");
  }
  require(out, penalties.energy_not_served > 0.0, "penalties", "energy_not_served", "must be > 0");
  require(out, penalties.hps_grid_energy >= 0.0, "penalties", "hps_grid_energy", "must be >= 0");
  return out;
}

std::vector<Violation> validate_system(const SystemSnapshot& s) {
  std::vector<Violation> out;
  if (s.horizon <= 0) {
    out.push_back({"snapshot", "horizon", "must be > 0"});
    return out;
  }
  check_series(out, s.load, s.horizon, "load");
  check_series(out, s.wind_available, s.horizon, "wind_available");
  check_series(out, s.pv_available, s.horizon, "pv_available");

  std::set<std::string> ids;
  auto unique_id = [&](const std::string& id) {
    require(out, ids.insert(id).second, id, "id", "duplicate asset id");
  };

  for (const auto& u : s.thermal_units) {
    unique_id(u.id);
    auto v = validate_unit(u);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (s.prior_commitment.size() != s.thermal_units.size()) {
    out.push_back({"snapshot", "prior_commitment", "one entry per thermal unit required"});
  } else {
    for (std::size_t i = 0; i < s.thermal_units.size(); ++i) {
      const auto& u = s.thermal_units[i];
      const auto& init = s.prior_commitment[i];
      const auto need = static_cast<std::size_t>(std::max(u.min_up_time, u.min_down_time));
      require(out, init.history.size() >= need, u.id, "prior_commitment",
              "history must cover max(min_up_time, min_down_time) hours");
      require(out, init.output >= 0.0 && init.output <= u.p_max + 1e-9, u.id, "prior_output",
              "must lie in [0, p_max]");
      if (!init.online()) {
        require(out, init.output == 0.0, u.id, "prior_output", "must be 0 for an offline unit");
      }
    }
  }

  for (const auto& b : s.bes_units) {
    unique_id(b.id);
    auto v = validate_bes(b);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (s.prior_soc.size() != s.bes_units.size()) {
    out.push_back({"snapshot", "prior_soc", "one entry per BES required"});
  } else {
    for (std::size_t i = 0; i < s.bes_units.size(); ++i) {
      const auto& b = s.bes_units[i];
      require(out, s.prior_soc[i] >= b.e_min - 1e-9 && s.prior_soc[i] <= b.e_max + 1e-9, b.id,
              "prior_soc", "must lie in [e_min, e_max]");
    }
  }

  for (const auto& h : s.hps_plants) {
    unique_id(h.id);
    auto v = validate_hps(h);
    out.insert(out.end(), v.begin(), v.end());
  }
  if (s.hps_res_available.size() != s.hps_plants.size()) {
    out.push_back({"snapshot", "hps_res_available", "one series per HPS required"});
  } else {
    for (std::size_t h = 0; h < s.hps_plants.size(); ++h) {
      check_series(out, s.hps_res_available[h], s.horizon,
                   "hps_res_available[" + s.hps_plants[h].id + "]");
    }
  }

  auto v = validate_reserve_rules(s.reserve_rules, s.penalties);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

double production_cost(const ThermalUnit& unit, double output, bool online) {
  if (!online) return 0.0;
  double cost = unit.cost_at_pmin;
  double remaining = std::max(0.0, output - unit.p_min);
  for (const auto& b : unit.cost_blocks) {
    const double used = std::min(remaining, b.width_mw);
    cost += used * b.marginal_cost;
    remaining -= used;
    if (remaining <= 0.0) break;
  }
  return cost;
}

double balance_residual(const SystemSnapshot& s, const DispatchSchedule& d, int t) {
  double supply = s.pv_available[t] + s.wind_available[t] - d.wind_curtailment[t] +
                  d.energy_not_served[t] - d.surplus[t];
  double demand = s.load[t];
  for (const auto& u : d.units) supply += u.output[t];
  for (const auto& b : d.storage) {
    supply += b.discharge[t];
    demand += b.charge[t];
  }
  for (const auto& h : d.hps) {
    supply += h.dispatch[t];
    demand += h.grid_absorption[t];
  }
  return supply - demand;
}

}  // namespace islandsim
