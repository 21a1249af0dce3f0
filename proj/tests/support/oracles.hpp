#pragma once

// Brute-force reference computations used by the unit tests and the acceptance check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dense_lp.hpp"
#include "islandsim/domain.hpp"
#include "islandsim/economics.hpp"
#include "islandsim/pareto.hpp"

namespace oracle {

using islandsim::BesUnit;
using islandsim::SystemSnapshot;
using islandsim::ThermalUnit;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Two thermal units, one battery, 4 hours, no reserves.
inline SystemSnapshot random_micro_system(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SystemSnapshot s;
  s.horizon = 4;
  s.start_hour = 0;
  double cap = 0.0;
  for (int i = 0; i < 2; ++i) {
    ThermalUnit u;
    u.id = "G" + std::to_string(i + 1);
    u.p_max = std::round(uniform(rng, 20.0, 60.0));
    u.p_min = std::round(u.p_max * uniform(rng, 0.25, 0.5));
    const int nb = uniform_int(rng, 1, 3);
    double mc = uniform(rng, 40.0, 160.0);
    for (int b = 0; b < nb; ++b) {
      u.cost_blocks.push_back({(u.p_max - u.p_min) / nb, mc});
      mc += uniform(rng, 0.0, 30.0);
    }
    u.cost_at_pmin = u.p_min * uniform(rng, 40.0, 180.0);
    u.startup_cost = uniform(rng, 0.0, 3000.0);
    u.shutdown_cost = uniform(rng, 0.0, 300.0);
    u.ramp_up = u.p_max * uniform(rng, 0.5, 1.0);
    u.ramp_down = u.p_max * uniform(rng, 0.3, 1.0);
    u.ramp_up = std::max(u.ramp_up, u.p_min);
    u.min_up_time = uniform_int(rng, 1, 3);
    u.min_down_time = uniform_int(rng, 1, 3);
    cap += u.p_max;
    s.thermal_units.push_back(u);

    islandsim::UnitInitialState init;
    const bool on = uniform_int(rng, 0, 1) == 1;
    const int since = uniform_int(rng, 1, 4);
    for (int k = 0; k < 5; ++k) init.history.push_back(k >= 5 - since ? on : !on);
    init.output = on ? uniform(rng, u.p_min, std::min(u.p_max, u.p_min + u.ramp_down)) : 0.0;
    s.prior_commitment.push_back(init);
  }
  BesUnit b;
  b.id = "B1";
  b.p_charge_max = std::round(uniform(rng, 4.0, 15.0));
  b.p_discharge_max = b.p_charge_max;
  b.e_max = std::round(b.p_charge_max * uniform(rng, 1.0, 4.0));
  b.e_min = 0.0;
  b.roundtrip_eff = uniform(rng, 0.75, 0.95);
  b.initial_soc = uniform(rng, 0.0, b.e_max);
  s.bes_units.push_back(b);
  s.prior_soc.push_back(b.initial_soc);
  for (int t = 0; t < s.horizon; ++t) {
    s.load.push_back(uniform(rng, 0.3, 0.9) * cap);
    s.wind_available.push_back(uniform(rng, 0.0, 20.0));
    s.pv_available.push_back(uniform(rng, 0.0, 8.0));
  }
  s.penalties.energy_not_served = 10000.0;
  return s;
}

namespace detail {

inline bool startup_at(const std::vector<bool>& seq, std::size_t j) { return j > 0 && seq[j] && !seq[j - 1]; }
inline bool shutdown_at(const std::vector<bool>& seq, std::size_t j) { return j > 0 && !seq[j] && seq[j - 1]; }

// Minimum up/down times for the horizon part of a history-plus-horizon sequence.
inline bool respects_min_times(const std::vector<bool>& seq, std::size_t H, int up, int down) {
  for (std::size_t j = H; j < seq.size(); ++j) {
    for (int k = 0; k < up; ++k) {
      if (j < static_cast<std::size_t>(k)) break;
      if (startup_at(seq, j - static_cast<std::size_t>(k)) && !seq[j]) return false;
    }
    for (int k = 0; k < down; ++k) {
      if (j < static_cast<std::size_t>(k)) break;
      if (shutdown_at(seq, j - static_cast<std::size_t>(k)) && seq[j]) return false;
    }
  }
  return true;
}

// mode bit t set: battery may only charge in hour t; clear: only discharge. -1 allows both.
inline std::optional<LpResult> dispatch_lp(const SystemSnapshot& s, const std::vector<std::vector<bool>>& on,
                                           int mode, double& fixed_cost, bool& simultaneous) {
  const int T = s.horizon;
  DenseLp lp;
  fixed_cost = 0.0;
  std::vector<std::vector<std::vector<int>>> dp(s.thermal_units.size());
  for (std::size_t i = 0; i < s.thermal_units.size(); ++i) {
    const auto& u = s.thermal_units[i];
    dp[i].resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
      const bool is_on = on[i][static_cast<std::size_t>(t)];
      const bool was_on = t == 0 ? s.prior_commitment[i].online() : on[i][static_cast<std::size_t>(t - 1)];
      if (is_on) {
        fixed_cost += u.cost_at_pmin;
        for (const auto& b : u.cost_blocks) dp[i][static_cast<std::size_t>(t)].push_back(lp.add_var(b.marginal_cost, b.width_mw));
      }
      if (is_on && !was_on) fixed_cost += u.startup_cost;
      if (!is_on && was_on) fixed_cost += u.shutdown_cost;
    }
  }
  const BesUnit b = s.bes_units.empty() ? BesUnit{} : s.bes_units.front();
  const double soc0 = s.prior_soc.empty() ? 0.0 : s.prior_soc.front();
  const double eta = std::sqrt(b.roundtrip_eff);
  std::vector<int> pc, pd, soc, xw, ens, sp;
  for (int t = 0; t < T; ++t) {
    const bool charge_only = mode >= 0 && ((mode >> t) & 1);
    const bool discharge_only = mode >= 0 && !((mode >> t) & 1);
    pc.push_back(lp.add_var(0.0, discharge_only ? 0.0 : b.p_charge_max));
    pd.push_back(lp.add_var(0.0, charge_only ? 0.0 : b.p_discharge_max));
    soc.push_back(lp.add_var(0.0, b.e_max));
    xw.push_back(lp.add_var(0.0, s.wind_available[static_cast<std::size_t>(t)]));
    ens.push_back(lp.add_var(s.penalties.energy_not_served));
    sp.push_back(lp.add_var(s.penalties.energy_not_served));
  }
  for (int t = 0; t < T; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    // balance
    std::vector<std::pair<int, double>> row;
    double rhs = s.load[ts] - s.pv_available[ts] - s.wind_available[ts];
    for (std::size_t i = 0; i < s.thermal_units.size(); ++i) {
      if (!on[i][ts]) continue;
      rhs -= s.thermal_units[i].p_min;
      for (int v : dp[i][ts]) row.push_back({v, 1.0});
    }
    row.push_back({pd[ts], 1.0});
    row.push_back({pc[ts], -1.0});
    row.push_back({xw[ts], -1.0});
    row.push_back({ens[ts], 1.0});
    row.push_back({sp[ts], -1.0});
    lp.add_row(row, Rel::eq, rhs);
    // storage
    std::vector<std::pair<int, double>> st{{soc[ts], 1.0}, {pc[ts], -eta}, {pd[ts], 1.0 / eta}};
    double st_rhs = 0.0;
    if (t == 0) {
      st_rhs = soc0;
    } else {
      st.push_back({soc[ts - 1], -1.0});
    }
    lp.add_row(st, Rel::eq, st_rhs);
    if (b.e_min > 0.0) lp.add_row({{soc[ts], 1.0}}, Rel::ge, b.e_min);
    // ramps: p_t - p_{t-1} <= RU on_t ; p_{t-1} - p_t <= RD on_t + Pmax sd_t
    for (std::size_t i = 0; i < s.thermal_units.size(); ++i) {
      const auto& u = s.thermal_units[i];
      const bool is_on = on[i][ts];
      const bool was_on = t == 0 ? s.prior_commitment[i].online() : on[i][ts - 1];
      std::vector<std::pair<int, double>> diff;
      double konst = 0.0;  // constant part of p_t - p_{t-1}
      if (is_on) {
        konst += u.p_min;
        for (int v : dp[i][ts]) diff.push_back({v, 1.0});
      }
      if (t == 0) {
        konst -= s.prior_commitment[i].output;
      } else if (was_on) {
        konst -= u.p_min;
        for (int v : dp[i][ts - 1]) diff.push_back({v, -1.0});
      }
      const double up = is_on ? u.ramp_up : 0.0;
      const double dn = (is_on ? u.ramp_down : 0.0) + (!is_on && was_on ? u.p_max : 0.0);
      if (diff.empty()) {
        if (konst > up + 1e-9 || -konst > dn + 1e-9) return std::nullopt;
        continue;
      }
      lp.add_row(diff, Rel::le, up - konst);
      auto neg = diff;
      for (auto& d : neg) d.second = -d.second;
      lp.add_row(neg, Rel::le, dn + konst);
    }
  }
  LpResult r = solve_dense(lp);
  if (!r.feasible) return std::nullopt;
  simultaneous = false;
  for (int t = 0; t < T; ++t) {
    if (r.x[static_cast<std::size_t>(pc[static_cast<std::size_t>(t)])] > 1e-7 &&
        r.x[static_cast<std::size_t>(pd[static_cast<std::size_t>(t)])] > 1e-7) {
      simultaneous = true;
    }
  }
  return r;
}

}  // namespace detail

/// Minimum total cost over every commitment pattern, each priced by an LP
/// dispatch. Battery exclusivity is enforced by enumerating charge/discharge
/// modes whenever the relaxed LP uses both in one hour.
inline std::optional<double> uc_enumeration(const SystemSnapshot& s) {
  const int T = s.horizon;
  const std::size_t N = s.thermal_units.size();
  const int bits = static_cast<int>(N) * T;
  std::optional<double> best;
  for (int pattern = 0; pattern < (1 << bits); ++pattern) {
    std::vector<std::vector<bool>> on(N, std::vector<bool>(static_cast<std::size_t>(T)));
    bool ok = true;
    for (std::size_t i = 0; i < N && ok; ++i) {
      std::vector<bool> seq = s.prior_commitment[i].history;
      const std::size_t H = seq.size();
      for (int t = 0; t < T; ++t) {
        on[i][static_cast<std::size_t>(t)] = (pattern >> (static_cast<int>(i) * T + t)) & 1;
        seq.push_back(on[i][static_cast<std::size_t>(t)]);
      }
      ok = detail::respects_min_times(seq, H, s.thermal_units[i].min_up_time, s.thermal_units[i].min_down_time);
    }
    if (!ok) continue;
    double fixed = 0.0;
    bool simultaneous = false;
    auto r = detail::dispatch_lp(s, on, -1, fixed, simultaneous);
    if (!r) continue;
    double cost = fixed + r->objective;
    if (simultaneous) {
      std::optional<double> restricted;
      for (int mode = 0; mode < (1 << T); ++mode) {
        bool sim = false;
        auto rm = detail::dispatch_lp(s, on, mode, fixed, sim);
        if (rm && (!restricted || fixed + rm->objective < *restricted)) restricted = fixed + rm->objective;
      }
      if (!restricted) continue;
      cost = *restricted;
    }
    if (!best || cost < *best) best = cost;
  }
  return best;
}

// ---------------------------------------------------------------------------

struct HpsCase {
  islandsim::HpsPlant plant;
  double production = 0.0;
  double absorption = 0.0;
  double res = 0.0;
  double soc = 0.0;
};

inline HpsCase random_hps_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto tenth = [](double v) { return std::round(v * 10.0) / 10.0; };
  HpsCase c;
  auto& h = c.plant;
  h.id = "H";
  h.p_max = tenth(uniform(rng, 5.0, 15.0));
  h.p_min_component = 0.5;
  h.roundtrip_eff = uniform(rng, 0.7, 0.95);
  h.storage.id = "H.B";
  h.storage.roundtrip_eff = h.roundtrip_eff;
  h.storage.p_charge_max = tenth(uniform(rng, 1.0, 8.0));
  h.storage.p_discharge_max = h.storage.p_charge_max;
  h.storage.e_max = tenth(uniform(rng, 2.0, 20.0));
  h.storage.e_min = 0.0;
  h.grid_absorb_max = h.storage.p_charge_max;
  h.wind_capacity = h.p_max;
  h.prices.sale = uniform(rng, 50.0, 150.0);
  h.prices.purchase = uniform(rng, 20.0, 80.0);
  h.prices.imbalance = std::max(h.prices.purchase, uniform(rng, 10.0, 300.0));
  c.soc = uniform(rng, 0.0, h.storage.e_max);
  h.storage.initial_soc = c.soc;
  c.res = tenth(uniform(rng, 0.0, h.p_max));
  const int kind = uniform_int(rng, 0, 2);
  c.production = kind == 1 ? 0.0 : tenth(uniform(rng, 0.0, h.p_max));
  c.absorption = kind == 0 ? 0.0 : tenth(uniform(rng, 0.0, h.grid_absorb_max * 1.2));
  if (kind == 2) c.production = 0.0;
  return c;
}

/// Best HPS revenue over a 0.1 MW grid of discharge, charge and RES-to-grid,
/// with the exact power limits added as grid points.
inline double hps_grid_search(const HpsCase& c) {
  const auto& h = c.plant;
  const auto& st = h.storage;
  const double eta = std::sqrt(h.roundtrip_eff);
  const auto& m = h.prices;
  const double dmax = std::min(st.p_discharge_max, (c.soc - st.e_min) * eta);
  const double cmax = std::min(st.p_charge_max, (st.e_max - c.soc) / eta);
  auto grid = [](double hi) {
    std::vector<double> g;
    for (int k = 0; k * 0.1 <= hi + 1e-12; ++k) g.push_back(std::min(hi, k * 0.1));
    g.push_back(std::max(0.0, hi));
    return g;
  };
  double best = -std::numeric_limits<double>::infinity();
  auto evaluate = [&](double d, double ch) {
    for (double rg : grid(std::min(c.res, c.production))) {
      if (rg + d > c.production + 1e-12) continue;
      const double room = std::max(0.0, c.res - rg);
      const double rs = std::clamp(ch - c.absorption, 0.0, std::min(ch, room));
      const double imb_p = c.production - rg - d;
      const double imb_a = std::abs(ch - rs - c.absorption);
      const double v = m.sale * (rg + d) - m.purchase * c.absorption - m.imbalance * (imb_p + imb_a);
      best = std::max(best, v);
    }
  };
  for (double d : grid(std::max(0.0, dmax))) evaluate(d, 0.0);
  for (double ch : grid(std::max(0.0, cmax))) evaluate(0.0, ch);
  return best;
}

/// Whether the order can be met with zero imbalance.
inline bool hps_order_feasible(const HpsCase& c) {
  const auto& st = c.plant.storage;
  const double eta = std::sqrt(c.plant.roundtrip_eff);
  const double dmax = std::min(st.p_discharge_max, (c.soc - st.e_min) * eta);
  const double cmax = std::min(st.p_charge_max, (st.e_max - c.soc) / eta);
  if (c.absorption <= 0.0) return c.production <= c.res + dmax + 1e-9;
  return c.production <= c.res + 1e-9 && c.absorption <= cmax + 1e-9;
}

// ---------------------------------------------------------------------------

/// Discounted cash flow: after-tax costs of each year divided by after-tax
/// discounted energy, built year by year from explicit cash flows.
inline double dcf_lcoe(const islandsim::EconomicParams& p, double capex, double replacement,
                       const std::vector<double>& energy, const std::vector<double>& extra) {
  std::vector<double> outflow(static_cast<std::size_t>(p.evaluation_years) + 1, 0.0);
  std::vector<double> tax_shield(outflow.size(), 0.0);
  outflow[0] = capex;
  outflow[static_cast<std::size_t>(p.replacement_year)] += replacement;
  for (int y = 1; y <= p.evaluation_years; ++y) {
    const double om = p.om_rate * capex + (extra.empty() ? 0.0 : extra[static_cast<std::size_t>(y - 1)]);
    outflow[static_cast<std::size_t>(y)] += om * (1.0 - p.tax_rate);
  }
  for (int y = 1; y <= p.depreciation_years; ++y) {
    tax_shield[static_cast<std::size_t>(y)] += p.tax_rate * capex / p.depreciation_years;
  }
  for (int y = p.replacement_year + 1; y <= p.replacement_year + p.depreciation_years && y <= p.evaluation_years; ++y) {
    tax_shield[static_cast<std::size_t>(y)] += p.tax_rate * replacement / p.depreciation_years;
  }
  double cost = 0.0;
  double disc_energy = 0.0;
  double factor = 1.0;
  for (std::size_t y = 0; y < outflow.size(); ++y) {
    cost += (outflow[y] - tax_shield[y]) * factor;
    if (y > 0) disc_energy += energy[y - 1] * (1.0 - p.tax_rate) * factor;
    factor /= 1.0 + p.discount_rate;
  }
  return cost / disc_energy;
}

// ---------------------------------------------------------------------------

/// O(n^2) dominance filter. Ties on both coordinates keep the smallest id.
inline std::vector<islandsim::ParetoPoint> pareto_bruteforce(const std::vector<islandsim::ParetoPoint>& pts) {
  std::vector<islandsim::ParetoPoint> front;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < pts.size() && keep; ++j) {
      if (i == j) continue;
      const auto& a = pts[j];
      const auto& b = pts[i];
      const bool ge = a.res_penetration >= b.res_penetration && a.lcoe <= b.lcoe;
      const bool strict = a.res_penetration > b.res_penetration || a.lcoe < b.lcoe;
      if (ge && strict) keep = false;
      if (!strict && a.res_penetration == b.res_penetration && a.lcoe == b.lcoe && a.scenario < b.scenario) keep = false;
    }
    if (keep) front.push_back(pts[i]);
  }
  std::sort(front.begin(), front.end(), [](const auto& a, const auto& b) {
    return a.res_penetration < b.res_penetration;
  });
  return front;
}

}  // namespace oracle
