#pragma once

// Case generators shared by the unit tests and the acceptance check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace oracle {

struct LcoeCase {
  islandsim::EconomicParams p;
  double power, energy, wind, annual_energy, imbalance;
};

inline std::vector<LcoeCase> lcoe_cases() {
  std::vector<LcoeCase> cases;
  islandsim::EconomicParams table;
  cases.push_back({table, 30, 240, 75, 160000, 0});
  cases.push_back({table, 45, 90, 75, 150000, 0});
  cases.push_back({table, 30, 240, 75, 140000, 900});
  cases.push_back({table, 70, 1050, 75, 170000, 2500});
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 6; ++k) {
    islandsim::EconomicParams p;
    p.discount_rate = uniform(rng, 0.0, 0.15);
    p.tax_rate = uniform(rng, 0.0, 0.4);
    p.om_rate = uniform(rng, 0.0, 0.05);
    p.depreciation_years = uniform_int(rng, 5, 15);
    p.replacement_year = uniform_int(rng, 5, 15);
    p.bes_energy_capex = uniform(rng, 100, 400);
    p.bes_replacement_capex = uniform(rng, 50, 200);
    p.bes_power_capex = uniform(rng, 200, 600);
    p.wind_capex = uniform(rng, 900, 1600);
    cases.push_back({p, uniform(rng, 5, 70), uniform(rng, 10, 700), 75,
                     uniform(rng, 50000, 200000), k % 2 ? uniform(rng, 0, 3000) : 0.0});
  }
  return cases;
}

inline islandsim::HpsPlant hps_for(const LcoeCase& c) {
  islandsim::HpsPlant h;
  h.id = "H";
  h.p_max = std::max(c.wind, c.power);
  h.p_min_component = 1;
  h.wind_capacity = c.wind;
  h.storage = {"H.B", c.power, c.power, 0, c.energy, 0.8, 0};
  h.prices = {100, 50, 150};
  return h;
}

inline std::vector<double> peaky_days(int days, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> load;
  for (int d = 0; d < days; ++d) {
    for (int h = 0; h < 24; ++h) {
      load.push_back(100 + 40 * std::exp(-0.5 * std::pow((h - 19) / 2.0, 2)) + uniform(rng, 0, 10));
    }
  }
  return load;
}

inline std::vector<islandsim::ParetoPoint> random_points(std::mt19937_64& rng, bool coarse) {
  const int n = uniform_int(rng, 1, 60);
  std::vector<islandsim::ParetoPoint> pts;
  for (int i = 0; i < n; ++i) {
    islandsim::ParetoPoint p;
    p.scenario = "S" + std::to_string(uniform_int(rng, 0, 99)) + "_" + std::to_string(i);
    p.res_penetration = coarse ? uniform_int(rng, 30, 50) / 100.0 : uniform(rng, 0.3, 0.5);
    p.lcoe = coarse ? uniform_int(rng, 60, 90) : uniform(rng, 60, 200);
    pts.push_back(p);
  }
  return pts;
}

inline bool same_front(const std::vector<islandsim::ParetoPoint>& a, const std::vector<islandsim::ParetoPoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].scenario != b[i].scenario || a[i].res_penetration != b[i].res_penetration || a[i].lcoe != b[i].lcoe) {
      return false;
    }
  }
  return true;
}

/// Peak reduction by bisection on a direct feasibility test of each day.
inline double capacity_credit_bisection(const std::vector<double>& load, double power, double energy,
                                        double roundtrip_eff) {
  const double leg = std::sqrt(roundtrip_eff);
  auto feasible = [&](double s) {
    for (std::size_t d = 0; d < load.size(); d += 24) {
      const double peak = *std::max_element(load.begin() + static_cast<long>(d), load.begin() + static_cast<long>(d + 24));
      double need = 0.0, room = 0.0;
      for (std::size_t h = d; h < d + 24; ++h) {
        const double cap = peak - s;
        if (load[h] > cap) {
          if (load[h] - cap > power) return false;
          need += load[h] - cap;
        } else {
          room += std::min(power, cap - load[h]);
        }
      }
      if (need / leg > energy || room * leg < need / leg) return false;
    }
    return true;
  };
  if (feasible(power)) return power;
  double lo = 0.0, hi = power;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace oracle
