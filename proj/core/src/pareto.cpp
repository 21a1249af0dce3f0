#include "islandsim/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "islandsim/errors.hpp"
#include "numfmt.hpp"

namespace islandsim {

std::vector<ParetoPoint> extract_pareto(std::span<const ParetoPoint> points) {
  for (const auto& p : points) {
    if (!std::isfinite(p.res_penetration) || !std::isfinite(p.lcoe)) {
      throw ValidationError("Pareto point '" + p.scenario + "' has a non-finite coordinate");
    }
  }
  std::vector<ParetoPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.res_penetration != b.res_penetration) return a.res_penetration > b.res_penetration;
    if (a.lcoe != b.lcoe) return a.lcoe < b.lcoe;
    return a.scenario < b.scenario;
  });
  std::vector<ParetoPoint> front;
  for (const auto& p : sorted) {
    if (front.empty() || p.lcoe < front.back().lcoe) front.push_back(p);
  }
  std::reverse(front.begin(), front.end());
  return front;
}

void write_pareto_header(std::ostream& os) { os << "management,scenario,res_penetration,lcoe_eur_mwh\n"; }

void write_pareto_rows(const std::string& management, std::span<const ParetoPoint> front,
                       std::ostream& os) {
  for (const auto& p : front) {
    os << management << ',' << p.scenario << ',' << detail::fixed(p.res_penetration, 6) << ','
       << detail::fixed(p.lcoe, 4) << '\n';
  }
}

}  // namespace islandsim
