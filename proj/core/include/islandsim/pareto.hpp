#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace islandsim {

struct ParetoPoint {
  std::string scenario;
  double res_penetration = 0.0;  // maximized
  double lcoe = 0.0;             // minimized

  friend bool operator==(const ParetoPoint&, const ParetoPoint&) = default;
};

/// Non-dominated subset in ascending penetration. Of points equal in both
/// coordinates only the smallest scenario id survives. Throws
/// ValidationError on non-finite values.
std::vector<ParetoPoint> extract_pareto(std::span<const ParetoPoint> points);

/// management,scenario,res_penetration,lcoe_eur_mwh
void write_pareto_header(std::ostream& os);
void write_pareto_rows(const std::string& management, std::span<const ParetoPoint> front,
                       std::ostream& os);

}  // namespace islandsim
