#pragma once

#include "islandsim/domain.hpp"
#include "islandsim/milp.hpp"

namespace islandsim {

/// Orders the system operator issues to an HPS for one hour.
struct HpsOrder {
  double production = 0.0;  // P_h, MW
  double absorption = 0.0;  // P_h^gr, MW
  int interval = 0;
};

/// How the HPS operator splits its RES output and storage to follow an order.
struct HpsRealization {
  double res_to_grid = 0.0;
  double res_to_storage = 0.0;
  double res_rejected = 0.0;
  double discharge = 0.0;
  double charge = 0.0;
  double imbalance_production = 0.0;
  double imbalance_absorption = 0.0;  // excess plus shortfall against the absorption order
  double end_soc = 0.0;               // MWh
  double objective = 0.0;             // revenue minus purchases and imbalance charges, €

  /// Power delivered to the grid.
  double injection() const { return res_to_grid + discharge; }
  /// Power drawn from the grid.
  double absorption() const { return charge - res_to_storage; }
};

/// Revenue-maximizing single-hour realization of an order. Always feasible:
/// unmet production or absorption becomes imbalance.
HpsRealization self_dispatch(const HpsPlant& hps, const HpsOrder& order, double res_available,
                             double soc, const milp::SolverSettings& settings = {});

}  // namespace islandsim
