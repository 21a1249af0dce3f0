#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "islandsim/domain.hpp"
#include "islandsim/milp.hpp"

namespace islandsim {

/// HPS exchange with the grid held fixed in a re-balancing pass.
struct HpsFlows {
  double injection = 0.0;
  double absorption = 0.0;
};

/// One real-time hour with the commitment already decided.
struct RtProblem {
  SystemSnapshot snapshot;              // horizon 1, actual load and RES
  std::vector<std::uint8_t> commitment; // per thermal unit
  std::vector<double> soc_reference;    // per BES, end-of-hour floor, MWh
  std::vector<double> hps_energy;       // per HPS, dispatchable energy this hour, MWh
  std::vector<std::optional<HpsFlows>> hps_fixed;  // empty or one per HPS
  bool release_reserves = true;         // drop secondary and tertiary requirements
};

/// Single-interval economic dispatch without commitment costs. Slacks keep it
/// feasible; throws ValidationError on malformed input.
DispatchSchedule solve_rt(const RtProblem& problem, const milp::SolverSettings& settings = {});

}  // namespace islandsim
