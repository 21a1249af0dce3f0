#include "islandsim/rt_dispatch.hpp"

#include <algorithm>
#include <string>

#include "islandsim/errors.hpp"
#include "scheduling_model.hpp"

namespace islandsim {

DispatchSchedule solve_rt(const RtProblem& problem, const milp::SolverSettings& settings) {
  SystemSnapshot snap = problem.snapshot;
  if (snap.horizon != 1) throw ValidationError("real-time problems cover exactly one hour");
  auto violations = validate_system(snap);
  if (!violations.empty()) throw ValidationError(violations.front().to_string());
  if (problem.commitment.size() != snap.thermal_units.size()) {
    throw ValidationError("one commitment flag per thermal unit required");
  }
  if (problem.soc_reference.size() != snap.bes_units.size()) {
    throw ValidationError("one reference SoC per BES required");
  }
  if (problem.hps_energy.size() != snap.hps_plants.size()) {
    throw ValidationError("one dispatchable energy value per HPS required");
  }
  if (!problem.hps_fixed.empty() && problem.hps_fixed.size() != snap.hps_plants.size()) {
    throw ValidationError("fixed HPS flows must be given for every HPS or none");
  }
  if (problem.release_reserves) {
    for (auto& r : snap.reserve_rules) {
      if (r.kind != ReserveKind::primary) r.enabled = false;
    }
  }

  detail::ModelOptions opt;
  opt.allow_slacks = true;
  opt.commitment_costs = false;
  for (auto on : problem.commitment) opt.fixed_on.push_back({on});
  for (std::size_t b = 0; b < snap.bes_units.size(); ++b) {
    // a floor out of reach within one hour is capped at the reachable level
    const auto& bes = snap.bes_units[b];
    const double reachable = snap.prior_soc[b] + bes.leg_efficiency() * bes.p_charge_max;
    opt.soc_floor.push_back({std::min(problem.soc_reference[b], reachable)});
  }
  for (double e : problem.hps_energy) opt.hps_interval_cap.push_back({e});
  for (const auto& f : problem.hps_fixed) {
    if (f) {
      opt.hps_fixed.emplace_back(detail::HpsFixedFlows{f->injection, f->absorption});
    } else {
      opt.hps_fixed.emplace_back(std::nullopt);
    }
  }
  if (snap.hps_plants.empty()) opt.hps_interval_cap.clear();

  detail::SchedulingModel m(snap, std::move(opt));
  return m.extract(milp::solve(m.model(), settings));
}

}  // namespace islandsim
