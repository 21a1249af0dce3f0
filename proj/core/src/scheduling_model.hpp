#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "islandsim/domain.hpp"
#include "islandsim/milp.hpp"

namespace islandsim::detail {

/// Realized HPS exchange with the grid, fixed in a re-balancing pass.
struct HpsFixedFlows {
  double injection = 0.0;
  double absorption = 0.0;
};

struct ModelOptions {
  bool allow_slacks = true;
  bool commitment_costs = true;
  // Per unit per interval; empty means the commitment is a decision.
  std::vector<std::vector<std::uint8_t>> fixed_on;
  // Per BES per interval minimum SoC; empty means none.
  std::vector<std::vector<double>> soc_floor;
  // HPS energy limits: either a horizon offer (UC-ED) or a per-interval cap (RT).
  std::vector<double> hps_offer;
  std::vector<std::vector<double>> hps_interval_cap;
  std::vector<std::optional<HpsFixedFlows>> hps_fixed;
};

/// The island scheduling MILP: power balance, reserves, thermal UC constraints,
/// battery and HPS constraints over the snapshot horizon.
class SchedulingModel {
 public:
  SchedulingModel(const SystemSnapshot& snapshot, ModelOptions options);

  const milp::LinearModel& model() const { return model_; }

  DispatchSchedule extract(const milp::Solution& solution) const;

 private:
  struct UnitVars {
    std::vector<milp::Var> p, st, su, sd;
    std::vector<std::vector<milp::Var>> r;  // [rule][t]
  };
  struct BesVars {
    std::vector<milp::Var> pc, pd, stc, std_, soc;
    std::vector<std::vector<milp::Var>> r;
  };
  struct HpsVars {
    std::vector<milp::Var> p, gr, l, eav;
    std::vector<std::vector<milp::Var>> r;
    milp::Var x;
    bool fixed = false;
  };

  void build_units();
  void build_storage();
  void build_hps();
  void build_system();

  const SystemSnapshot& snap_;
  ModelOptions opt_;
  std::vector<ReserveRule> rules_;
  milp::LinearModel model_;
  std::vector<UnitVars> units_;
  std::vector<BesVars> bes_;
  std::vector<HpsVars> hps_;
  std::vector<milp::Var> xw_, ens_, surplus_;
  std::vector<std::vector<milp::Var>> rr_, xe_;  // [rule][t]
};

}  // namespace islandsim::detail
