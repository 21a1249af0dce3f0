#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "islandsim/domain.hpp"
#include "islandsim/milp.hpp"

namespace islandsim {

enum class Stage { day_ahead, intraday };

inline constexpr int kDayAheadHours = 24;
inline constexpr int kIntradayHours = 12;

/// A day-ahead or intraday unit commitment problem.
struct UcedProblem {
  SystemSnapshot snapshot;
  Stage stage = Stage::day_ahead;
  std::vector<double> hps_offers;  // MWh over the horizon, one per HPS plant
  bool allow_slacks = true;
};

/// Energy an HPS offers for the next day: 8-h blocks of the RES forecast scaled
/// by the plant's safety coefficients.
double build_offer(const HpsPlant& hps, std::span<const double> res_forecast);

/// Offer for the 12-h intraday window: the last two coefficient tiers over two
/// 6-h halves, plus energy left undelivered from the morning.
double build_intraday_offer(const HpsPlant& hps, std::span<const double> res_forecast,
                            double undelivered_energy);

/// Builds the scheduling MILP without solving it.
milp::LinearModel build_uced_model(const UcedProblem& problem);

/// Minimum-cost commitment and dispatch. Throws ValidationError on malformed
/// input. An infeasible result is reported through the schedule status.
DispatchSchedule solve_uced(const UcedProblem& problem, const milp::SolverSettings& settings = {});

/// max(largest unit output, net wind)
double primary_up_requirement(std::span<const double> unit_outputs, double net_wind);

/// Per-interval primary up requirement implied by a dispatch.
std::vector<double> primary_up_requirement(const SystemSnapshot& snapshot,
                                           const DispatchSchedule& dispatch);

/// One row per hour, asset and quantity: hour,asset,quantity,value
void write_schedule_csv(const DispatchSchedule& schedule, std::ostream& os);

}  // namespace islandsim
