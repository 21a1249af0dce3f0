#include "islandsim/uced.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "islandsim/errors.hpp"
#include "numfmt.hpp"
#include "scheduling_model.hpp"

namespace islandsim {

namespace {

double block_sum(std::span<const double> f, std::size_t from, std::size_t to) {
  return std::accumulate(f.begin() + static_cast<std::ptrdiff_t>(from),
                         f.begin() + static_cast<std::ptrdiff_t>(to), 0.0);
}

void check_problem(const UcedProblem& p) {
  const auto& s = p.snapshot;
  const int longest = p.stage == Stage::day_ahead ? kDayAheadHours : kIntradayHours;
  if (s.horizon < 1 || s.horizon > longest) {
    throw ValidationError("horizon must lie in 1.." + std::to_string(longest) + " h for this stage, got " +
                          std::to_string(s.horizon));
  }
  auto violations = validate_system(s);
  if (!violations.empty()) throw ValidationError(violations.front().to_string());
  if (p.hps_offers.size() != s.hps_plants.size()) {
    throw ValidationError("one energy offer per HPS plant required");
  }
  for (double o : p.hps_offers) {
    if (!(o >= 0.0)) throw ValidationError("HPS energy offers must be >= 0");
  }
}

detail::ModelOptions options_for(const UcedProblem& p) {
  detail::ModelOptions opt;
  opt.allow_slacks = p.allow_slacks;
  opt.commitment_costs = true;
  opt.hps_offer = p.hps_offers;
  return opt;
}

}  // namespace

double build_offer(const HpsPlant& hps, std::span<const double> f) {
  if (f.size() != static_cast<std::size_t>(kDayAheadHours)) {
    throw ValidationError("day-ahead RES forecast must have 24 values, got " +
                          std::to_string(f.size()));
  }
  const auto& c = hps.offer_coefficients;
  return c[0] * block_sum(f, 0, 8) + c[1] * block_sum(f, 8, 16) + c[2] * block_sum(f, 16, 24);
}

double build_intraday_offer(const HpsPlant& hps, std::span<const double> f,
                            double undelivered_energy) {
  if (f.size() != static_cast<std::size_t>(kIntradayHours)) {
    throw ValidationError("intraday RES forecast must have 12 values, got " +
                          std::to_string(f.size()));
  }
  if (!(undelivered_energy >= 0.0)) throw ValidationError("undelivered energy must be >= 0");
  const auto& c = hps.offer_coefficients;
  return c[1] * block_sum(f, 0, 6) + c[2] * block_sum(f, 6, 12) + undelivered_energy;
}

milp::LinearModel build_uced_model(const UcedProblem& problem) {
  check_problem(problem);
  detail::SchedulingModel m(problem.snapshot, options_for(problem));
  return m.model();
}

DispatchSchedule solve_uced(const UcedProblem& problem, const milp::SolverSettings& settings) {
  check_problem(problem);
  detail::SchedulingModel m(problem.snapshot, options_for(problem));
  return m.extract(milp::solve(m.model(), settings));
}

double primary_up_requirement(std::span<const double> unit_outputs, double net_wind) {
  double r = net_wind;
  for (double p : unit_outputs) r = std::max(r, p);
  return r;
}

std::vector<double> primary_up_requirement(const SystemSnapshot& snapshot,
                                           const DispatchSchedule& dispatch) {
  std::vector<double> out;
  for (int t = 0; t < dispatch.horizon; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    std::vector<double> outputs;
    for (const auto& u : dispatch.units) outputs.push_back(u.output[ts]);
    for (const auto& h : dispatch.hps) outputs.push_back(h.dispatch[ts]);
    out.push_back(
        primary_up_requirement(outputs, snapshot.wind_available[ts] - dispatch.wind_curtailment[ts]));
  }
  return out;
}

void write_schedule_csv(const DispatchSchedule& s, std::ostream& os) {
  using detail::num;
  os << "hour,asset,quantity,value\n";
  if (s.wind_curtailment.size() != static_cast<std::size_t>(s.horizon)) return;
  for (int t = 0; t < s.horizon; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    const std::string hour = std::to_string(s.start_hour + t);
    auto row = [&](const std::string& asset, const std::string& q, double v) {
      os << hour << ',' << asset << ',' << q << ',' << num(v) << '\n';
    };
    auto reserves = [&](const std::string& asset, const std::vector<std::vector<double>>& r) {
      for (std::size_t e = 0; e < s.rules.size() && e < r.size(); ++e) {
        row(asset, "r_" + s.rules[e].name(), r[e][ts]);
      }
    };
    for (const auto& u : s.units) {
      row(u.id, "p", u.output[ts]);
      row(u.id, "st", u.on[ts]);
      row(u.id, "su", u.startup[ts]);
      row(u.id, "sd", u.shutdown[ts]);
      reserves(u.id, u.reserve);
    }
    for (const auto& b : s.storage) {
      row(b.id, "pc", b.charge[ts]);
      row(b.id, "pd", b.discharge[ts]);
      row(b.id, "soc", b.soc[ts]);
      reserves(b.id, b.reserve);
    }
    for (const auto& h : s.hps) {
      row(h.id, "p", h.dispatch[ts]);
      row(h.id, "pgr", h.grid_absorption[ts]);
      row(h.id, "l", h.committed[ts]);
      reserves(h.id, h.reserve);
    }
    row("system", "xw", s.wind_curtailment[ts]);
    row("system", "ens", s.energy_not_served[ts]);
    row("system", "surplus", s.surplus[ts]);
    for (std::size_t e = 0; e < s.rules.size(); ++e) {
      row("system", "rr_" + s.rules[e].name(), s.reserve_requirement[e][ts]);
      row("system", "xe_" + s.rules[e].name(), s.reserve_shortfall[e][ts]);
    }
  }
}

}  // namespace islandsim
