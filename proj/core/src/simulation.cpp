#include "islandsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "islandsim/errors.hpp"
#include "islandsim/rt_dispatch.hpp"
#include "islandsim/uced.hpp"

namespace islandsim {

namespace {

constexpr double kFlowMatch = 1e-9;

std::vector<double> slice(const std::vector<double>& v, std::size_t from, std::size_t n) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from),
          v.begin() + static_cast<std::ptrdiff_t>(from + n)};
}

double sum(const std::vector<double>& v, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += v[i];
  return s;
}

std::size_t history_needed(const ThermalUnit& u) {
  return static_cast<std::size_t>(std::max({u.min_up_time, u.min_down_time, 1}) + 1);
}

void require_values(const DispatchSchedule& d, const std::string& what, int hour) {
  if (d.status == SolveStatus::optimal || d.status == SolveStatus::feasible_gap) return;
  throw SolverError(what + " at hour " + std::to_string(hour) + " returned " + to_string(d.status));
}

}  // namespace

struct ScenarioRunner::DayContext {
  std::vector<double> carry;  // per HPS, MWh not yet dispatched
  bool first_half = true;
  std::vector<double> order_sum;       // per HPS, first-half production orders
  std::vector<double> absorption_sum;  // per HPS, first-half absorption orders
};

ScenarioRunner::ScenarioRunner(const ScenarioSystem& system, RunOptions options)
    : sys_(system), opt_(std::move(options)) {
  const auto hours = static_cast<std::size_t>(opt_.days) * 24;
  if (opt_.days < 1 || hours > sys_.load.size()) {
    throw ValidationError("simulated days must lie in [1, " + std::to_string(sys_.load.size() / 24) + "]");
  }
  for (const auto* s : {&sys_.pv, &sys_.wind_existing, &sys_.wind_new}) {
    if (s->size() != sys_.load.size()) throw ValidationError("series lengths differ");
  }
  if (sys_.hps_res.size() != sys_.hps_plants.size()) {
    throw ValidationError("one RES series per HPS required");
  }
}

AnnualLedger ScenarioRunner::empty_ledger() const {
  AnnualLedger l;
  l.scenario = sys_.scenario;
  for (const auto& u : sys_.thermal_units) l.unit_ids.push_back(u.id);
  for (const auto& b : sys_.bes_units) l.bes_ids.push_back(b.id);
  for (const auto& h : sys_.hps_plants) l.hps_ids.push_back(h.id);
  return l;
}

OperatingState ScenarioRunner::initial_state() const {
  OperatingState s;
  s.units = sys_.initial_units;
  for (const auto& b : sys_.bes_units) s.bes_soc.push_back(b.initial_soc);
  for (const auto& h : sys_.hps_plants) s.hps_soc.push_back(h.storage.initial_soc);
  return s;
}

namespace {

void advance(OperatingState& s, const ScenarioSystem& sys, const HourRecord& r) {
  for (std::size_t i = 0; i < s.units.size(); ++i) {
    auto& hist = s.units[i].history;
    hist.push_back(r.unit_on[i] != 0);
    const std::size_t keep = history_needed(sys.thermal_units[i]);
    if (hist.size() > keep) hist.erase(hist.begin(), hist.end() - static_cast<std::ptrdiff_t>(keep));
    s.units[i].output = r.unit_on[i] ? r.unit_output[i] : 0.0;
  }
  for (std::size_t b = 0; b < s.bes_soc.size(); ++b) s.bes_soc[b] = r.bes_soc[b];
  for (std::size_t h = 0; h < s.hps_soc.size(); ++h) s.hps_soc[h] = r.hps[h].realization.end_soc;
}

}  // namespace

OperatingState ScenarioRunner::state_after(const AnnualLedger& ledger) const {
  OperatingState s = initial_state();
  for (const auto& r : ledger.hours) advance(s, sys_, r);
  return s;
}

std::vector<double> ScenarioRunner::forecast(const std::vector<double>& actual, int day,
                                             std::uint64_t stream) const {
  auto f = slice(actual, static_cast<std::size_t>(day) * 24, 24);
  if (opt_.forecast_noise <= 0.0) return f;
  std::seed_seq seq{static_cast<std::uint32_t>(opt_.seed), static_cast<std::uint32_t>(opt_.seed >> 32),
                    static_cast<std::uint32_t>(day), static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> eps(0.0, 1.0);
  for (double& v : f) v = std::max(0.0, v * (1.0 + opt_.forecast_noise * eps(rng)));
  return f;
}

SystemSnapshot ScenarioRunner::snapshot(int start_hour, int horizon, const OperatingState& state) const {
  SystemSnapshot s;
  s.horizon = horizon;
  s.start_hour = start_hour;
  s.thermal_units = sys_.thermal_units;
  s.bes_units = sys_.bes_units;
  s.hps_plants = sys_.hps_plants;
  s.prior_commitment = state.units;
  s.prior_soc = state.bes_soc;
  s.reserve_rules = sys_.reserve_rules;
  s.penalties = sys_.penalties;
  return s;
}

void ScenarioRunner::realize_hour(DayContext& ctx, const DispatchSchedule& plan, int k,
                                  OperatingState& state, AnnualLedger& ledger) const {
  const int hour = plan.start_hour + k;
  const auto th = static_cast<std::size_t>(hour);
  const auto tk = static_cast<std::size_t>(k);
  const std::size_t H = sys_.hps_plants.size();

  RtProblem rp;
  rp.snapshot = snapshot(hour, 1, state);
  rp.snapshot.load = {sys_.load[th]};
  rp.snapshot.wind_available = {sys_.external_wind(th)};
  rp.snapshot.pv_available = {sys_.pv[th]};
  for (std::size_t h = 0; h < H; ++h) rp.snapshot.hps_res_available.push_back({sys_.hps_res[h][th]});
  for (const auto& u : plan.units) rp.commitment.push_back(u.on[tk]);
  for (const auto& b : plan.storage) rp.soc_reference.push_back(b.soc[tk]);
  for (std::size_t h = 0; h < H; ++h) rp.hps_energy.push_back(plan.hps[h].dispatch[tk] + ctx.carry[h]);
  rp.release_reserves = opt_.release_reserves;

  DispatchSchedule rt = solve_rt(rp, opt_.solver);
  require_values(rt, "real-time dispatch", hour);

  HourRecord r;
  r.hour = hour;
  r.load = sys_.load[th];
  r.pv = sys_.pv[th];
  r.wind_existing = sys_.wind_existing[th];
  r.wind_new = sys_.wind_new[th];

  bool deviates = false;
  std::vector<std::optional<HpsFlows>> fixed;
  for (std::size_t h = 0; h < H; ++h) {
    HpsHour hh;
    hh.res_available = sys_.hps_res[h][th];
    hh.order_production = std::max(0.0, rt.hps[h].dispatch[0]);
    hh.order_absorption = std::max(0.0, rt.hps[h].grid_absorption[0]);
    hh.energy_cap = rp.hps_energy[h];
    ctx.carry[h] = std::max(0.0, rp.hps_energy[h] - hh.order_production);
    if (ctx.first_half) {
      ctx.order_sum[h] += hh.order_production;
      ctx.absorption_sum[h] += hh.order_absorption;
    }
    HpsOrder order{hh.order_production, hh.order_absorption, hour};
    hh.realization = self_dispatch(sys_.hps_plants[h], order, hh.res_available, state.hps_soc[h],
                                   opt_.solver);
    const double inj = hh.realization.injection();
    const double abs = hh.realization.absorption();
    if (std::abs(inj - order.production) > kFlowMatch || std::abs(abs - order.absorption) > kFlowMatch) {
      deviates = true;
    }
    fixed.emplace_back(HpsFlows{inj, abs});
    r.hps.push_back(hh);
  }
  if (deviates) {
    // re-balance the hour around what the HPS actually delivered
    const SolveStatus first = rt.status;
    rp.hps_fixed = fixed;
    rt = solve_rt(rp, opt_.solver);
    require_values(rt, "real-time re-dispatch", hour);
    r.passes = 2;
    if (first == SolveStatus::feasible_gap) rt.status = SolveStatus::feasible_gap;
  }
  r.status = rt.status;

  for (std::size_t i = 0; i < sys_.thermal_units.size(); ++i) {
    const auto& u = sys_.thermal_units[i];
    const bool on = rt.units[i].on[0] != 0;
    const double p = on ? rt.units[i].output[0] : 0.0;
    const bool was_on = state.units[i].online();
    r.unit_on.push_back(on ? 1 : 0);
    r.unit_output.push_back(p);
    r.production_cost += production_cost(u, p, on);
    if (on && !was_on) r.startup_cost += u.startup_cost;
    if (!on && was_on) r.shutdown_cost += u.shutdown_cost;
  }
  for (std::size_t b = 0; b < sys_.bes_units.size(); ++b) {
    const auto& bes = sys_.bes_units[b];
    const double eta = bes.leg_efficiency();
    const double pc = std::max(0.0, rt.storage[b].charge[0]);
    const double pd = std::max(0.0, rt.storage[b].discharge[0]);
    const double prior = state.bes_soc[b];
    r.bes_charge.push_back(pc);
    r.bes_discharge.push_back(pd);
    r.bes_soc.push_back(std::clamp(prior + eta * pc - pd / eta, bes.e_min, bes.e_max));
    const double reachable = prior + eta * bes.p_charge_max;
    r.bes_soc_floor.push_back(std::clamp(std::min(rp.soc_reference[b], reachable), bes.e_min, bes.e_max));
  }
  r.wind_curtailment = std::max(0.0, rt.wind_curtailment[0]);
  r.energy_not_served = std::max(0.0, rt.energy_not_served[0]);
  r.surplus = std::max(0.0, rt.surplus[0]);
  for (const auto& x : rt.reserve_shortfall) r.reserve_shortfall += x[0];

  advance(state, sys_, r);
  ledger.hours.push_back(std::move(r));
}

void ScenarioRunner::run_day(int day, OperatingState& state, AnnualLedger& ledger) const {
  const int base = day * 24;
  const std::size_t H = sys_.hps_plants.size();
  std::vector<double> external(sys_.load.size());
  for (std::size_t t = 0; t < external.size(); ++t) external[t] = sys_.external_wind(t);

  const auto fc_load = forecast(sys_.load, day, 0);
  const auto fc_wind = forecast(external, day, 1);
  const auto fc_pv = forecast(sys_.pv, day, 2);
  std::vector<std::vector<double>> fc_hps;
  for (std::size_t h = 0; h < H; ++h) fc_hps.push_back(forecast(sys_.hps_res[h], day, 3 + h));

  DayRecord rec;
  rec.day = day;

  UcedProblem das;
  das.stage = Stage::day_ahead;
  das.snapshot = snapshot(base, kDayAheadHours, state);
  das.snapshot.load = fc_load;
  das.snapshot.wind_available = fc_wind;
  das.snapshot.pv_available = fc_pv;
  das.snapshot.hps_res_available = fc_hps;
  for (std::size_t h = 0; h < H; ++h) das.hps_offers.push_back(build_offer(sys_.hps_plants[h], fc_hps[h]));
  rec.das_offer = das.hps_offers;
  const DispatchSchedule das_plan = solve_uced(das, opt_.solver);
  require_values(das_plan, "day-ahead scheduling", base);
  rec.das_status = das_plan.status;
  rec.das_objective = das_plan.objective;
  rec.das_gap = das_plan.gap;

  DayContext ctx;
  ctx.carry.assign(H, 0.0);
  ctx.order_sum.assign(H, 0.0);
  ctx.absorption_sum.assign(H, 0.0);
  for (int k = 0; k < kIntradayHours; ++k) realize_hour(ctx, das_plan, k, state, ledger);

  UcedProblem intraday;
  intraday.stage = Stage::intraday;
  intraday.snapshot = snapshot(base + kIntradayHours, kIntradayHours, state);
  intraday.snapshot.load = slice(fc_load, 12, 12);
  intraday.snapshot.wind_available = slice(fc_wind, 12, 12);
  intraday.snapshot.pv_available = slice(fc_pv, 12, 12);
  for (std::size_t h = 0; h < H; ++h) {
    const auto& plant = sys_.hps_plants[h];
    const auto& c = plant.offer_coefficients;
    const double morning_offer = c[0] * sum(fc_hps[h], 0, 8) + c[1] * sum(fc_hps[h], 8, 12);
    const double left = std::max(0.0, morning_offer + plant.roundtrip_eff * ctx.absorption_sum[h] -
                                          ctx.order_sum[h]);
    rec.undelivered.push_back(left);
    const auto tail = slice(fc_hps[h], 12, 12);
    intraday.snapshot.hps_res_available.push_back(tail);
    intraday.hps_offers.push_back(build_intraday_offer(plant, tail, left));
  }
  rec.intraday_offer = intraday.hps_offers;
  const DispatchSchedule id_plan = solve_uced(intraday, opt_.solver);
  require_values(id_plan, "intraday scheduling", base + kIntradayHours);
  rec.intraday_status = id_plan.status;
  rec.intraday_objective = id_plan.objective;
  rec.intraday_gap = id_plan.gap;

  ctx.carry.assign(H, 0.0);
  ctx.first_half = false;
  for (int k = 0; k < kIntradayHours; ++k) realize_hour(ctx, id_plan, k, state, ledger);
  ledger.days.push_back(std::move(rec));
}

AnnualLedger run_scenario(const ScenarioSystem& system, const RunOptions& options,
                          const std::function<void(const AnnualLedger&, int)>& on_day) {
  ScenarioRunner runner(system, options);
  AnnualLedger ledger = runner.empty_ledger();
  OperatingState state = runner.initial_state();
  for (int d = 0; d < options.days; ++d) {
    runner.run_day(d, state, ledger);
    if (on_day) on_day(ledger, d);
  }
  return ledger;
}

// ---------------------------------------------------------------------------
// accounting

double AnnualTotals::res_delivered() const {
  return wind_existing_injected + wind_new_injected + pv + hps_net_injection() -
         hps_grid_absorption - surplus;
}

double AnnualTotals::res_penetration() const { return load > 0.0 ? res_delivered() / load : 0.0; }

AnnualTotals summarize(const AnnualLedger& ledger) {
  AnnualTotals a;
  for (const auto& r : ledger.hours) {
    ++a.hours;
    a.load += r.load;
    a.pv += r.pv;
    a.wind_existing_available += r.wind_existing;
    a.wind_new_available += r.wind_new;
    a.wind_curtailed += r.wind_curtailment;
    const double avail = r.wind_existing + r.wind_new;
    const double kept = avail > 0.0 ? 1.0 - r.wind_curtailment / avail : 0.0;
    a.wind_existing_injected += r.wind_existing * kept;
    a.wind_new_injected += r.wind_new * kept;
    for (const auto& h : r.hps) {
      const auto& x = h.realization;
      a.hps_res_available += h.res_available;
      a.hps_res_to_grid += x.res_to_grid;
      a.hps_res_to_storage += x.res_to_storage;
      a.hps_res_rejected += x.res_rejected;
      a.hps_discharge += x.discharge;
      a.hps_charge += x.charge;
      a.hps_grid_absorption += x.absorption();
      a.hps_imbalance += x.imbalance_production + x.imbalance_absorption;
    }
    for (double p : r.unit_output) a.thermal_energy += p;
    a.conventional_cost += r.production_cost + r.startup_cost + r.shutdown_cost;
    for (double v : r.bes_charge) a.bes_charge += v;
    for (double v : r.bes_discharge) a.bes_discharge += v;
    a.energy_not_served += r.energy_not_served;
    a.surplus += r.surplus;
    a.reserve_shortfall += r.reserve_shortfall;
  }
  return a;
}

namespace {

double hour_residual(const HourRecord& r) {
  double supply = r.pv + r.wind_existing + r.wind_new - r.wind_curtailment + r.energy_not_served - r.surplus;
  double demand = r.load;
  for (double p : r.unit_output) supply += p;
  for (double v : r.bes_discharge) supply += v;
  for (double v : r.bes_charge) demand += v;
  for (const auto& h : r.hps) {
    supply += h.realization.injection();
    demand += h.realization.absorption();
  }
  return supply - demand;
}

}  // namespace

std::vector<std::string> check_ledger(const AnnualLedger& ledger, const ScenarioSystem& sys,
                                      double tol) {
  std::vector<std::string> out;
  auto fail = [&](const HourRecord& r, const std::string& what) {
    out.push_back("hour " + std::to_string(r.hour) + ": " + what);
  };
  std::vector<double> soc;
  for (const auto& b : sys.bes_units) soc.push_back(b.initial_soc);
  std::vector<double> hps_soc;
  for (const auto& h : sys.hps_plants) hps_soc.push_back(h.storage.initial_soc);

  for (const auto& r : ledger.hours) {
    if (std::abs(hour_residual(r)) >= tol) fail(r, "power balance residual " + std::to_string(hour_residual(r)));
    if (r.wind_curtailment > r.wind_existing + r.wind_new + tol) fail(r, "curtailment exceeds available wind");
    for (std::size_t i = 0; i < sys.thermal_units.size(); ++i) {
      const auto& u = sys.thermal_units[i];
      const double p = r.unit_output[i];
      if (r.unit_on[i] > 1) fail(r, u.id + " commitment flag not binary");
      if (r.unit_on[i] && (p < u.p_min - tol || p > u.p_max + tol)) fail(r, u.id + " output outside limits");
      if (!r.unit_on[i] && std::abs(p) > tol) fail(r, u.id + " produces while offline");
    }
    for (std::size_t b = 0; b < sys.bes_units.size(); ++b) {
      const auto& bes = sys.bes_units[b];
      const double eta = bes.leg_efficiency();
      const double pc = r.bes_charge[b];
      const double pd = r.bes_discharge[b];
      if (pc > tol && pd > tol) fail(r, bes.id + " charges and discharges at once");
      if (std::abs(r.bes_soc[b] - soc[b] - eta * pc + pd / eta) >= tol) fail(r, bes.id + " SoC recursion broken");
      if (r.bes_soc[b] < bes.e_min - tol || r.bes_soc[b] > bes.e_max + tol) fail(r, bes.id + " SoC out of bounds");
      if (r.bes_soc[b] < r.bes_soc_floor[b] - tol) fail(r, bes.id + " SoC below the reference floor");
      soc[b] = r.bes_soc[b];
    }
    for (std::size_t h = 0; h < sys.hps_plants.size(); ++h) {
      const auto& plant = sys.hps_plants[h];
      const auto& hh = r.hps[h];
      const auto& x = hh.realization;
      const double eta = std::sqrt(plant.roundtrip_eff);
      if (std::abs(x.res_to_grid + x.res_to_storage + x.res_rejected - hh.res_available) >= tol) {
        fail(r, plant.id + " RES split does not add up");
      }
      if (std::abs(x.res_to_grid + x.discharge + x.imbalance_production - hh.order_production) >= tol) {
        fail(r, plant.id + " production order identity broken");
      }
      if (std::abs(std::abs(x.charge - x.res_to_storage - hh.order_absorption) - x.imbalance_absorption) >= tol) {
        fail(r, plant.id + " absorption order identity broken");
      }
      if (std::abs(x.end_soc - hps_soc[h] - eta * x.charge + x.discharge / eta) >= tol) {
        fail(r, plant.id + " storage energy recursion broken");
      }
      if (x.charge > tol && x.discharge > tol) fail(r, plant.id + " charges and discharges at once");
      if (x.end_soc < plant.storage.e_min - tol || x.end_soc > plant.storage.e_max + tol) {
        fail(r, plant.id + " storage energy out of bounds");
      }
      hps_soc[h] = x.end_soc;
    }
  }
  return out;
}

std::vector<std::string> check_energy_identities(const AnnualLedger& ledger, double tol) {
  std::vector<std::string> out;
  const AnnualTotals a = summarize(ledger);
  const double generation = a.thermal_energy + a.wind_existing_available + a.wind_new_available -
                            a.wind_curtailed + a.pv + a.bes_discharge + a.hps_net_injection();
  const double demand = a.load + a.bes_charge + a.hps_grid_absorption + a.surplus;
  if (std::abs(generation + a.energy_not_served - demand) > tol) {
    out.push_back("annual balance off by " + std::to_string(generation + a.energy_not_served - demand) + " MWh");
  }
  if (a.wind_curtailed > a.wind_existing_available + a.wind_new_available + tol) {
    out.push_back("curtailment exceeds available wind");
  }
  if (a.hps_res_rejected > a.hps_res_available + tol) out.push_back("HPS rejection exceeds its RES");
  const double injected = a.wind_existing_injected + a.wind_new_injected;
  if (std::abs(injected + a.wind_curtailed - a.wind_existing_available - a.wind_new_available) > tol) {
    out.push_back("wind injection plus curtailment differs from availability");
  }
  return out;
}

}  // namespace islandsim
