#include "scheduling_model.hpp"

#include <algorithm>
#include <string>

namespace islandsim::detail {

using milp::LinearExpr;
using milp::Var;

namespace {

std::string tag(const std::string& kind, const std::string& asset, int hour) {
  return kind + "." + asset + "." + std::to_string(hour);
}

std::string tag(const std::string& kind, int hour) { return kind + "." + std::to_string(hour); }

bool history_startup(const std::vector<bool>& h, std::size_t j) {
  return h[j] && j > 0 && !h[j - 1];
}

bool history_shutdown(const std::vector<bool>& h, std::size_t j) {
  return !h[j] && j > 0 && h[j - 1];
}

}  // namespace

SchedulingModel::SchedulingModel(const SystemSnapshot& snapshot, ModelOptions options)
    : snap_(snapshot), opt_(std::move(options)) {
  for (const auto& r : snap_.reserve_rules) {
    if (r.enabled) rules_.push_back(r);
  }
  model_.set_sense(milp::Sense::minimize);
  build_units();
  build_storage();
  build_hps();
  build_system();
}

void SchedulingModel::build_units() {
  const int T = snap_.horizon;
  const std::size_t R = rules_.size();
  units_.resize(snap_.thermal_units.size());
  for (std::size_t i = 0; i < snap_.thermal_units.size(); ++i) {
    const ThermalUnit& u = snap_.thermal_units[i];
    const UnitInitialState& init = snap_.prior_commitment[i];
    const bool fixed = !opt_.fixed_on.empty();
    UnitVars& v = units_[i];
    v.r.assign(R, {});

    bool prev_fixed_on = init.online();
    for (int t = 0; t < T; ++t) {
      const int hour = snap_.start_hour + t;
      v.p.push_back(model_.add_continuous(tag("p", u.id, hour), 0.0, u.p_max));
      v.st.push_back(model_.add_binary(tag("st", u.id, hour)));
      // integral whenever st is: su - sd equals the status change
      v.su.push_back(model_.add_continuous(tag("su", u.id, hour), 0.0, 1.0));
      v.sd.push_back(model_.add_continuous(tag("sd", u.id, hour), 0.0, 1.0));
      if (fixed) {
        const bool on = opt_.fixed_on[i][static_cast<std::size_t>(t)] != 0;
        model_.fix(v.st.back(), on ? 1.0 : 0.0);
        model_.fix(v.su.back(), on && !prev_fixed_on ? 1.0 : 0.0);
        model_.fix(v.sd.back(), !on && prev_fixed_on ? 1.0 : 0.0);
        prev_fixed_on = on;
      }
      for (std::size_t e = 0; e < R; ++e) {
        v.r[e].push_back(model_.add_continuous(tag("r." + rules_[e].name(), u.id, hour)));
        model_.add_objective(rules_[e].reserve_cost * LinearExpr(v.r[e].back()));
      }
    }

    milp::add_piecewise_cost(model_, u, v.p, v.st, snap_.start_hour);

    for (int t = 0; t < T; ++t) {
      const int hour = snap_.start_hour + t;
      const auto ts = static_cast<std::size_t>(t);
      if (opt_.commitment_costs) {
        model_.add_objective(u.startup_cost * LinearExpr(v.su[ts]) +
                             u.shutdown_cost * LinearExpr(v.sd[ts]));
      }
      // logical status
      model_.add_le(LinearExpr(v.su[ts]) + v.sd[ts], 1.0, tag("lg1", u.id, hour));
      LinearExpr prev_st = t == 0 ? LinearExpr(init.online() ? 1.0 : 0.0) : LinearExpr(v.st[ts - 1]);
      model_.add_eq(LinearExpr(v.su[ts]) - v.sd[ts], LinearExpr(v.st[ts]) - prev_st,
                    tag("lg2", u.id, hour));
      // ramping
      LinearExpr prev_p = t == 0 ? LinearExpr(init.output) : LinearExpr(v.p[ts - 1]);
      model_.add_le(LinearExpr(v.p[ts]) - prev_p, u.ramp_up * LinearExpr(v.st[ts]),
                    tag("rup", u.id, hour));
      model_.add_le(prev_p - v.p[ts],
                    u.ramp_down * LinearExpr(v.st[ts]) + u.p_max * LinearExpr(v.sd[ts]),
                    tag("rdn", u.id, hour));
      // capacity with reserves
      LinearExpr up = v.p[ts];
      LinearExpr dn = v.p[ts];
      for (std::size_t e = 0; e < R; ++e) {
        if (rules_[e].direction == ReserveDirection::up) {
          up += v.r[e][ts];
        } else {
          dn -= v.r[e][ts];
        }
      }
      model_.add_le(up, u.p_max * LinearExpr(v.st[ts]), tag("pmax", u.id, hour));
      model_.add_ge(dn, u.p_min * LinearExpr(v.st[ts]), tag("pmin", u.id, hour));
    }

    if (fixed) continue;
    // minimum up and down times, including transitions in the prior history
    const auto& hist = init.history;
    const auto H = static_cast<int>(hist.size());
    for (int t = 0; t < T; ++t) {
      const int hour = snap_.start_hour + t;
      LinearExpr sum_su, sum_sd;
      for (int k = t - u.min_up_time + 1; k <= t; ++k) {
        if (k >= 0) {
          sum_su += v.su[static_cast<std::size_t>(k)];
        } else if (H + k >= 0 && history_startup(hist, static_cast<std::size_t>(H + k))) {
          sum_su += 1.0;
        }
      }
      for (int k = t - u.min_down_time + 1; k <= t; ++k) {
        if (k >= 0) {
          sum_sd += v.sd[static_cast<std::size_t>(k)];
        } else if (H + k >= 0 && history_shutdown(hist, static_cast<std::size_t>(H + k))) {
          sum_sd += 1.0;
        }
      }
      model_.add_le(sum_su, v.st[static_cast<std::size_t>(t)], tag("mut", u.id, hour));
      model_.add_le(sum_sd, 1.0 - LinearExpr(v.st[static_cast<std::size_t>(t)]),
                    tag("mdt", u.id, hour));
    }
  }
}

void SchedulingModel::build_storage() {
  const int T = snap_.horizon;
  const std::size_t R = rules_.size();
  bes_.resize(snap_.bes_units.size());
  for (std::size_t b = 0; b < snap_.bes_units.size(); ++b) {
    const BesUnit& s = snap_.bes_units[b];
    const double eta = s.leg_efficiency();
    BesVars& v = bes_[b];
    v.r.assign(R, {});
    for (int t = 0; t < T; ++t) {
      const int hour = snap_.start_hour + t;
      const auto ts = static_cast<std::size_t>(t);
      double floor = s.e_min;
      if (!opt_.soc_floor.empty()) {
        floor = std::clamp(opt_.soc_floor[b][ts], s.e_min, s.e_max);
      }
      v.pc.push_back(model_.add_continuous(tag("pc", s.id, hour), 0.0, s.p_charge_max));
      v.pd.push_back(model_.add_continuous(tag("pd", s.id, hour), 0.0, s.p_discharge_max));
      v.stc.push_back(model_.add_binary(tag("stc", s.id, hour)));
      v.std_.push_back(model_.add_binary(tag("std", s.id, hour)));
      v.soc.push_back(model_.add_continuous(tag("soc", s.id, hour), floor, s.e_max));

      model_.add_le(v.pc[ts], s.p_charge_max * LinearExpr(v.stc[ts]), tag("bc", s.id, hour));
      model_.add_le(v.pd[ts], s.p_discharge_max * LinearExpr(v.std_[ts]), tag("bd", s.id, hour));
      model_.add_le(LinearExpr(v.stc[ts]) + v.std_[ts], 1.0, tag("bx", s.id, hour));
      LinearExpr prev = t == 0 ? LinearExpr(snap_.prior_soc[b]) : LinearExpr(v.soc[ts - 1]);
      model_.add_eq(v.soc[ts], prev + eta * LinearExpr(v.pc[ts]) - (1.0 / eta) * LinearExpr(v.pd[ts]),
                    tag("soc", s.id, hour));

      LinearExpr up = v.pd[ts];
      LinearExpr dn = v.pc[ts];
      for (std::size_t e = 0; e < R; ++e) {
        v.r[e].push_back(model_.add_continuous(tag("r." + rules_[e].name(), s.id, hour)));
        model_.add_objective(rules_[e].reserve_cost * LinearExpr(v.r[e].back()));
        if (rules_[e].direction == ReserveDirection::up) {
          up += v.r[e][ts];
        } else {
          dn += v.r[e][ts];
        }
      }
      model_.add_le(up, s.p_discharge_max + LinearExpr(v.pc[ts]), tag("bru", s.id, hour));
      model_.add_le(dn, s.p_charge_max + LinearExpr(v.pd[ts]), tag("brd", s.id, hour));
    }
  }
}

void SchedulingModel::build_hps() {
  const int T = snap_.horizon;
  const std::size_t R = rules_.size();
  hps_.resize(snap_.hps_plants.size());
  for (std::size_t h = 0; h < snap_.hps_plants.size(); ++h) {
    const HpsPlant& plant = snap_.hps_plants[h];
    HpsVars& v = hps_[h];
    v.r.assign(R, {});
    const bool fixed = h < opt_.hps_fixed.size() && opt_.hps_fixed[h].has_value();
    v.fixed = fixed;
    const bool offer_mode = opt_.hps_interval_cap.empty();

    for (int t = 0; t < T; ++t) {
      const int hour = snap_.start_hour + t;
      const auto ts = static_cast<std::size_t>(t);
      if (fixed) {
        const auto& f = *opt_.hps_fixed[h];
        v.p.push_back(model_.add_continuous(tag("ph", plant.id, hour), f.injection, f.injection));
        v.gr.push_back(model_.add_continuous(tag("pgr", plant.id, hour), f.absorption, f.absorption));
        v.l.push_back(model_.add_binary(tag("l", plant.id, hour)));
        model_.fix(v.l.back(), f.injection > 0.0 ? 1.0 : 0.0);
        v.eav.push_back(model_.add_continuous(tag("eav", plant.id, hour), 0.0, 0.0));
        model_.add_objective(snap_.penalties.hps_grid_energy * LinearExpr(v.gr.back()));
        continue;
      }
      v.p.push_back(model_.add_continuous(tag("ph", plant.id, hour), 0.0, plant.p_max));
      v.gr.push_back(model_.add_continuous(tag("pgr", plant.id, hour), 0.0, plant.grid_absorb_max));
      v.l.push_back(model_.add_binary(tag("l", plant.id, hour)));
      if (offer_mode) {
        v.eav.push_back(model_.add_continuous(tag("eav", plant.id, hour)));
      } else {
        const double cap = std::max(0.0, opt_.hps_interval_cap[h][ts]);
        v.eav.push_back(model_.add_continuous(tag("eav", plant.id, hour), cap, cap));
      }
      model_.add_objective(snap_.penalties.hps_grid_energy * LinearExpr(v.gr[ts]));

      model_.add_ge(v.p[ts], plant.p_min_component * LinearExpr(v.l[ts]), tag("hmin", plant.id, hour));
      model_.add_le(v.p[ts], plant.p_max * LinearExpr(v.l[ts]), tag("hmax", plant.id, hour));
      model_.add_le(v.gr[ts], plant.grid_absorb_max * (1.0 - LinearExpr(v.l[ts])),
                    tag("hgr", plant.id, hour));
      if (offer_mode) {
        if (t == 0) {
          model_.add_le(v.eav[ts], opt_.hps_offer.at(h), tag("hoff", plant.id, hour));
        } else {
          model_.add_le(v.eav[ts],
                        LinearExpr(v.eav[ts - 1]) + plant.roundtrip_eff * LinearExpr(v.gr[ts - 1]) -
                            LinearExpr(v.p[ts - 1]),
                        tag("hen", plant.id, hour));
        }
      }
      model_.add_le(v.p[ts], v.eav[ts], tag("hav", plant.id, hour));

      LinearExpr up = v.p[ts];
      LinearExpr dn = v.p[ts];
      for (std::size_t e = 0; e < R; ++e) {
        v.r[e].push_back(model_.add_continuous(tag("r." + rules_[e].name(), plant.id, hour)));
        model_.add_objective(rules_[e].reserve_cost * LinearExpr(v.r[e].back()));
        if (rules_[e].direction == ReserveDirection::up) {
          up += v.r[e][ts];
        } else {
          dn -= v.r[e][ts];
        }
      }
      model_.add_le(up, plant.p_max * LinearExpr(v.l[ts]), tag("hru", plant.id, hour));
      model_.add_le(up, v.eav[ts], tag("hre", plant.id, hour));
      model_.add_ge(dn, plant.p_min_component * LinearExpr(v.l[ts]), tag("hrd", plant.id, hour));
    }

    if (!fixed && offer_mode) {
      // non-dispatched energy x_h
      LinearExpr rhs = opt_.hps_offer.at(h);
      for (int t = 0; t < T; ++t) {
        rhs += plant.roundtrip_eff * LinearExpr(v.gr[static_cast<std::size_t>(t)]);
        rhs -= v.p[static_cast<std::size_t>(t)];
      }
      v.x = model_.add_continuous("xh." + plant.id, 0.0, milp::kInf);
      model_.add_eq(v.x, rhs, "xh." + plant.id);
    }
  }
}

void SchedulingModel::build_system() {
  const int T = snap_.horizon;
  const std::size_t R = rules_.size();
  const double slack_cap = opt_.allow_slacks ? milp::kInf : 0.0;
  rr_.assign(R, {});
  xe_.assign(R, {});
  for (int t = 0; t < T; ++t) {
    const int hour = snap_.start_hour + t;
    const auto ts = static_cast<std::size_t>(t);
    xw_.push_back(model_.add_continuous(tag("xw", hour), 0.0, snap_.wind_available[ts]));
    ens_.push_back(model_.add_continuous(tag("ens", hour), 0.0, slack_cap));
    surplus_.push_back(model_.add_continuous(tag("spl", hour), 0.0, slack_cap));
    model_.add_objective(snap_.penalties.energy_not_served *
                         (LinearExpr(ens_[ts]) + LinearExpr(surplus_[ts])));

    LinearExpr supply = snap_.pv_available[ts] + snap_.wind_available[ts] - LinearExpr(xw_[ts]) +
                        LinearExpr(ens_[ts]) - LinearExpr(surplus_[ts]);
    LinearExpr demand = snap_.load[ts];
    for (const auto& u : units_) supply += u.p[ts];
    for (const auto& b : bes_) {
      supply += b.pd[ts];
      demand += b.pc[ts];
    }
    for (const auto& h : hps_) {
      supply += h.p[ts];
      demand += h.gr[ts];
    }
    model_.add_eq(supply, demand, tag("bal", hour));

    for (std::size_t e = 0; e < R; ++e) {
      const ReserveRule& rule = rules_[e];
      const std::string name = rule.name();
      Var rr;
      switch (rule.rule) {
        case RequirementRule::largest_infeed: {
          rr = model_.add_continuous(tag("rr." + name, hour));
          for (const auto& u : units_) model_.add_ge(rr, u.p[ts]);
          for (const auto& h : hps_) model_.add_ge(rr, h.p[ts]);
          model_.add_ge(rr, snap_.wind_available[ts] - LinearExpr(xw_[ts]));
          break;
        }
        case RequirementRule::largest_committed_capacity: {
          rr = model_.add_continuous(tag("rr." + name, hour));
          for (std::size_t i = 0; i < units_.size(); ++i) {
            model_.add_ge(rr, snap_.thermal_units[i].p_max * LinearExpr(units_[i].st[ts]));
          }
          break;
        }
        case RequirementRule::load_fraction: {
          const double v = rule.parameter * snap_.load[ts];
          rr = model_.add_continuous(tag("rr." + name, hour), v, v);
          break;
        }
        case RequirementRule::fixed: {
          rr = model_.add_continuous(tag("rr." + name, hour), rule.parameter, rule.parameter);
          break;
        }
      }
      rr_[e].push_back(rr);
      xe_[e].push_back(model_.add_continuous(tag("xe." + name, hour), 0.0, slack_cap));
      model_.add_objective(rule.violation_penalty * LinearExpr(xe_[e][ts]));

      LinearExpr provided = xe_[e][ts];
      for (const auto& u : units_) provided += u.r[e][ts];
      for (const auto& b : bes_) provided += b.r[e][ts];
      for (const auto& h : hps_) {
        if (!h.fixed) provided += h.r[e][ts];
      }
      model_.add_ge(provided, rr, tag("res." + name, hour));
    }
  }
}

DispatchSchedule SchedulingModel::extract(const milp::Solution& sol) const {
  DispatchSchedule d;
  d.horizon = snap_.horizon;
  d.start_hour = snap_.start_hour;
  d.rules = rules_;
  d.status = sol.status;
  d.gap = sol.gap;
  if (!sol.has_values()) return d;

  const auto T = static_cast<std::size_t>(snap_.horizon);
  const std::size_t R = rules_.size();
  auto vals = [&](const std::vector<Var>& vs) {
    std::vector<double> out;
    out.reserve(vs.size());
    for (Var v : vs) out.push_back(sol.value(v));
    return out;
  };
  auto flags = [&](const std::vector<Var>& vs) {
    std::vector<std::uint8_t> out;
    out.reserve(vs.size());
    for (Var v : vs) out.push_back(sol.value(v) > 0.5 ? 1 : 0);
    return out;
  };
  auto reserves = [&](const std::vector<std::vector<Var>>& r) {
    std::vector<std::vector<double>> out(R, std::vector<double>(T, 0.0));
    for (std::size_t e = 0; e < R && e < r.size(); ++e) {
      for (std::size_t t = 0; t < r[e].size(); ++t) out[e][t] = sol.value(r[e][t]);
    }
    return out;
  };

  for (std::size_t i = 0; i < units_.size(); ++i) {
    const auto& v = units_[i];
    const ThermalUnit& u = snap_.thermal_units[i];
    UnitSchedule us{u.id, vals(v.p), flags(v.st), {}, {}, reserves(v.r)};
    bool prev_on = snap_.prior_commitment[i].online();
    for (std::size_t t = 0; t < T; ++t) {
      const bool on = us.on[t] != 0;
      us.startup.push_back(on && !prev_on ? 1 : 0);
      us.shutdown.push_back(!on && prev_on ? 1 : 0);
      prev_on = on;
    }
    for (std::size_t t = 0; t < T; ++t) {
      d.costs.production += production_cost(u, us.output[t], us.on[t] != 0);
      if (opt_.commitment_costs) {
        d.costs.startup += u.startup_cost * us.startup[t];
        d.costs.shutdown += u.shutdown_cost * us.shutdown[t];
      }
      for (std::size_t e = 0; e < R; ++e) d.costs.reserve += rules_[e].reserve_cost * us.reserve[e][t];
    }
    d.units.push_back(std::move(us));
  }
  for (std::size_t b = 0; b < bes_.size(); ++b) {
    const auto& v = bes_[b];
    StorageSchedule ss{snap_.bes_units[b].id, vals(v.pc), vals(v.pd), vals(v.soc),
                       flags(v.stc),          flags(v.std_), reserves(v.r)};
    for (std::size_t e = 0; e < R; ++e) {
      for (std::size_t t = 0; t < T; ++t) d.costs.reserve += rules_[e].reserve_cost * ss.reserve[e][t];
    }
    d.storage.push_back(std::move(ss));
  }
  for (std::size_t h = 0; h < hps_.size(); ++h) {
    const auto& v = hps_[h];
    HpsSchedule hs;
    hs.id = snap_.hps_plants[h].id;
    hs.dispatch = vals(v.p);
    hs.grid_absorption = vals(v.gr);
    hs.committed = flags(v.l);
    hs.available_energy = vals(v.eav);
    hs.reserve = reserves(v.r);
    if (!opt_.hps_offer.empty()) hs.offer = opt_.hps_offer[h];
    if (v.x.valid()) hs.non_dispatched = sol.value(v.x);
    for (std::size_t t = 0; t < T; ++t) {
      d.costs.hps_grid += snap_.penalties.hps_grid_energy * hs.grid_absorption[t];
      for (std::size_t e = 0; e < R; ++e) d.costs.reserve += rules_[e].reserve_cost * hs.reserve[e][t];
    }
    d.hps.push_back(std::move(hs));
  }
  d.wind_curtailment = vals(xw_);
  d.energy_not_served = vals(ens_);
  d.surplus = vals(surplus_);
  d.reserve_requirement.assign(R, {});
  d.reserve_shortfall.assign(R, {});
  for (std::size_t e = 0; e < R; ++e) {
    d.reserve_requirement[e] = vals(rr_[e]);
    d.reserve_shortfall[e] = vals(xe_[e]);
  }
  for (std::size_t t = 0; t < T; ++t) {
    d.costs.slack += snap_.penalties.energy_not_served * (d.energy_not_served[t] + d.surplus[t]);
    for (std::size_t e = 0; e < R; ++e) {
      d.costs.slack += rules_[e].violation_penalty * d.reserve_shortfall[e][t];
    }
  }
  d.objective = sol.objective;
  return d;
}

}  // namespace islandsim::detail
