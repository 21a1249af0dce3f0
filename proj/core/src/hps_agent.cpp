#include "islandsim/hps_agent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "islandsim/errors.hpp"

namespace islandsim {

namespace {

// Reward per MWh stored instead of rejected; only breaks ties.
constexpr double kStoreTieBreak = 1e-3;

}  // namespace

HpsRealization self_dispatch(const HpsPlant& hps, const HpsOrder& order, double res_available,
                             double soc, const milp::SolverSettings& settings) {
  using milp::LinearExpr;
  const BesUnit& st = hps.storage;
  if (!(res_available >= 0.0)) throw ValidationError(hps.id + ": RES availability must be >= 0");
  if (soc < st.e_min - 1e-9 || soc > st.e_max + 1e-9) {
    throw ValidationError(hps.id + ": storage SoC outside [e_min, e_max]");
  }
  if (!(order.production >= 0.0) || !(order.absorption >= 0.0)) {
    throw ValidationError(hps.id + ": orders must be >= 0");
  }
  soc = std::clamp(soc, st.e_min, st.e_max);
  const double eta = std::sqrt(hps.roundtrip_eff);
  const auto& m = hps.prices;

  milp::LinearModel model;
  auto rg = model.add_continuous("res_g." + hps.id);
  auto rs = model.add_continuous("res_s." + hps.id);
  auto rr = model.add_continuous("res_r." + hps.id);
  auto dch = model.add_continuous("dch." + hps.id, 0.0, st.p_discharge_max);
  auto ch = model.add_continuous("ch." + hps.id, 0.0, st.p_charge_max);
  auto imbp = model.add_continuous("imb_p." + hps.id);
  auto excess = model.add_continuous("imb_a_excess." + hps.id);
  auto shortfall = model.add_continuous("imb_a_short." + hps.id);
  auto e = model.add_continuous("e." + hps.id, st.e_min, st.e_max);
  auto charging = model.add_binary("charging." + hps.id);

  model.add_eq(LinearExpr(rs) + rg + rr, res_available, "res_split");
  model.add_eq(LinearExpr(rg) + dch + imbp, order.production, "production_order");
  model.add_eq(order.absorption + LinearExpr(excess) - LinearExpr(shortfall),
               LinearExpr(ch) - LinearExpr(rs), "absorption_order");
  model.add_le(rs, ch, "stored_res_is_charge");
  model.add_eq(LinearExpr(e) - soc, eta * LinearExpr(ch) - (1.0 / eta) * LinearExpr(dch), "energy");
  model.add_le(ch, st.p_charge_max * LinearExpr(charging), "charge_mode");
  model.add_le(dch, st.p_discharge_max * (1.0 - LinearExpr(charging)), "discharge_mode");

  LinearExpr economic = m.sale * (LinearExpr(rg) + dch) - m.purchase * order.absorption -
                        m.imbalance * (LinearExpr(imbp) + excess + shortfall);
  model.set_objective(milp::Sense::maximize, economic + kStoreTieBreak * LinearExpr(rs));

  milp::SolverSettings exact = settings;
  exact.gap_tolerance = 0.0;
  milp::Solution sol = milp::solve(model, exact);
  if (!sol.has_values()) {
    throw SolverError(hps.id + ": self-dispatch failed: " + to_string(sol.status) + " " +
                      sol.message);
  }
  auto v = [&](milp::Var x) { return std::max(0.0, sol.value(x)); };
  HpsRealization r;
  r.res_to_grid = v(rg);
  r.res_to_storage = v(rs);
  r.res_rejected = v(rr);
  r.discharge = v(dch);
  r.charge = v(ch);
  r.imbalance_production = v(imbp);
  r.imbalance_absorption = v(excess) + v(shortfall);
  r.end_soc = std::clamp(soc + eta * r.charge - r.discharge / eta, st.e_min, st.e_max);
  r.objective = m.sale * (r.res_to_grid + r.discharge) - m.purchase * order.absorption -
                m.imbalance * (r.imbalance_production + r.imbalance_absorption);
  return r;
}

}  // namespace islandsim
