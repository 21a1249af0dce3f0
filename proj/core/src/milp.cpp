#include "islandsim/milp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "Highs.h"

namespace islandsim::milp {

// ---------------------------------------------------------------------------
// LinearExpr

LinearExpr& LinearExpr::operator+=(const LinearExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  constant_ += o.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& o) {
  for (const auto& [v, c] : o.terms_) terms_.emplace_back(v, -c);
  constant_ -= o.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double k) {
  for (auto& t : terms_) t.second *= k;
  constant_ *= k;
  return *this;
}

LinearExpr LinearExpr::normalized() const {
  std::map<int, double> merged;
  for (const auto& [v, c] : terms_) merged[v.index] += c;
  LinearExpr out(constant_);
  for (const auto& [i, c] : merged) {
    if (c != 0.0) out.terms_.emplace_back(Var{i}, c);
  }
  return out;
}

double LinearExpr::evaluate(std::span<const double> values) const {
  double s = constant_;
  for (const auto& [v, c] : terms_) s += c * values[static_cast<std::size_t>(v.index)];
  return s;
}

LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
LinearExpr operator*(double k, LinearExpr e) { return e *= k; }
LinearExpr operator*(LinearExpr e, double k) { return e *= k; }
LinearExpr operator-(LinearExpr e) { return e *= -1.0; }

// ---------------------------------------------------------------------------
// LinearModel

Var LinearModel::add_continuous(std::string name, double lower, double upper) {
  vars_.push_back({std::move(name), VarType::continuous, lower, upper});
  return Var{static_cast<int>(vars_.size()) - 1};
}

Var LinearModel::add_binary(std::string name) {
  vars_.push_back({std::move(name), VarType::binary, 0.0, 1.0});
  return Var{static_cast<int>(vars_.size()) - 1};
}

void LinearModel::add_constraint(const LinearExpr& lhs, Relation rel, const LinearExpr& rhs,
                                 std::string name) {
  LinearExpr diff = (lhs - rhs).normalized();
  Constraint c;
  c.name = name.empty() ? "r" + std::to_string(rows_.size()) : std::move(name);
  c.terms = diff.terms();
  c.relation = rel;
  c.rhs = -diff.constant();
  rows_.push_back(std::move(c));
}

void LinearModel::fix(Var v, double value) {
  auto& var = vars_.at(static_cast<std::size_t>(v.index));
  var.lower = value;
  var.upper = value;
}

std::size_t LinearModel::num_binaries() const {
  return static_cast<std::size_t>(std::count_if(
      vars_.begin(), vars_.end(), [](const Variable& v) { return v.type == VarType::binary; }));
}

std::vector<std::string> LinearModel::check_well_formed() const {
  std::vector<std::string> problems;
  const int n = static_cast<int>(vars_.size());
  for (const auto& v : vars_) {
    if (v.lower > v.upper) problems.push_back(v.name + ": lower bound exceeds upper bound");
    if (v.type == VarType::binary && (v.lower < 0.0 || v.upper > 1.0)) {
      problems.push_back(v.name + ": binary bounds must lie within {0,1}");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper)) problems.push_back(v.name + ": NaN bound");
  }
  for (const auto& r : rows_) {
    for (const auto& [v, c] : r.terms) {
      if (v.index < 0 || v.index >= n) problems.push_back(r.name + ": undeclared variable");
      if (!std::isfinite(c)) problems.push_back(r.name + ": non-finite coefficient");
    }
    if (!std::isfinite(r.rhs)) problems.push_back(r.name + ": non-finite right-hand side");
  }
  for (const auto& [v, c] : objective_.terms()) {
    if (v.index < 0 || v.index >= n) problems.push_back("objective: undeclared variable");
  }
  return problems;
}

double LinearModel::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    worst = std::max({worst, v.lower - values[i], values[i] - v.upper});
    if (v.type == VarType::binary) {
      worst = std::max(worst, std::abs(values[i] - std::round(values[i])));
    }
  }
  for (const auto& r : rows_) {
    double lhs = 0.0;
    for (const auto& [v, c] : r.terms) lhs += c * values[static_cast<std::size_t>(v.index)];
    switch (r.relation) {
      case Relation::less_equal: worst = std::max(worst, lhs - r.rhs); break;
      case Relation::greater_equal: worst = std::max(worst, r.rhs - lhs); break;
      case Relation::equal: worst = std::max(worst, std::abs(lhs - r.rhs)); break;
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Backend

Solution solve(const LinearModel& model, const SolverSettings& settings) {
  Solution sol;
  if (auto problems = model.check_well_formed(); !problems.empty()) {
    sol.status = SolveStatus::error;
    sol.message = problems.front();
    return sol;
  }

  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  const auto num_col = static_cast<HighsInt>(vars.size());
  const auto num_row = static_cast<HighsInt>(rows.size());

  std::vector<double> cost(vars.size(), 0.0), col_lower, col_upper;
  std::vector<HighsInt> integrality;
  col_lower.reserve(vars.size());
  col_upper.reserve(vars.size());
  integrality.reserve(vars.size());
  for (const auto& v : vars) {
    col_lower.push_back(v.lower == -kInf ? -kHighsInf : v.lower);
    col_upper.push_back(v.upper == kInf ? kHighsInf : v.upper);
    integrality.push_back(v.type == VarType::binary ? static_cast<HighsInt>(HighsVarType::kInteger)
                                                    : static_cast<HighsInt>(HighsVarType::kContinuous));
  }
  const LinearExpr objective = model.objective().normalized();
  for (const auto& [v, c] : objective.terms()) cost[static_cast<std::size_t>(v.index)] += c;

  std::vector<double> row_lower, row_upper, a_value;
  std::vector<HighsInt> a_start, a_index;
  row_lower.reserve(rows.size());
  row_upper.reserve(rows.size());
  a_start.reserve(rows.size() + 1);
  for (const auto& r : rows) {
    a_start.push_back(static_cast<HighsInt>(a_index.size()));
    for (const auto& [v, c] : r.terms) {
      a_index.push_back(v.index);
      a_value.push_back(c);
    }
    switch (r.relation) {
      case Relation::less_equal:
        row_lower.push_back(-kHighsInf);
        row_upper.push_back(r.rhs);
        break;
      case Relation::greater_equal:
        row_lower.push_back(r.rhs);
        row_upper.push_back(kHighsInf);
        break;
      case Relation::equal:
        row_lower.push_back(r.rhs);
        row_upper.push_back(r.rhs);
        break;
    }
  }
  a_start.push_back(static_cast<HighsInt>(a_index.size()));

  const bool is_mip = model.num_binaries() > 0;

  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("random_seed", 0);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("mip_rel_gap", settings.gap_tolerance);
  highs.setOptionValue("time_limit", settings.time_limit);
  highs.setOptionValue("mip_allow_restart", false);
  highs.setOptionValue("primal_feasibility_tolerance", 1e-9);
  highs.setOptionValue("mip_feasibility_tolerance", 1e-9);

  const HighsInt sense = model.sense() == Sense::minimize
                             ? static_cast<HighsInt>(ObjSense::kMinimize)
                             : static_cast<HighsInt>(ObjSense::kMaximize);
  HighsStatus st = highs.passModel(
      num_col, num_row, static_cast<HighsInt>(a_index.size()),
      static_cast<HighsInt>(MatrixFormat::kRowwise), sense, objective.constant(), cost.data(),
      col_lower.data(), col_upper.data(), row_lower.data(), row_upper.data(), a_start.data(),
      a_index.data(), a_value.data(), is_mip ? integrality.data() : nullptr);
  if (st == HighsStatus::kError) {
    sol.status = SolveStatus::error;
    sol.message = "backend rejected the model";
    return sol;
  }
  if (highs.run() == HighsStatus::kError) {
    sol.status = SolveStatus::error;
    sol.message = "backend run failed";
    return sol;
  }

  const HighsModelStatus ms = highs.getModelStatus();
  const HighsInfo& info = highs.getInfo();
  const bool has_primal = info.primal_solution_status == kSolutionStatusFeasible;

  switch (ms) {
    case HighsModelStatus::kOptimal:
      sol.status = SolveStatus::optimal;
      break;
    case HighsModelStatus::kModelEmpty:
      sol.status = SolveStatus::optimal;
      break;
    case HighsModelStatus::kInfeasible:
    case HighsModelStatus::kUnboundedOrInfeasible:
      sol.status = SolveStatus::infeasible;
      sol.message = highs.modelStatusToString(ms);
      return sol;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt:
      sol.status = has_primal ? SolveStatus::feasible_gap : SolveStatus::error;
      sol.message = highs.modelStatusToString(ms);
      if (!has_primal) return sol;
      break;
    default:
      sol.status = SolveStatus::error;
      sol.message = highs.modelStatusToString(ms);
      return sol;
  }

  if (ms == HighsModelStatus::kModelEmpty) {
    sol.values.assign(vars.size(), 0.0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      sol.values[i] = std::clamp(0.0, vars[i].lower, vars[i].upper);
    }
  } else {
    sol.values = highs.getSolution().col_value;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].type == VarType::binary) sol.values[i] = std::round(sol.values[i]);
  }
  sol.objective = objective.evaluate(sol.values);
  sol.gap = is_mip ? std::max(0.0, info.mip_gap) : 0.0;
  if (!std::isfinite(sol.gap)) sol.gap = 0.0;
  return sol;
}

// ---------------------------------------------------------------------------
// LP text dump

namespace {

std::string number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_terms(std::ostream& os, const LinearModel& m,
                 const std::vector<std::pair<Var, double>>& terms) {
  bool first = true;
  for (const auto& [v, c] : terms) {
    if (c == 0.0) continue;
    if (c < 0.0) {
      os << (first ? "- " : " - ");
    } else if (!first) {
      os << " + ";
    }
    const double mag = std::abs(c);
    if (mag != 1.0) os << number(mag) << ' ';
    os << m.variable(v).name;
    first = false;
  }
  if (first) os << "0 " << (m.variables().empty() ? "x" : m.variables().front().name);
}

}  // namespace

void write_lp(const LinearModel& model, std::ostream& os) {
  const LinearExpr obj = model.objective().normalized();
  os << (model.sense() == Sense::minimize ? "Minimize" : "Maximize") << '\n';
  os << " obj: ";
  write_terms(os, model, obj.terms());
  if (obj.constant() != 0.0) os << (obj.constant() < 0 ? " - " : " + ") << number(std::abs(obj.constant()));
  os << "\nSubject To\n";
  for (const auto& r : model.constraints()) {
    os << ' ' << r.name << ": ";
    write_terms(os, model, r.terms);
    switch (r.relation) {
      case Relation::less_equal: os << " <= "; break;
      case Relation::greater_equal: os << " >= "; break;
      case Relation::equal: os << " = "; break;
    }
    os << number(r.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.variables()) {
    if (v.type == VarType::binary) continue;
    if (v.lower == v.upper) {
      os << ' ' << v.name << " = " << number(v.lower) << '\n';
      continue;
    }
    const std::string lo = v.lower == -kInf ? "-inf" : number(v.lower);
    const std::string hi = v.upper == kInf ? "+inf" : number(v.upper);
    os << ' ' << lo << " <= " << v.name << " <= " << hi << '\n';
  }
  bool any_binary = false;
  for (const auto& v : model.variables()) {
    if (v.type != VarType::binary) continue;
    if (!any_binary) os << "Binaries\n";
    any_binary = true;
    os << ' ' << v.name << '\n';
  }
  os << "End\n";
}

// ---------------------------------------------------------------------------
// Piecewise cost

PiecewiseCost add_piecewise_cost(LinearModel& model, const ThermalUnit& unit,
                                 std::span<const Var> output, std::span<const Var> status,
                                 int start_hour) {
  if (output.size() != status.size()) {
    throw std::invalid_argument("add_piecewise_cost: output/status length mismatch");
  }
  for (std::size_t b = 0; b < unit.cost_blocks.size(); ++b) {
    if (unit.cost_blocks[b].marginal_cost < 0.0 ||
        (b > 0 && unit.cost_blocks[b].marginal_cost < unit.cost_blocks[b - 1].marginal_cost)) {
      throw std::invalid_argument("add_piecewise_cost: cost blocks of unit " + unit.id +
                                  " are not convex");
    }
  }
  PiecewiseCost pc;
  pc.blocks.resize(output.size());
  for (std::size_t t = 0; t < output.size(); ++t) {
    const std::string suffix = unit.id + "." + std::to_string(start_hour + static_cast<int>(t));
    LinearExpr identity = unit.p_min * LinearExpr(status[t]);
    model.add_objective(unit.cost_at_pmin * LinearExpr(status[t]));
    for (std::size_t b = 0; b < unit.cost_blocks.size(); ++b) {
      const auto& blk = unit.cost_blocks[b];
      Var dp = model.add_continuous("dp." + suffix + "." + std::to_string(b), 0.0, blk.width_mw);
      model.add_le(dp, blk.width_mw * LinearExpr(status[t]), "blk." + suffix + "." + std::to_string(b));
      model.add_objective(blk.marginal_cost * LinearExpr(dp));
      identity += dp;
      pc.blocks[t].push_back(dp);
    }
    model.add_eq(output[t], identity, "pwl." + suffix);
  }
  return pc;
}

}  // namespace islandsim::milp
