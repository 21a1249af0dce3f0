#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "islandsim/domain.hpp"

namespace islandsim::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Handle to a model variable.
struct Var {
  int index = -1;

  bool valid() const { return index >= 0; }
  friend bool operator==(Var, Var) = default;
};

/// Sum of coefficient * variable terms plus a constant.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(double constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  LinearExpr(Var v) { terms_.emplace_back(v, 1.0); }    // NOLINT(google-explicit-constructor)

  LinearExpr& add(Var v, double coeff) {
    if (coeff != 0.0) terms_.emplace_back(v, coeff);
    return *this;
  }
  LinearExpr& operator+=(const LinearExpr& o);
  LinearExpr& operator-=(const LinearExpr& o);
  LinearExpr& operator*=(double k);

  const std::vector<std::pair<Var, double>>& terms() const { return terms_; }
  double constant() const { return constant_; }

  /// Merge duplicate variables and drop zero coefficients.
  LinearExpr normalized() const;

  double evaluate(std::span<const double> values) const;

 private:
  std::vector<std::pair<Var, double>> terms_;
  double constant_ = 0.0;
};

LinearExpr operator+(LinearExpr a, const LinearExpr& b);
LinearExpr operator-(LinearExpr a, const LinearExpr& b);
LinearExpr operator*(double k, LinearExpr e);
LinearExpr operator*(LinearExpr e, double k);
LinearExpr operator-(LinearExpr e);

enum class VarType { continuous, binary };
enum class Relation { less_equal, greater_equal, equal };
enum class Sense { minimize, maximize };

struct Variable {
  std::string name;
  VarType type = VarType::continuous;
  double lower = 0.0;
  double upper = kInf;
};

/// terms (relation) rhs; constants are folded into rhs on insertion.
struct Constraint {
  std::string name;
  std::vector<std::pair<Var, double>> terms;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

/// Declarative MILP: variables with bounds, linear rows and a linear objective.
class LinearModel {
 public:
  Var add_continuous(std::string name, double lower = 0.0, double upper = kInf);
  Var add_binary(std::string name);

  void add_constraint(const LinearExpr& lhs, Relation rel, const LinearExpr& rhs,
                      std::string name = {});
  void add_le(const LinearExpr& lhs, const LinearExpr& rhs, std::string name = {}) {
    add_constraint(lhs, Relation::less_equal, rhs, std::move(name));
  }
  void add_ge(const LinearExpr& lhs, const LinearExpr& rhs, std::string name = {}) {
    add_constraint(lhs, Relation::greater_equal, rhs, std::move(name));
  }
  void add_eq(const LinearExpr& lhs, const LinearExpr& rhs, std::string name = {}) {
    add_constraint(lhs, Relation::equal, rhs, std::move(name));
  }

  void set_sense(Sense s) { sense_ = s; }
  void add_objective(const LinearExpr& e) { objective_ += e; }
  void set_objective(Sense s, LinearExpr e) {
    sense_ = s;
    objective_ = std::move(e);
  }

  /// Tighten a variable to a fixed value.
  void fix(Var v, double value);

  Sense sense() const { return sense_; }
  const LinearExpr& objective() const { return objective_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const Variable& variable(Var v) const { return vars_.at(static_cast<std::size_t>(v.index)); }
  std::size_t num_binaries() const;

  /// Empty iff every row references declared variables and bounds are consistent.
  std::vector<std::string> check_well_formed() const;

  /// Largest violation of any bound, row or integrality under `values`.
  double max_violation(std::span<const double> values) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  LinearExpr objective_;
  Sense sense_ = Sense::minimize;
};

struct SolverSettings {
  double gap_tolerance = 1e-4;  // relative MIP gap
  double time_limit = 60.0;     // seconds

  friend bool operator==(const SolverSettings&, const SolverSettings&) = default;
};

struct Solution {
  SolveStatus status = SolveStatus::error;
  double objective = 0.0;
  std::vector<double> values;
  double gap = 0.0;
  std::string message;

  bool has_values() const {
    return status == SolveStatus::optimal || status == SolveStatus::feasible_gap;
  }
  double value(Var v) const { return values.at(static_cast<std::size_t>(v.index)); }
  double value(const LinearExpr& e) const { return e.evaluate(values); }
};

/// Solve with the bundled HiGHS backend. Infeasibility is a status, never an
/// exception. Binary values are snapped to exactly 0 or 1.
Solution solve(const LinearModel& model, const SolverSettings& settings = {});

/// CPLEX LP text format: objective, constraints, bounds, binaries.
void write_lp(const LinearModel& model, std::ostream& os);

/// Block variables of a linearized cost curve: blocks[t][b].
struct PiecewiseCost {
  std::vector<std::vector<Var>> blocks;
};

/// Adds dp_{u,t,b} in [0, width_b * st_t], the identity
/// output_t = p_min * st_t + sum_b dp_{u,t,b}, and objective terms
/// cost_at_pmin * st_t + sum_b g_b * dp_{u,t,b}.
/// Throws std::invalid_argument for a non-convex cost curve.
PiecewiseCost add_piecewise_cost(LinearModel& model, const ThermalUnit& unit,
                                 std::span<const Var> output, std::span<const Var> status,
                                 int start_hour = 0);

}  // namespace islandsim::milp
