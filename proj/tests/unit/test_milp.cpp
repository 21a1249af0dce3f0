#include <gtest/gtest.h>

#include <sstream>

#include "islandsim/milp.hpp"

using namespace islandsim;
using namespace islandsim::milp;

TEST(Milp, SmallLinearProgram) {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
  LinearModel m;
  Var x = m.add_continuous("x", 0, 3);
  Var y = m.add_continuous("y");
  m.add_le(LinearExpr(x) + y, 4.0);
  m.add_le(LinearExpr(x) + 3.0 * LinearExpr(y), 6.0);
  m.set_objective(Sense::maximize, 3.0 * LinearExpr(x) + 2.0 * LinearExpr(y));
  const auto s = solve(m);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 11.0, 1e-9);
  EXPECT_NEAR(s.value(x), 3.0, 1e-9);
  EXPECT_NEAR(s.value(y), 1.0, 1e-9);
  EXPECT_LE(m.max_violation(s.values), 1e-9);
}

TEST(Milp, KnapsackMatchesEnumeration) {
  const std::vector<double> w{5, 4, 6, 3}, v{10, 40, 30, 50};
  LinearModel m;
  std::vector<Var> x;
  LinearExpr weight, value;
  for (std::size_t i = 0; i < w.size(); ++i) {
    x.push_back(m.add_binary("x" + std::to_string(i)));
    weight.add(x.back(), w[i]);
    value.add(x.back(), v[i]);
  }
  m.add_le(weight, 10.0);
  m.set_objective(Sense::maximize, value);
  const auto s = solve(m);
  double best = 0;
  for (int mask = 0; mask < 16; ++mask) {
    double ww = 0, vv = 0;
    for (int i = 0; i < 4; ++i) {
      if (mask >> i & 1) {
        ww += w[static_cast<std::size_t>(i)];
        vv += v[static_cast<std::size_t>(i)];
      }
    }
    if (ww <= 10) best = std::max(best, vv);
  }
  EXPECT_NEAR(s.objective, best, 1e-9);
  EXPECT_EQ(m.num_binaries(), 4u);
}

TEST(Milp, InfeasibleReported) {
  LinearModel m;
  Var x = m.add_continuous("x", 0, 1);
  m.add_ge(x, 2.0);
  m.set_objective(Sense::minimize, x);
  EXPECT_EQ(solve(m).status, SolveStatus::infeasible);
}

TEST(Milp, EqualityWithConstantsOnBothSides) {
  LinearModel m;
  Var x = m.add_continuous("x", -kInf, kInf);
  m.add_eq(LinearExpr(x) + 2.0, 5.0 - LinearExpr(x));
  m.set_objective(Sense::minimize, x);
  const auto s = solve(m);
  ASSERT_TRUE(s.has_values());
  EXPECT_NEAR(s.value(x), 1.5, 1e-9);
}

TEST(Milp, FixPinsBounds) {
  LinearModel m;
  Var b = m.add_binary("b");
  m.fix(b, 1.0);
  m.set_objective(Sense::minimize, b);
  EXPECT_NEAR(solve(m).value(b), 1.0, 1e-12);
}

TEST(Milp, UnknownVariableIsMalformed) {
  LinearModel m;
  m.add_continuous("x");
  m.add_le(LinearExpr(Var{7}), 1.0, "bad");
  EXPECT_FALSE(m.check_well_formed().empty());
  EXPECT_EQ(solve(m).status, SolveStatus::error);
}

TEST(Milp, PiecewiseCostFillsBlocksInOrder) {
  ThermalUnit u;
  u.id = "G";
  u.p_min = 10;
  u.p_max = 30;
  u.cost_at_pmin = 100;
  u.cost_blocks = {{10, 5}, {10, 9}};
  LinearModel m;
  Var p = m.add_continuous("p", 0, 30);
  Var st = m.add_binary("st");
  std::vector<Var> ps{p}, sts{st};
  auto pc = add_piecewise_cost(m, u, ps, sts, 0);
  m.add_ge(p, 17.0);
  const auto s = solve(m);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 100 + 7 * 5, 1e-9);
  EXPECT_NEAR(s.value(pc.blocks[0][0]), 7.0, 1e-9);
  EXPECT_NEAR(s.value(pc.blocks[0][1]), 0.0, 1e-9);
  EXPECT_NEAR(s.objective, production_cost(u, 17, true), 1e-9);
}

TEST(Milp, PiecewiseCostRejectsNonConvexBlocks) {
  ThermalUnit u;
  u.id = "G";
  u.p_min = 10;
  u.p_max = 30;
  u.cost_blocks = {{10, 9}, {10, 5}};
  LinearModel m;
  std::vector<Var> ps{m.add_continuous("p")}, sts{m.add_binary("s")};
  EXPECT_THROW(add_piecewise_cost(m, u, ps, sts, 0), std::invalid_argument);
}

TEST(Milp, LpFormatListsSections) {
  LinearModel m;
  Var x = m.add_continuous("x", 0, 4);
  Var b = m.add_binary("b");
  m.add_le(LinearExpr(x) - 4.0 * LinearExpr(b), 0.0, "link");
  m.set_objective(Sense::maximize, LinearExpr(x) - LinearExpr(b));
  std::ostringstream os;
  write_lp(m, os);
  const std::string lp = os.str();
  EXPECT_NE(lp.find("Maximize"), std::string::npos);
  EXPECT_NE(lp.find("link:"), std::string::npos);
  EXPECT_NE(lp.find("Binar"), std::string::npos);
  EXPECT_NE(lp.find("End"), std::string::npos);
}
