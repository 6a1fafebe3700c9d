// Copyright 2026 The pathforge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lp_fixtures.hpp"
#include "oracles.hpp"
#include "pathforge/lp.hpp"
#include "pathforge/simplex.hpp"

using namespace pathforge;

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

// Lower and upper value of y'(A x - r) over the column and row boxes; a
// Farkas certificate has a range excluding zero.
std::pair<double, double> certificate_range(const LinearProgram& lp, const std::vector<double>& y) {
  double lo = 0.0, hi = 0.0;
  std::vector<double> g(lp.num_cols(), 0.0);
  for (int j = 0; j < lp.num_cols(); ++j)
    for (int k = lp.col_start()[j]; k < lp.col_start()[j + 1]; ++k)
      g[j] += y[lp.row_index()[k]] * lp.values()[k];
  auto add = [&](double coef, double l, double u) {
    if (coef == 0.0) return;
    lo += coef > 0 ? coef * l : coef * u;
    hi += coef > 0 ? coef * u : coef * l;
  };
  for (int j = 0; j < lp.num_cols(); ++j) add(g[j], lp.column(j).lower, lp.column(j).upper);
  for (int i = 0; i < lp.num_rows(); ++i) {
    const auto& r = lp.row(i);
    const double l = r.sense == Sense::le ? -kInfD : r.rhs;
    const double u = r.sense == Sense::ge ? kInfD : r.rhs;
    add(-y[i], l, u);
  }
  return {lo, hi};
}

}  // namespace

TEST(Simplex, SingleUpperBoundedRow) {
  LinearProgram lp;
  const int x = lp.add_column("x", 0.0, kInfD, -1.0);
  const int r = lp.add_row("cap", Sense::le, 5.0);
  lp.add_entry(r, x, 1.0);
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.primal[x], 5.0, 1e-12);
  EXPECT_NEAR(sol.objective, -5.0, 1e-12);
  EXPECT_NEAR(sol.dual[r], 1.0, 1e-12);
  EXPECT_NEAR(shadow_price(lp, sol, "cap"), 1.0, 1e-12);
}

TEST(Simplex, EqualityAndCoveringRow) {
  LinearProgram lp;
  const int x = lp.add_column("x", 0.0, kInfD, 1.0);
  const int y = lp.add_column("y", 0.0, kInfD, 1.0);
  const int r0 = lp.add_row("cover", Sense::ge, 2.0);
  const int r1 = lp.add_row("tie", Sense::eq, 0.0);
  lp.add_entry(r0, x, 1.0);
  lp.add_entry(r0, y, 1.0);
  lp.add_entry(r1, x, 1.0);
  lp.add_entry(r1, y, -1.0);
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.primal[x], 1.0, 1e-12);
  EXPECT_NEAR(sol.primal[y], 1.0, 1e-12);
  EXPECT_NEAR(sol.objective, 2.0, 1e-12);
  EXPECT_NEAR(sol.dual[r0], -1.0, 1e-12);
  EXPECT_NEAR(sol.dual[r1], 0.0, 1e-12);
}

TEST(Simplex, InfeasibleReturnsCertificate) {
  LinearProgram lp;
  const int x = lp.add_column("x", 0.0, 3.0, 1.0);
  const int y = lp.add_column("y", 0.0, 3.0, 1.0);
  const int r = lp.add_row("need", Sense::ge, 10.0);
  lp.add_entry(r, x, 1.0);
  lp.add_entry(r, y, 1.0);
  lp.finalize();
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, LpStatus::infeasible);
  ASSERT_EQ(sol.ray.size(), 1u);
  const auto [lo, hi] = certificate_range(lp, sol.ray);
  EXPECT_TRUE(lo > 0.0 || hi < 0.0) << lo << " " << hi;
}

TEST(Simplex, EmptyRowWithPositiveRhsIsInfeasible) {
  LinearProgram lp;
  lp.add_column("x", 0.0, 1.0, 1.0);
  lp.add_row("empty", Sense::eq, 1.0);
  EXPECT_EQ(solve(lp).status, LpStatus::infeasible);
}

TEST(Simplex, UnboundedReportsImprovingRay) {
  LinearProgram lp;
  const int x = lp.add_column("x", 0.0, kInfD, -1.0);
  const int y = lp.add_column("y", 0.0, kInfD, 0.0);
  const int r = lp.add_row("r", Sense::le, 1.0);
  lp.add_entry(r, x, 1.0);
  lp.add_entry(r, y, -1.0);
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, LpStatus::unbounded);
  ASSERT_EQ(sol.ray.size(), 2u);
  EXPECT_LT(-sol.ray[x], 0.0);
  EXPECT_LE(sol.ray[x] - sol.ray[y], 1e-12);
}

TEST(Simplex, FreeColumnWithoutEntriesAndNegativeCostIsUnbounded) {
  LinearProgram lp;
  lp.add_column("x", -kInfD, kInfD, 2.0);
  EXPECT_EQ(solve(lp).status, LpStatus::unbounded);
}

TEST(Simplex, FixedColumnsArePresolvedAway) {
  LinearProgram lp;
  const int x = lp.add_column("x", 2.0, 2.0, 3.0);
  const int y = lp.add_column("y", 0.0, 10.0, 1.0);
  const int r = lp.add_row("sum", Sense::ge, 5.0);
  lp.add_entry(r, x, 1.0);
  lp.add_entry(r, y, 1.0);
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.primal[x], 2.0, 1e-12);
  EXPECT_NEAR(sol.primal[y], 3.0, 1e-12);
  EXPECT_NEAR(sol.objective, 9.0, 1e-12);
  EXPECT_NEAR(sol.dual[r], -1.0, 1e-12);
}

TEST(Simplex, ObjectiveOffsetIsReported) {
  LinearProgram lp;
  lp.add_column("x", 1.0, 4.0, 1.0);
  lp.objective_offset = 10.0;
  const auto sol = solve(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 11.0, 1e-12);
}

TEST(Simplex, DegenerateCycleProneInstanceTerminates) {
  // Beale's classic cycling example.
  LinearProgram lp;
  const double c[] = {-0.75, 150.0, -0.02, 6.0};
  for (int j = 0; j < 4; ++j) lp.add_column("x" + std::to_string(j), 0.0, kInfD, c[j]);
  const double a[3][4] = {{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0}, {0.0, 0.0, 1.0, 0.0}};
  const double b[] = {0.0, 0.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    const int r = lp.add_row("r" + std::to_string(i), Sense::le, b[i]);
    for (int j = 0; j < 4; ++j) lp.add_entry(r, j, a[i][j]);
  }
  SimplexOptions opt;
  opt.scale = false;
  opt.stall_threshold = 0;
  const auto sol = solve(lp, opt);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, -0.05, 1e-12);
}

TEST(Simplex, BadlyScaledRowsAgreeWithUnscaledSolve) {
  LinearProgram lp;
  const int x = lp.add_column("x", 0.0, kInfD, 1e3);
  const int y = lp.add_column("y", 0.0, kInfD, 2e-3);
  const int r0 = lp.add_row("r0", Sense::ge, 1e6);
  const int r1 = lp.add_row("r1", Sense::ge, 1e-4);
  lp.add_entry(r0, x, 1e4);
  lp.add_entry(r0, y, 1e6);
  lp.add_entry(r1, x, 1e-3);
  lp.add_entry(r1, y, 1e-5);
  SimplexOptions raw;
  raw.scale = false;
  const auto a = solve(lp);
  const auto b = solve(lp, raw);
  ASSERT_TRUE(a.optimal());
  ASSERT_TRUE(b.optimal());
  EXPECT_NEAR(a.objective, b.objective, 1e-9 * std::abs(b.objective));
  EXPECT_NEAR(a.dual[r0], b.dual[r0], 1e-9 * (1.0 + std::abs(b.dual[r0])));
  EXPECT_NEAR(a.dual[r1], b.dual[r1], 1e-9 * (1.0 + std::abs(b.dual[r1])));
}

TEST(Simplex, RefactorizationIntervalDoesNotChangeResult) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    // A transportation-like LP with enough pivots to cross many refactors.
    LinearProgram lp;
    const int S = 8, D = 10;
    std::uniform_real_distribution<double> u(1.0, 9.0);
    std::vector<std::vector<int>> col(S, std::vector<int>(D));
    for (int s = 0; s < S; ++s)
      for (int d = 0; d < D; ++d)
        col[s][d] = lp.add_column("f" + std::to_string(s) + "_" + std::to_string(d), 0.0, kInfD, u(rng));
    for (int s = 0; s < S; ++s) {
      const int r = lp.add_row("sup" + std::to_string(s), Sense::le, 50.0);
      for (int d = 0; d < D; ++d) lp.add_entry(r, col[s][d], 1.0);
    }
    for (int d = 0; d < D; ++d) {
      const int r = lp.add_row("dem" + std::to_string(d), Sense::ge, u(rng) * 4.0);
      for (int s = 0; s < S; ++s) lp.add_entry(r, col[s][d], 1.0);
    }
    SimplexOptions every;
    every.refactor_interval = 1;
    SimplexOptions rarely;
    rarely.refactor_interval = 1000;
    const auto a = solve(lp, every);
    const auto b = solve(lp, rarely);
    ASSERT_TRUE(a.optimal());
    ASSERT_TRUE(b.optimal());
    EXPECT_NEAR(a.objective, b.objective, 1e-9 * std::abs(a.objective));
  }
}

TEST(Simplex, RandomSmallLpsMatchVertexEnumeration) {
  std::mt19937_64 rng(20240611);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = fixtures::random_dense_lp(rng);
    const auto lp = fixtures::to_lp(d);
    const auto sol = solve(lp);
    const auto check = fixtures::check_against_oracle(d, sol);
    EXPECT_TRUE(check.ok) << "trial " << trial << ": " << check.detail;
    (sol.optimal() ? optimal : infeasible)++;
    if (sol.status == LpStatus::infeasible) {
      const auto [lo, hi] = certificate_range(lp, sol.ray);
      EXPECT_TRUE(lo > 1e-9 || hi < -1e-9) << "trial " << trial << " certificate " << lo << " " << hi;
    }
  }
  EXPECT_GT(optimal, 100);
  EXPECT_GT(infeasible, 5);
}

TEST(Simplex, RandomLpsWithoutPresolveOrScaling) {
  std::mt19937_64 rng(99);
  SimplexOptions opt;
  opt.presolve = false;
  opt.scale = false;
  for (int trial = 0; trial < 150; ++trial) {
    const auto d = fixtures::random_dense_lp(rng);
    const auto sol = solve(fixtures::to_lp(d), opt);
    const auto check = fixtures::check_against_oracle(d, sol);
    EXPECT_TRUE(check.ok) << "trial " << trial << ": " << check.detail;
  }
}

TEST(Simplex, ReportsResidualViolations) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = fixtures::random_dense_lp(rng);
    const auto sol = solve(fixtures::to_lp(d));
    if (!sol.optimal()) continue;
    EXPECT_LE(sol.max_primal_violation, 1e-9);
    EXPECT_LE(sol.max_dual_violation, 1e-9);
  }
}

TEST(VertexOracle, KnownTwoVariableOptimum) {
  oracle::DenseLp d;
  d.c = {-1.0, -1.0};
  d.a = {{1.0, 2.0}, {3.0, 1.0}};
  d.sense = {-1, -1};
  d.b = {4.0, 6.0};
  d.lo = {0.0, 0.0};
  d.hi = {10.0, 10.0};
  const auto r = oracle::vertex_enumeration(d);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.x[0], 1.6, 1e-12);
  EXPECT_NEAR(r.x[1], 1.2, 1e-12);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
}

TEST(Simplex, MediumRandomLpsCloseTheDualityGap) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coef(-9, 9), zero(0, 4), sense(-1, 1);
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    oracle::DenseLp d;
    const int n = 40, m = 30;
    for (int j = 0; j < n; ++j) {
      d.c.push_back(coef(rng));
      d.lo.push_back(0.0);
      d.hi.push_back(5.0 + zero(rng));
    }
    // Right-hand sides around a random box point keep every instance feasible.
    std::vector<double> x0(n);
    for (int j = 0; j < n; ++j) x0[j] = d.hi[j] * zero(rng) / 4.0;
    for (int i = 0; i < m; ++i) {
      std::vector<double> row(n);
      double act = 0.0;
      for (int j = 0; j < n; ++j) {
        row[j] = zero(rng) == 0 ? coef(rng) : 0.0;
        act += row[j] * x0[j];
      }
      d.a.push_back(row);
      const int s = sense(rng);
      d.sense.push_back(s);
      d.b.push_back(s < 0 ? act + zero(rng) : s > 0 ? act - zero(rng) : act);
    }
    const auto sol = solve(fixtures::to_lp(d));
    ASSERT_TRUE(sol.optimal()) << "trial " << trial;
    ++solved;
    const auto check = fixtures::check_against_oracle(d, sol, 1e-8, 1e-9, false);
    EXPECT_TRUE(check.ok) << "trial " << trial << ": " << check.detail;
    EXPECT_LE(sol.max_primal_violation, 1e-9);
  }
  EXPECT_EQ(solved, 40);
}
