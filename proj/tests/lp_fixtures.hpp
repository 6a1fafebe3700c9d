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

// Random small LPs and the checks run against the vertex oracle.

#ifndef PATHFORGE_TESTS_LP_FIXTURES_HPP_
#define PATHFORGE_TESTS_LP_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pathforge/lp.hpp"
#include "pathforge/simplex.hpp"

namespace fixtures {

inline oracle::DenseLp random_dense_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ncols(1, 6), nrows(0, 5), coef(-5, 5), sense(-1, 1), rhs(-10, 20);
  std::uniform_int_distribution<int> lo(-4, 0), width(1, 10), zero(0, 3);
  oracle::DenseLp lp;
  const int n = ncols(rng), m = nrows(rng);
  for (int j = 0; j < n; ++j) {
    lp.c.push_back(coef(rng));
    lp.lo.push_back(zero(rng) == 0 ? lo(rng) : 0.0);
    lp.hi.push_back(lp.lo.back() + width(rng));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(n);
    for (auto& v : row) v = zero(rng) == 0 ? 0.0 : coef(rng);
    lp.a.push_back(row);
    // Equalities are rarer so that most instances stay feasible.
    int s = sense(rng);
    if (s == 0 && zero(rng) != 0) s = -1;
    lp.sense.push_back(s);
    lp.b.push_back(rhs(rng));
  }
  return lp;
}

inline pathforge::LinearProgram to_lp(const oracle::DenseLp& d) {
  pathforge::LinearProgram lp;
  for (size_t j = 0; j < d.c.size(); ++j) lp.add_column("x" + std::to_string(j), d.lo[j], d.hi[j], d.c[j]);
  for (size_t i = 0; i < d.b.size(); ++i) {
    const auto s = d.sense[i] < 0 ? pathforge::Sense::le : d.sense[i] > 0 ? pathforge::Sense::ge
                                                                          : pathforge::Sense::eq;
    const int r = lp.add_row("r" + std::to_string(i), s, d.b[i]);
    for (size_t j = 0; j < d.c.size(); ++j) lp.add_entry(r, static_cast<int>(j), d.a[i][j]);
  }
  lp.finalize();
  return lp;
}

struct LpCheck {
  bool ok = true;
  std::string detail;
  double objective_error = 0.0;
  double duality_gap = 0.0;
  double worst_binding_le_dual = 0.0;  // most negative dual on a binding <= row
};

// Compares a solver result with the oracle and checks the duals: the
// Lagrangian dual bound built from the row duals and the implied reduced
// costs must close the gap, and row duals must carry the price signs.
inline LpCheck check_against_oracle(const oracle::DenseLp& d, const pathforge::LpSolution& sol,
                                    double obj_tol = 1e-8, double gap_tol = 1e-6,
                                    bool enumerate = true) {
  LpCheck out;
  std::ostringstream msg;
  oracle::VertexResult ref;
  if (enumerate) {
    ref = oracle::vertex_enumeration(d);
  } else {
    ref.feasible = sol.optimal();
    ref.objective = sol.objective;
  }
  if (!ref.feasible) {
    if (sol.status != pathforge::LpStatus::infeasible) {
      out.ok = false;
      msg << "oracle infeasible, solver " << pathforge::to_string(sol.status);
    }
    out.detail = msg.str();
    return out;
  }
  if (!sol.optimal()) {
    out.ok = false;
    msg << "oracle optimum " << ref.objective << ", solver " << pathforge::to_string(sol.status);
    out.detail = msg.str();
    return out;
  }
  out.objective_error = std::abs(sol.objective - ref.objective);
  if (out.objective_error > obj_tol * std::max(1.0, std::abs(ref.objective))) {
    out.ok = false;
    msg << "objective " << sol.objective << " vs oracle " << ref.objective << "; ";
  }
  const int n = static_cast<int>(d.c.size()), m = static_cast<int>(d.b.size());
  // lambda = d obj / d b = -dual
  double dual_obj = 0.0;
  std::vector<double> red(d.c.begin(), d.c.end());
  for (int i = 0; i < m; ++i) {
    const double lambda = -sol.dual[i];
    dual_obj += lambda * d.b[i];
    for (int j = 0; j < n; ++j) red[j] -= lambda * d.a[i][j];
    double act = 0.0;
    for (int j = 0; j < n; ++j) act += d.a[i][j] * sol.primal[j];
    const bool binding = std::abs(act - d.b[i]) <= 1e-7 * (1.0 + std::abs(d.b[i]));
    if (d.sense[i] < 0 && sol.dual[i] < -1e-9) {
      out.ok = false;
      msg << "row " << i << " (<=) dual " << sol.dual[i] << " < 0; ";
    }
    if (d.sense[i] > 0 && sol.dual[i] > 1e-9) {
      out.ok = false;
      msg << "row " << i << " (>=) dual " << sol.dual[i] << " > 0; ";
    }
    if (d.sense[i] < 0 && binding) out.worst_binding_le_dual = std::min(out.worst_binding_le_dual, sol.dual[i]);
  }
  for (int j = 0; j < n; ++j) dual_obj += red[j] > 0 ? red[j] * d.lo[j] : red[j] * d.hi[j];
  out.duality_gap = std::abs(sol.objective - dual_obj) / std::max(1.0, std::abs(sol.objective));
  if (out.duality_gap > gap_tol) {
    out.ok = false;
    msg << "duality gap " << out.duality_gap << "; ";
  }
  out.detail = msg.str();
  return out;
}

}  // namespace fixtures

#endif  // PATHFORGE_TESTS_LP_FIXTURES_HPP_
