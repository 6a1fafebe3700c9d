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

// Sparse linear program with named rows and columns, and its solution.

#ifndef PATHFORGE_LP_HPP_
#define PATHFORGE_LP_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pathforge/errors.hpp"

namespace pathforge {

enum class Sense { le, eq, ge };

inline std::string_view to_string(Sense s) {
  switch (s) {
    case Sense::le: return "<=";
    case Sense::eq: return "=";
    case Sense::ge: return ">=";
  }
  return "?";
}

struct LpColumn {
  std::string name;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double cost = 0.0;
  std::string tag;
};

struct LpRow {
  std::string name;
  Sense sense = Sense::eq;
  double rhs = 0.0;
  std::string tag;
};

// Minimization problem  min c'x + offset  s.t.  rows, lower <= x <= upper.
// Coefficients are collected as triplets and compressed by finalize().
class LinearProgram {
 public:
  int add_column(std::string name, double lower, double upper, double cost,
                 std::string tag = {}) {
    const int j = static_cast<int>(cols_.size());
    if (!col_index_.emplace(name, j).second)
      throw InvalidArgument("duplicate column name '" + name + "'");
    cols_.push_back({std::move(name), lower, upper, cost, std::move(tag)});
    finalized_ = false;
    return j;
  }

  int add_row(std::string name, Sense sense, double rhs, std::string tag = {}) {
    const int i = static_cast<int>(rows_.size());
    if (!row_index_.emplace(name, i).second)
      throw InvalidArgument("duplicate row name '" + name + "'");
    rows_.push_back({std::move(name), sense, rhs, std::move(tag)});
    finalized_ = false;
    return i;
  }

  void add_entry(int row, int col, double value) {
    if (row < 0 || row >= num_rows() || col < 0 || col >= num_cols())
      throw InvalidArgument("entry references missing row or column");
    if (value == 0.0) return;
    triplets_.emplace_back(col, row, value);
    finalized_ = false;
  }

  void set_cost(int col, double cost) { cols_.at(col).cost = cost; }
  void add_cost(int col, double cost) { cols_.at(col).cost += cost; }
  void set_rhs(int row, double rhs) { rows_.at(row).rhs = rhs; }
  void set_bounds(int col, double lower, double upper) {
    cols_.at(col).lower = lower;
    cols_.at(col).upper = upper;
  }

  double objective_offset = 0.0;

  // Sorts entries column-major and merges duplicates.
  void finalize() {
    if (finalized_) return;
    std::sort(triplets_.begin(), triplets_.end());
    start_.assign(cols_.size() + 1, 0);
    index_.clear();
    value_.clear();
    size_t k = 0;
    std::vector<std::tuple<int, int, double>> merged;
    while (k < triplets_.size()) {
      auto [c, r, v] = triplets_[k];
      double sum = v;
      size_t e = k + 1;
      while (e < triplets_.size() && std::get<0>(triplets_[e]) == c &&
             std::get<1>(triplets_[e]) == r)
        sum += std::get<2>(triplets_[e++]);
      if (sum != 0.0) merged.emplace_back(c, r, sum);
      k = e;
    }
    triplets_ = merged;
    for (const auto& [c, r, v] : triplets_) {
      ++start_[c + 1];
      index_.push_back(r);
      value_.push_back(v);
    }
    for (size_t j = 0; j < cols_.size(); ++j) start_[j + 1] += start_[j];
    finalized_ = true;
  }

  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return static_cast<int>(cols_.size()); }
  size_t num_nonzeros() const { return triplets_.size(); }

  const LpColumn& column(int j) const { return cols_.at(j); }
  const LpRow& row(int i) const { return rows_.at(i); }
  const std::vector<LpColumn>& columns() const { return cols_; }
  const std::vector<LpRow>& rows() const { return rows_; }

  // Compressed column storage; valid after finalize().
  const std::vector<int>& col_start() const { check_final(); return start_; }
  const std::vector<int>& row_index() const { check_final(); return index_; }
  const std::vector<double>& values() const { check_final(); return value_; }

  int find_column(std::string_view name) const {
    auto it = col_index_.find(std::string(name));
    return it == col_index_.end() ? -1 : it->second;
  }
  int find_row(std::string_view name) const {
    auto it = row_index_.find(std::string(name));
    return it == row_index_.end() ? -1 : it->second;
  }

  // Row activities a_i x for a primal point.
  std::vector<double> activities(const std::vector<double>& x) const {
    check_final();
    std::vector<double> act(rows_.size(), 0.0);
    for (int j = 0; j < num_cols(); ++j)
      for (int k = start_[j]; k < start_[j + 1]; ++k)
        act[index_[k]] += value_[k] * x[j];
    return act;
  }

  double objective_value(const std::vector<double>& x) const {
    double obj = objective_offset;
    for (int j = 0; j < num_cols(); ++j) obj += cols_[j].cost * x[j];
    return obj;
  }

  // Structural problems: non-finite data, crossed bounds.
  std::vector<std::string> check() const {
    std::vector<std::string> out;
    for (const auto& c : cols_) {
      if (!std::isfinite(c.cost)) out.push_back("non-finite cost on " + c.name);
      if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper ||
          c.lower == std::numeric_limits<double>::infinity() ||
          c.upper == -std::numeric_limits<double>::infinity())
        out.push_back("invalid bounds on " + c.name);
    }
    for (const auto& r : rows_)
      if (!std::isfinite(r.rhs)) out.push_back("non-finite rhs on " + r.name);
    for (const auto& t : triplets_)
      if (!std::isfinite(std::get<2>(t)))
        out.push_back("non-finite coefficient in column " +
                      cols_[std::get<0>(t)].name);
    if (!std::isfinite(objective_offset)) out.push_back("non-finite offset");
    return out;
  }

 private:
  void check_final() const {
    if (!finalized_) throw InvalidArgument("linear program not finalized");
  }

  std::vector<LpColumn> cols_;
  std::vector<LpRow> rows_;
  std::vector<std::tuple<int, int, double>> triplets_;
  std::unordered_map<std::string, int> col_index_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<int> start_, index_;
  std::vector<double> value_;
  bool finalized_ = false;
};

enum class LpStatus { optimal, infeasible, unbounded, solver_failure };

inline std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::solver_failure: return "solver_failure";
  }
  return "?";
}

// Row duals follow the price convention dual_i = -d(objective)/d(rhs_i):
// a binding <= row of a minimization has a nonnegative dual. Reduced costs
// are d(objective)/d(x_j).
struct LpSolution {
  LpStatus status = LpStatus::solver_failure;
  std::vector<double> primal;
  std::vector<double> dual;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  // Farkas multipliers (infeasible) or improving direction (unbounded).
  std::vector<double> ray;
  long iterations = 0;
  double max_primal_violation = 0.0;
  double max_dual_violation = 0.0;
  std::string message;

  bool optimal() const { return status == LpStatus::optimal; }
};

inline double shadow_price(const LinearProgram& lp, const LpSolution& sol,
                           std::string_view row) {
  const int i = lp.find_row(row);
  if (i < 0) throw InvalidArgument("unknown row '" + std::string(row) + "'");
  if (!sol.optimal()) throw InvalidArgument("shadow price of non-optimal solution");
  return sol.dual.at(i);
}

}  // namespace pathforge

#endif  // PATHFORGE_LP_HPP_
