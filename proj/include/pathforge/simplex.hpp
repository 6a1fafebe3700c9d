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

// Bounded primal revised simplex.
//
// Every row gets a logical variable r_i with A x - r = 0 and the row sense
// turned into bounds on r_i, so the problem is  min c'x  s.t.  [A -I] z = 0,
// l <= z <= u. Phase 1 minimizes the sum of bound violations of the basic
// variables (composite objective, no artificials); phase 2 the true cost.
// The basis is factorized with a sparse LU and updated in product form
// between refactorizations.

#ifndef PATHFORGE_SIMPLEX_HPP_
#define PATHFORGE_SIMPLEX_HPP_

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pathforge/lp.hpp"

namespace pathforge {

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-7;
  int refactor_interval = 64;
  int stall_threshold = 50;  // degenerate pivots before Bland's rule
  long max_iterations = 2000000;
  bool presolve = true;
  bool scale = true;
  // Relative bound shift used against degenerate stalling; 0 disables.
  double perturbation = 1e-6;
};

namespace internal {

inline constexpr double kSxInf = std::numeric_limits<double>::infinity();

inline double pow2_round(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  return std::exp2(std::round(std::log2(v)));
}

// Problem after presolve and scaling: n structurals, m rows.
struct ReducedLp {
  int n = 0, m = 0;
  std::vector<int> start, index;
  std::vector<double> value;
  std::vector<double> cost, lower, upper;      // structurals
  std::vector<double> row_lo, row_hi;          // logicals
  std::vector<double> col_scale, row_scale;
  double cost_scale = 1.0;
};

enum class VarState : char { basic, at_lower, at_upper, free_zero };

class BoundedSimplex {
 public:
  BoundedSimplex(const ReducedLp& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), n_(lp.n), m_(lp.m), N_(lp.n + lp.m) {
    lo_.resize(N_);
    hi_.resize(N_);
    cost_.assign(N_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower[j];
      hi_[j] = lp.upper[j];
      cost_[j] = lp.cost[j];
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = lp.row_lo[i];
      hi_[n_ + i] = lp.row_hi[i];
    }
    x_.assign(N_, 0.0);
    state_.assign(N_, VarState::at_lower);
    pos_.assign(N_, -1);
    head_.resize(m_);
    for (int j = 0; j < n_; ++j) place_nonbasic(j);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      pos_[n_ + i] = i;
      state_[n_ + i] = VarState::basic;
    }
  }

  enum class Outcome { optimal, infeasible, unbounded, failure };

  Outcome run() {
    if (m_ == 0) return solve_without_rows();
    if (opt_.perturbation <= 0.0) return run_core();
    perturb_bounds();
    const Outcome first = run_core();
    if (first == Outcome::failure) return first;
    restore_bounds();
    return run_core();
  }

  Outcome run_core() {
    stuck_ = 0;
    degenerate_ = 0;
    bland_ = false;
    pivot_tol_ = opt_.pivot_tol;
    if (!refactor()) return fail("singular initial basis");
    int verify_rounds = 0;
    while (iterations_ < opt_.max_iterations) {
      if (etas_.size() >= static_cast<size_t>(opt_.refactor_interval)) {
        if (!refactor() && !recover()) return fail("basis factorization failed");
      }
      const bool phase1 = set_phase_costs();
      btran_costs();
      int q = -1;
      double dq = 0.0;
      price(phase1, q, dq);
      if (q < 0) {
        // Confirm on a fresh factorization before declaring the outcome.
        if (!etas_.empty() || verify_rounds == 0) {
          ++verify_rounds;
          if (verify_rounds > 4) return fail("could not confirm termination");
          if (!refactor() && !recover()) return fail("basis factorization failed");
          const bool p1 = set_phase_costs();
          btran_costs();
          int q2 = -1;
          double d2 = 0.0;
          price(p1, q2, d2);
          if (q2 >= 0) continue;
          if (p1 != phase1) continue;
        }
        if (phase1) {
          farkas_.assign(y_.data(), y_.data() + y_.size());
          return Outcome::infeasible;
        }
        return Outcome::optimal;
      }
      verify_rounds = 0;
      const double dir = dq < 0.0 ? 1.0 : -1.0;
      alpha_ = column_dense(q);
      ftran(alpha_);
      int r = -1;
      double theta = 0.0;
      bool flip = false;
      ratio_test(phase1, q, dir, r, theta, flip);
      if (r < 0 && !flip) {
        if (phase1) {
          if (!refactor() && !recover()) return fail("basis factorization failed");
          if (++stuck_ > 3) return fail("phase 1 ratio test found no pivot");
          continue;
        }
        ray_.assign(N_, 0.0);
        ray_[q] = dir;
        for (int i = 0; i < m_; ++i) ray_[head_[i]] = -dir * alpha_[i];
        return Outcome::unbounded;
      }
      stuck_ = 0;
      ++iterations_;
      // Bound the leaving variable reaches, decided before the update.
      bool leave_upper = false;
      if (!flip) {
        const int p = head_[r];
        const double rate = -dir * alpha_[r];
        const double tol = opt_.feasibility_tol;
        leave_upper = rate < 0.0 ? (phase1 && x_[p] > hi_[p] + tol)
                                 : !(phase1 && x_[p] < lo_[p] - tol);
      }
      x_[q] += dir * theta;
      if (theta != 0.0)
        for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * theta * alpha_[i];
      if (flip) {
        state_[q] = dir > 0 ? VarState::at_upper : VarState::at_lower;
        x_[q] = dir > 0 ? hi_[q] : lo_[q];
      } else {
        const int p = head_[r];
        x_[p] = leave_upper ? hi_[p] : lo_[p];
        state_[p] = leave_upper ? VarState::at_upper : VarState::at_lower;
        if (!std::isfinite(x_[p])) return fail("leaving variable has no bound");
        if (lo_[p] == hi_[p]) state_[p] = VarState::at_lower;
        pos_[p] = -1;
        head_[r] = q;
        pos_[q] = r;
        state_[q] = VarState::basic;
        push_eta(r);
      }
      if (theta <= opt_.feasibility_tol || theta * std::abs(dq) <= 1e-12) {
        if (++degenerate_ >= opt_.stall_threshold) bland_ = true;
      } else {
        degenerate_ = 0;
        bland_ = false;
      }
    }
    return fail("iteration limit reached");
  }

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& farkas() const { return farkas_; }
  const std::vector<double>& ray() const { return ray_; }
  const std::vector<VarState>& state() const { return state_; }
  long iterations() const { return iterations_; }
  const std::string& message() const { return message_; }

  // Duals of the true (phase 2) objective on the final basis.
  void compute_final_duals() {
    for (int i = 0; i < m_; ++i) cb_[i] = cost_[head_[i]];
    y_ = cb_;
    btran(y_);
  }

 private:
  Outcome fail(std::string msg) {
    message_ = std::move(msg);
    return Outcome::failure;
  }

  Outcome solve_without_rows() {
    for (int j = 0; j < n_; ++j) {
      const double c = cost_[j];
      if (c > 0.0 && lo_[j] == -kSxInf) return unbounded_single(j, -1.0);
      if (c < 0.0 && hi_[j] == kSxInf) return unbounded_single(j, 1.0);
      place_nonbasic(j);
      if (c < 0.0) x_[j] = hi_[j], state_[j] = VarState::at_upper;
    }
    y_.resize(0);
    return Outcome::optimal;
  }

  void perturb_bounds() {
    lo0_ = lo_;
    hi0_ = hi_;
    std::mt19937_64 rng(0x5eed);
    auto u = [&] { return 0.5 + 0.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int j = 0; j < N_; ++j) {
      if (lo_[j] > -kSxInf) lo_[j] -= opt_.perturbation * (1.0 + std::abs(lo_[j])) * u();
      if (hi_[j] < kSxInf) hi_[j] += opt_.perturbation * (1.0 + std::abs(hi_[j])) * u();
      if (state_[j] != VarState::basic) place_nonbasic(j);
    }
  }

  void restore_bounds() {
    lo_ = lo0_;
    hi_ = hi0_;
    for (int j = 0; j < N_; ++j) {
      if (state_[j] == VarState::at_upper && hi_[j] < kSxInf) x_[j] = hi_[j];
      else if (state_[j] == VarState::at_lower && lo_[j] > -kSxInf) x_[j] = lo_[j];
      else if (state_[j] != VarState::basic) place_nonbasic(j);
    }
    good_head_.clear();
  }

  Outcome unbounded_single(int j, double dir) {
    ray_.assign(N_, 0.0);
    ray_[j] = dir;
    return Outcome::unbounded;
  }

  void place_nonbasic(int j) {
    if (lo_[j] > -kSxInf) {
      x_[j] = lo_[j];
      state_[j] = VarState::at_lower;
    } else if (hi_[j] < kSxInf) {
      x_[j] = hi_[j];
      state_[j] = VarState::at_upper;
    } else {
      x_[j] = 0.0;
      state_[j] = VarState::free_zero;
    }
  }

  Eigen::VectorXd column_dense(int j) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m_);
    if (j < n_) {
      for (int k = lp_.start[j]; k < lp_.start[j + 1]; ++k) v[lp_.index[k]] = lp_.value[k];
    } else {
      v[j - n_] = -1.0;
    }
    return v;
  }

  bool refactor() {
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m_; ++i) {
      const int j = head_[i];
      if (j < n_) {
        for (int k = lp_.start[j]; k < lp_.start[j + 1]; ++k)
          trip.emplace_back(lp_.index[k], i, lp_.value[k]);
      } else {
        trip.emplace_back(j - n_, i, -1.0);
      }
    }
    Eigen::SparseMatrix<double> B(m_, m_);
    B.setFromTriplets(trip.begin(), trip.end());
    B.makeCompressed();
    lu_.analyzePattern(B);
    lu_.factorize(B);
    etas_.clear();
    if (lu_.info() != Eigen::Success) return false;
    recompute_basic_values();
    good_head_ = head_;
    good_state_ = state_;
    good_x_ = x_;
    return true;
  }

  // Falls back to the last factorized basis with a stricter pivot rule.
  bool recover() {
    if (good_head_.empty() || pivot_tol_ >= 1e-3) return false;
    head_ = good_head_;
    state_ = good_state_;
    x_ = good_x_;
    std::fill(pos_.begin(), pos_.end(), -1);
    for (int i = 0; i < m_; ++i) pos_[head_[i]] = i;
    pivot_tol_ *= 100.0;
    return refactor();
  }

  void recompute_basic_values() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < N_; ++j) {
      if (state_[j] == VarState::basic || x_[j] == 0.0) continue;
      if (j < n_) {
        for (int k = lp_.start[j]; k < lp_.start[j + 1]; ++k)
          rhs[lp_.index[k]] -= lp_.value[k] * x_[j];
      } else {
        rhs[j - n_] += x_[j];
      }
    }
    ftran(rhs);
    for (int i = 0; i < m_; ++i) x_[head_[i]] = rhs[i];
  }

  void ftran(Eigen::VectorXd& v) const {
    v = lu_.solve(v).eval();
    for (const auto& e : etas_) {
      const double vr = v[e.r] / e.pivot;
      if (vr != 0.0)
        for (const auto& [i, a] : e.entries) v[i] -= a * vr;
      v[e.r] = vr;
    }
  }

  void btran(Eigen::VectorXd& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->r];
      for (const auto& [i, a] : it->entries) s -= v[i] * a;
      v[it->r] = s / it->pivot;
    }
    v = lu_.transpose().solve(v).eval();
  }

  void push_eta(int r) {
    Eta e;
    e.r = r;
    e.pivot = alpha_[r];
    for (int i = 0; i < m_; ++i)
      if (i != r && alpha_[i] != 0.0) e.entries.emplace_back(i, alpha_[i]);
    etas_.push_back(std::move(e));
  }

  // Sets the basic cost vector; returns true while some basic variable
  // violates its bounds.
  bool set_phase_costs() {
    cb_.resize(m_);
    bool infeasible = false;
    for (int i = 0; i < m_; ++i) {
      const int j = head_[i];
      const double tol = opt_.feasibility_tol;
      if (x_[j] < lo_[j] - tol) {
        cb_[i] = -1.0;
        infeasible = true;
      } else if (x_[j] > hi_[j] + tol) {
        cb_[i] = 1.0;
        infeasible = true;
      } else {
        cb_[i] = 0.0;
      }
    }
    if (!infeasible)
      for (int i = 0; i < m_; ++i) cb_[i] = cost_[head_[i]];
    return infeasible;
  }

  void btran_costs() {
    y_ = cb_;
    btran(y_);
  }

  double reduced_cost(int j, bool phase1) const {
    double d = phase1 ? 0.0 : cost_[j];
    if (j < n_) {
      for (int k = lp_.start[j]; k < lp_.start[j + 1]; ++k) d -= y_[lp_.index[k]] * lp_.value[k];
    } else {
      d += y_[j - n_];
    }
    return d;
  }

  void price(bool phase1, int& q, double& dq) const {
    const double tol = opt_.optimality_tol;
    double best = 0.0;
    for (int j = 0; j < N_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::basic) continue;
      if (lo_[j] == hi_[j]) continue;
      const double d = reduced_cost(j, phase1);
      double score = 0.0;
      if (s == VarState::at_lower && d < -tol) score = -d;
      else if (s == VarState::at_upper && d > tol) score = d;
      else if (s == VarState::free_zero && std::abs(d) > tol) score = std::abs(d);
      if (score <= 0.0) continue;
      if (bland_) {
        q = j;
        dq = d;
        return;
      }
      if (score > best) {
        best = score;
        q = j;
        dq = d;
      }
    }
  }

  // Distance a basic variable may travel at `rate` (<0 falling, >0
  // rising) before it blocks; infinity when it never blocks.
  double block_distance(int j, double rate, bool phase1) const {
    const double v = x_[j];
    const double tol = opt_.feasibility_tol;
    if (rate < 0.0) {
      if (phase1 && v > hi_[j] + tol) return v - hi_[j];
      if (phase1 && v < lo_[j] - tol) return kSxInf;
      return lo_[j] == -kSxInf ? kSxInf : v - lo_[j];
    }
    if (phase1 && v < lo_[j] - tol) return lo_[j] - v;
    if (phase1 && v > hi_[j] + tol) return kSxInf;
    return hi_[j] == kSxInf ? kSxInf : hi_[j] - v;
  }

  void ratio_test(bool phase1, int q, double dir, int& r, double& theta,
                  bool& flip) const {
    const double tol = opt_.feasibility_tol;
    const double range = hi_[q] - lo_[q];
    const double thr = std::max(pivot_tol_ * alpha_.cwiseAbs().maxCoeff(), 1e-11);
    r = -1;
    flip = false;
    if (bland_) {
      double best = kSxInf;
      for (int i = 0; i < m_; ++i) {
        const double a = alpha_[i];
        if (std::abs(a) < thr) continue;
        const double rate = -dir * a;
        const double dist = block_distance(head_[i], rate, phase1);
        if (dist == kSxInf) continue;
        const double ratio = std::max(dist, 0.0) / std::abs(rate);
        if (ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && r >= 0 && head_[i] < head_[r])) {
          if (ratio < best) best = ratio;
          r = i;
        }
      }
      theta = best;
    } else {
      // Harris two-pass ratio test.
      double bound = kSxInf;
      for (int i = 0; i < m_; ++i) {
        const double a = alpha_[i];
        if (std::abs(a) < thr) continue;
        const double rate = -dir * a;
        const double dist = block_distance(head_[i], rate, phase1);
        if (dist == kSxInf) continue;
        bound = std::min(bound, (std::max(dist, 0.0) + tol) / std::abs(rate));
      }
      double best_pivot = 0.0;
      theta = kSxInf;
      if (bound < kSxInf) {
        for (int i = 0; i < m_; ++i) {
          const double a = alpha_[i];
          if (std::abs(a) < thr) continue;
          const double rate = -dir * a;
          const double dist = block_distance(head_[i], rate, phase1);
          if (dist == kSxInf) continue;
          const double ratio = std::max(dist, 0.0) / std::abs(rate);
          if (ratio <= bound && std::abs(a) > best_pivot) {
            best_pivot = std::abs(a);
            r = i;
            theta = ratio;
          }
        }
      }
    }
    if (range < kSxInf && (r < 0 || range <= theta)) {
      flip = true;
      r = -1;
      theta = range;
    }
  }

  struct Eta {
    int r = 0;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> entries;
  };

  const ReducedLp& lp_;
  SimplexOptions opt_;
  int n_, m_, N_;
  std::vector<double> lo_, hi_, cost_, x_;
  std::vector<VarState> state_;
  std::vector<int> pos_, head_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  Eigen::VectorXd cb_, y_, alpha_;
  std::vector<int> good_head_;
  std::vector<VarState> good_state_;
  std::vector<double> good_x_;
  double pivot_tol_ = 1e-7;
  std::vector<double> lo0_, hi0_;
  std::vector<double> farkas_, ray_;
  long iterations_ = 0;
  int degenerate_ = 0;
  int stuck_ = 0;
  bool bland_ = false;
  std::string message_;

 public:
  std::vector<double> y_vector() const {
    return std::vector<double>(y_.data(), y_.data() + y_.size());
  }
};

}  // namespace internal

// Solves the LP. Never throws on numerical trouble: the status says
// solver_failure and `message` explains.
inline LpSolution solve(LinearProgram lp, const SimplexOptions& opt = {}) {
  using internal::kSxInf;
  lp.finalize();
  LpSolution sol;
  const int n0 = lp.num_cols(), m0 = lp.num_rows();
  if (auto problems = lp.check(); !problems.empty()) {
    sol.status = LpStatus::solver_failure;
    sol.message = "invalid LP: " + problems.front();
    return sol;
  }
  const auto& start = lp.col_start();
  const auto& index = lp.row_index();
  const auto& value = lp.values();

  std::vector<double> row_lo(m0), row_hi(m0);
  for (int i = 0; i < m0; ++i) {
    const auto& r = lp.row(i);
    row_lo[i] = r.sense == Sense::le ? -kSxInf : r.rhs;
    row_hi[i] = r.sense == Sense::ge ? kSxInf : r.rhs;
  }

  // Presolve: fixed columns, then empty rows and empty columns.
  std::vector<double> x(n0, 0.0);
  std::vector<char> col_keep(n0, 1), row_keep(m0, 1);
  std::vector<int> row_count(m0, 0);
  int unbounded_col = -1;
  double unbounded_dir = 0.0;
  for (int j = 0; j < n0; ++j) {
    const auto& c = lp.column(j);
    if (opt.presolve && c.lower == c.upper) {
      col_keep[j] = 0;
      x[j] = c.lower;
      for (int k = start[j]; k < start[j + 1]; ++k) {
        row_lo[index[k]] -= value[k] * c.lower;
        row_hi[index[k]] -= value[k] * c.lower;
      }
      continue;
    }
    for (int k = start[j]; k < start[j + 1]; ++k) ++row_count[index[k]];
  }
  for (int j = 0; j < n0; ++j) {
    if (!col_keep[j] || !opt.presolve || start[j] != start[j + 1]) continue;
    const auto& c = lp.column(j);
    col_keep[j] = 0;
    if (c.cost > 0.0) {
      x[j] = c.lower;
      if (c.lower == -kSxInf) unbounded_col = j, unbounded_dir = -1.0;
    } else if (c.cost < 0.0) {
      x[j] = c.upper;
      if (c.upper == kSxInf) unbounded_col = j, unbounded_dir = 1.0;
    } else {
      x[j] = std::clamp(0.0, c.lower, c.upper);
    }
    if (!std::isfinite(x[j])) x[j] = 0.0;
  }
  for (int i = 0; i < m0; ++i) {
    if (!opt.presolve || row_count[i] > 0) continue;
    row_keep[i] = 0;
    const double tol = opt.feasibility_tol * (1.0 + std::abs(lp.row(i).rhs));
    if (row_lo[i] > tol || row_hi[i] < -tol) {
      sol.status = LpStatus::infeasible;
      sol.ray.assign(m0, 0.0);
      sol.ray[i] = row_lo[i] > tol ? 1.0 : -1.0;
      sol.message = "row '" + lp.row(i).name + "' has no entries but nonzero rhs";
      sol.primal = x;
      return sol;
    }
  }

  internal::ReducedLp red;
  std::vector<int> col_map, row_map, row_new(m0, -1);
  for (int i = 0; i < m0; ++i)
    if (row_keep[i]) row_new[i] = static_cast<int>(row_map.size()), row_map.push_back(i);
  for (int j = 0; j < n0; ++j)
    if (col_keep[j]) col_map.push_back(j);
  red.n = static_cast<int>(col_map.size());
  red.m = static_cast<int>(row_map.size());
  red.start.push_back(0);
  for (int j : col_map) {
    for (int k = start[j]; k < start[j + 1]; ++k) {
      if (row_new[index[k]] < 0) continue;
      red.index.push_back(row_new[index[k]]);
      red.value.push_back(value[k]);
    }
    red.start.push_back(static_cast<int>(red.index.size()));
    red.cost.push_back(lp.column(j).cost);
    red.lower.push_back(lp.column(j).lower);
    red.upper.push_back(lp.column(j).upper);
  }
  for (int i : row_map) {
    red.row_lo.push_back(row_lo[i]);
    red.row_hi.push_back(row_hi[i]);
  }

  // Geometric scaling with power-of-two factors.
  red.col_scale.assign(red.n, 1.0);
  red.row_scale.assign(red.m, 1.0);
  if (opt.scale && red.m > 0) {
    for (int pass = 0; pass < 6; ++pass) {
      std::vector<double> rmin(red.m, kSxInf), rmax(red.m, 0.0);
      for (int j = 0; j < red.n; ++j)
        for (int k = red.start[j]; k < red.start[j + 1]; ++k) {
          const double a = std::abs(red.value[k]) * red.row_scale[red.index[k]] * red.col_scale[j];
          rmin[red.index[k]] = std::min(rmin[red.index[k]], a);
          rmax[red.index[k]] = std::max(rmax[red.index[k]], a);
        }
      for (int i = 0; i < red.m; ++i)
        if (rmax[i] > 0.0) red.row_scale[i] /= internal::pow2_round(std::sqrt(rmin[i] * rmax[i]));
      for (int j = 0; j < red.n; ++j) {
        double cmin = kSxInf, cmax = 0.0;
        for (int k = red.start[j]; k < red.start[j + 1]; ++k) {
          const double a = std::abs(red.value[k]) * red.row_scale[red.index[k]] * red.col_scale[j];
          cmin = std::min(cmin, a);
          cmax = std::max(cmax, a);
        }
        if (cmax > 0.0) red.col_scale[j] /= internal::pow2_round(std::sqrt(cmin * cmax));
      }
    }
    for (int j = 0; j < red.n; ++j) {
      for (int k = red.start[j]; k < red.start[j + 1]; ++k)
        red.value[k] *= red.row_scale[red.index[k]] * red.col_scale[j];
      red.cost[j] *= red.col_scale[j];
      red.lower[j] /= red.col_scale[j];
      red.upper[j] /= red.col_scale[j];
    }
    for (int i = 0; i < red.m; ++i) {
      red.row_lo[i] *= red.row_scale[i];
      red.row_hi[i] *= red.row_scale[i];
    }
    double cmax = 0.0;
    for (double c : red.cost) cmax = std::max(cmax, std::abs(c));
    red.cost_scale = cmax > 0.0 ? 1.0 / internal::pow2_round(cmax) : 1.0;
    for (double& c : red.cost) c *= red.cost_scale;
  }

  internal::BoundedSimplex sx(red, opt);
  const auto outcome = sx.run();
  sol.iterations = sx.iterations();
  sol.message = sx.message();

  std::vector<double> y(m0, 0.0);  // d(obj)/d(row activity bound)
  if (outcome == internal::BoundedSimplex::Outcome::infeasible) {
    sol.status = LpStatus::infeasible;
    sol.ray.assign(m0, 0.0);
    const auto& f = sx.farkas();
    for (int r = 0; r < red.m; ++r) sol.ray[row_map[r]] = f[r] * red.row_scale[r];
    sol.message = "phase 1 ended with positive infeasibility";
    for (int k = 0; k < red.n; ++k) x[col_map[k]] = sx.x()[k] * red.col_scale[k];
    sol.primal = x;
    return sol;
  }
  if (outcome == internal::BoundedSimplex::Outcome::failure) {
    sol.status = LpStatus::solver_failure;
    for (int k = 0; k < red.n; ++k) x[col_map[k]] = sx.x()[k] * red.col_scale[k];
    sol.primal = x;
    return sol;
  }
  if (outcome == internal::BoundedSimplex::Outcome::unbounded || unbounded_col >= 0) {
    sol.status = LpStatus::unbounded;
    sol.ray.assign(n0, 0.0);
    if (outcome == internal::BoundedSimplex::Outcome::unbounded) {
      const auto& r = sx.ray();
      for (int k = 0; k < red.n; ++k) sol.ray[col_map[k]] = r[k] * red.col_scale[k];
    } else {
      sol.ray[unbounded_col] = unbounded_dir;
    }
    sol.message = "objective unbounded below";
    return sol;
  }

  for (int k = 0; k < red.n; ++k) x[col_map[k]] = sx.x()[k] * red.col_scale[k];
  if (red.m > 0) {
    sx.compute_final_duals();
    const auto yv = sx.y_vector();
    for (int r = 0; r < red.m; ++r) y[row_map[r]] = yv[r] * red.row_scale[r] / red.cost_scale;
  }
  sol.status = LpStatus::optimal;
  sol.primal = x;
  sol.dual.resize(m0);
  for (int i = 0; i < m0; ++i) sol.dual[i] = y[i] == 0.0 ? 0.0 : -y[i];
  sol.reduced_costs.resize(n0);
  for (int j = 0; j < n0; ++j) {
    double d = lp.column(j).cost;
    for (int k = start[j]; k < start[j + 1]; ++k) d -= y[index[k]] * value[k];
    sol.reduced_costs[j] = d;
  }
  sol.objective = lp.objective_value(x);

  // Residual checks in the original space.
  const auto act = lp.activities(x);
  double pviol = 0.0;
  for (int i = 0; i < m0; ++i) {
    const auto& r = lp.row(i);
    double v = 0.0;
    if (r.sense != Sense::ge) v = std::max(v, act[i] - r.rhs);
    if (r.sense != Sense::le) v = std::max(v, r.rhs - act[i]);
    pviol = std::max(pviol, v / (1.0 + std::abs(r.rhs)));
  }
  for (int j = 0; j < n0; ++j) {
    const auto& c = lp.column(j);
    pviol = std::max(pviol, (c.lower - x[j]) / (1.0 + std::abs(c.lower)));
    pviol = std::max(pviol, (x[j] - c.upper) / (1.0 + std::abs(c.upper)));
  }
  sol.max_primal_violation = pviol;
  double cmax = 1.0;
  for (const auto& c : lp.columns()) cmax = std::max(cmax, std::abs(c.cost));
  double dviol = 0.0;
  for (int j = 0; j < n0; ++j) {
    const auto& c = lp.column(j);
    const double d = sol.reduced_costs[j];
    const double span = std::max(1.0, std::abs(x[j]));
    const bool at_lo = c.lower > -kSxInf && x[j] <= c.lower + 1e-9 * span;
    const bool at_hi = c.upper < kSxInf && x[j] >= c.upper - 1e-9 * span;
    if (at_lo && at_hi) continue;
    if (at_lo) dviol = std::max(dviol, -d);
    else if (at_hi) dviol = std::max(dviol, d);
    else dviol = std::max(dviol, std::abs(d));
  }
  sol.max_dual_violation = dviol / cmax;
  if (pviol > 1e-6) {
    sol.status = LpStatus::solver_failure;
    sol.message = "primal residual " + std::to_string(pviol) + " exceeds tolerance";
  }
  return sol;
}

}  // namespace pathforge

#endif  // PATHFORGE_SIMPLEX_HPP_
