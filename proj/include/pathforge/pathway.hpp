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

// Rolling-horizon transition pathway.

#ifndef PATHFORGE_PATHWAY_HPP_
#define PATHFORGE_PATHWAY_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathforge/accounting.hpp"
#include "pathforge/lp_build.hpp"
#include "pathforge/model.hpp"
#include "pathforge/simplex.hpp"
#include "pathforge/timeagg.hpp"

namespace pathforge {

struct YearResult {
  int year = 0;
  std::vector<int> window;
  std::map<std::string, double> new_capacity;        // unit/h
  std::map<std::string, double> installed_capacity;  // after commits
  std::map<std::string, std::vector<double>> operation;  // per typical step
  std::map<std::string, std::vector<double>> charge, discharge;
  std::map<std::string, std::vector<double>> vent;   // point-source product
  std::map<std::string, double> sector_emissions_mt;
  double accounted_emissions_mt = 0.0;  // net, including use phase
  double residual_mt = 0.0;
  std::optional<double> cap_mt;
  double co2_price = 0.0;  // k€/t
  double total_cost = 0.0;  // k€ per year, annualized
  double window_objective = 0.0;
  long iterations = 0;
  std::map<std::string, std::map<std::string, double>> production_mix;
  std::vector<Vintage> stock;  // after commits
  std::vector<Vintage> retired;
};

struct PathwayResult {
  std::string dataset;
  std::string scenario;
  TypicalPeriodSet tps;
  std::vector<YearResult> years;

  const YearResult& year(int y) const {
    for (const auto& r : years)
      if (r.year == y) return r;
    throw InvalidArgument("year " + std::to_string(y) + " not in result");
  }
};

// A window LP without a feasible point, even with residual slack.
class InfeasibleWindow : public std::runtime_error {
 public:
  InfeasibleWindow(std::vector<int> window, std::vector<std::pair<std::string, double>> cert,
                   const std::string& msg)
      : std::runtime_error(msg), window_(std::move(window)), certificate_(std::move(cert)) {}
  const std::vector<int>& window() const { return window_; }
  // Nonzero Farkas multipliers by row name.
  const std::vector<std::pair<std::string, double>>& certificate() const {
    return certificate_;
  }

 private:
  std::vector<int> window_;
  std::vector<std::pair<std::string, double>> certificate_;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathwayOptions {
  SimplexOptions simplex;
  // Called with every window LP before it is solved.
  std::function<void(int year, const LinearProgram&)> on_window;
};

// Typical periods of every profile referenced by the model.
inline TypicalPeriodSet model_periods(const Model& m) {
  const auto& sc = m.scenario;
  if (m.profiles.empty()) return constant_periods(sc.hours_per_typical_period);
  return aggregate(m.profiles, sc.typical_periods, sc.hours_per_typical_period, sc.seed);
}

namespace internal {

inline double weighted_sum(const TypicalPeriodSet& tps, const std::vector<double>& v) {
  double s = 0.0;
  for (int k = 0; k < tps.n_periods; ++k)
    for (int j = 0; j < tps.steps_per_period; ++j) s += tps.weight(k) * v[tps.flat(k, j)];
  return s;
}

}  // namespace internal

// Emissions of one solved year grouped by sector, Mt CO2-eq.
inline std::map<std::string, double> compute_sector_emissions(const Model& m,
                                                             const TypicalPeriodSet& tps,
                                                             const YearResult& r) {
  std::map<std::string, double> out;
  auto sector_of = [](const std::string& s) { return s.empty() ? std::string("other") : s; };
  for (const auto& proc : m.processes) {
    auto it = r.operation.find(proc.id);
    if (it == r.operation.end()) continue;
    const double e = emission_coefficient(m, proc, r.year) * internal::weighted_sum(tps, it->second);
    out[sector_of(proc.sector)] += e / kTonnesPerMt;
  }
  for (const auto& [pid, v] : r.vent)
    out[sector_of(m.product(pid).sector)] += internal::weighted_sum(tps, v) / kTonnesPerMt;
  for (const auto& prod : m.products) {
    if (prod.unit != Unit::tonne || !prod.use_phase_combusts) continue;
    const double t = annual_demand(m, tps, prod.id) * use_phase_emissions(prod);
    if (t != 0.0) out[sector_of(prod.sector)] += t / kTonnesPerMt;
  }
  return out;
}

inline std::map<std::string, double> sector_emissions(const PathwayResult& result, int year) {
  return result.year(year).sector_emissions_mt;
}

// Share of annual output of `product` per producing process.
inline std::map<std::string, double> production_mix(const Model& m, const TypicalPeriodSet& tps,
                                                    const YearResult& r,
                                                    const std::string& product) {
  std::map<std::string, double> out;
  double total = 0.0;
  for (const auto& proc : m.processes) {
    if (proc.is_storage()) continue;
    const double f = proc.flow(product, r.year) == 0.0
                         ? 0.0
                         : proc.flows.at(product).at_or_first(r.year);
    if (f <= 0.0) continue;
    auto it = r.operation.find(proc.id);
    if (it == r.operation.end()) continue;
    const double v = f * internal::weighted_sum(tps, it->second);
    if (v <= 0.0) continue;
    out[proc.id] = v;
    total += v;
  }
  if (total > 0.0)
    for (auto& [k, v] : out) v /= total;
  else
    out.clear();
  return out;
}

inline std::map<std::string, double> production_mix(const PathwayResult& result, const Model& m,
                                                    const std::string& product, int year) {
  return result.year(year).production_mix.count(product)
             ? result.year(year).production_mix.at(product)
             : production_mix(m, result.tps, result.year(year), product);
}

// Annualized system cost of one year: annuities of capacity built within
// the horizon, fixed costs of all alive capacity, variable costs and
// residual penalties.
inline double annual_cost(const Model& m, const TypicalPeriodSet& tps, const YearResult& r) {
  const double ann = annuity_factor(m.scenario.interest_rate, m.scenario.annuity_years);
  double cost = 0.0;
  for (const auto& v : r.stock) {
    const auto& proc = m.process(v.process);
    if (v.build_year > m.scenario.base_year && proc.capex.covers(v.build_year))
      cost += ann * proc.capex.at(v.build_year) * v.capacity;
    cost += proc.fixed_opex(v.build_year) * v.capacity;
  }
  for (const auto& [pid, ops] : r.operation)
    cost += m.process(pid).opex_var.at_or_first(r.year) * internal::weighted_sum(tps, ops);
  for (const auto& [pid, d] : r.discharge)
    cost += m.process(pid).opex_var.at_or_first(r.year) * internal::weighted_sum(tps, d);
  if (m.schedule.residual_penalty) cost += *m.schedule.residual_penalty * r.residual_mt * kTonnesPerMt;
  return cost;
}

inline PathwayResult run_pathway(const Model& m, const PathwayOptions& options = {}) {
  PathwayResult result;
  result.dataset = m.name;
  result.scenario = m.scenario.name;
  result.tps = model_periods(m);
  const auto& tps = result.tps;
  const auto& years = m.scenario.investment_years;
  const int step = m.scenario.investment_step();
  const int T = tps.n_steps();

  // Base-year instantiation of the existing stock.
  CapacityStock stock{m.initial_stock, false};
  stock = retire_and_seed_stock(stock, seed_demand_rates(m), m.processes, m.scenario.base_year, step);

  for (size_t yi = 0; yi < years.size(); ++yi) {
    const int y = years[yi];
    std::vector<int> window;
    for (size_t k = yi; k < years.size() && static_cast<int>(k - yi) < m.scenario.foresight_periods; ++k)
      window.push_back(years[k]);

    YearResult r;
    r.year = y;
    r.window = window;
    const CapacityStock before = stock;
    stock = retire_and_seed_stock(stock, {}, m.processes, y, step);
    for (const auto& v : before.vintages)
      if (std::find(stock.vintages.begin(), stock.vintages.end(), v) == stock.vintages.end())
        r.retired.push_back(v);

    WindowLp w = build_window_lp(m, stock, window, tps, m.schedule);
    if (options.on_window) options.on_window(y, w.lp);
    const LpSolution sol = solve(w.lp, options.simplex);
    if (sol.status == LpStatus::infeasible) {
      std::vector<std::pair<std::string, double>> cert;
      for (int i = 0; i < w.lp.num_rows(); ++i)
        if (i < static_cast<int>(sol.ray.size()) && sol.ray[i] != 0.0)
          cert.emplace_back(w.lp.row(i).name, sol.ray[i]);
      std::string msg = "window starting " + std::to_string(y) + " is infeasible";
      throw InfeasibleWindow(window, std::move(cert), msg);
    }
    if (!sol.optimal())
      throw SolverFailure("window starting " + std::to_string(y) + ": " +
                          std::string(to_string(sol.status)) + " " + sol.message);
    r.window_objective = sol.objective;
    r.iterations = sol.iterations;

    // Commit first-year decisions.
    for (int p = 0; p < w.n_proc; ++p) {
      const auto& proc = m.processes[p];
      const int c = w.new_cap[w.py(p, 0)];
      if (c >= 0 && sol.primal[c] > 1e-9) {
        r.new_capacity[proc.id] = sol.primal[c];
        stock.vintages.push_back({proc.id, y, sol.primal[c]});
      }
      auto collect = [&](const std::vector<int>& cols, auto& target) {
        if (cols[w.pyt(p, 0, 0)] < 0) return;
        std::vector<double> v(T);
        for (int t = 0; t < T; ++t) v[t] = sol.primal[cols[w.pyt(p, 0, t)]];
        target[proc.id] = std::move(v);
      };
      collect(w.op, r.operation);
      collect(w.charge, r.charge);
      collect(w.discharge, r.discharge);
    }
    for (int q = 0; q < w.n_prod; ++q) {
      if (w.vent[w.pyt(q, 0, 0)] < 0) continue;
      std::vector<double> v(T);
      for (int t = 0; t < T; ++t) v[t] = sol.primal[w.vent[w.pyt(q, 0, t)]];
      r.vent[m.products[q].id] = std::move(v);
    }
    if (w.residual[0] >= 0) r.residual_mt = sol.primal[w.residual[0]] / kTonnesPerMt;
    if (w.emissions[0] >= 0) r.co2_price = std::max(0.0, sol.dual[w.emissions[0]]);
    r.cap_mt = m.schedule.caps_mt.at(y);
    for (const auto& v : stock.vintages) r.installed_capacity[v.process] += v.capacity;
    r.stock = stock.vintages;
    r.sector_emissions_mt = compute_sector_emissions(m, tps, r);
    for (const auto& [s, e] : r.sector_emissions_mt) r.accounted_emissions_mt += e;
    for (const auto& prod : m.products) {
      auto mix = production_mix(m, tps, r, prod.id);
      if (!mix.empty()) r.production_mix[prod.id] = std::move(mix);
    }
    r.total_cost = annual_cost(m, tps, r);
    result.years.push_back(std::move(r));
  }
  return result;
}

}  // namespace pathforge

#endif  // PATHFORGE_PATHWAY_HPP_
