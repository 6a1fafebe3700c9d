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

// Translation of one foresight window into a linear program.
//
// Columns (per window year y, typical period k, step j):
//   new_cap[p,y]          capacity built in y, unit/h
//   op[p,y,k,j]           output rate of process p
//   ch/dis/soc[p,y,k,j]   storage charge, discharge, state of charge
//   vent[q,y,k,j]         point-source CO2 released to the atmosphere
//   residual[y]           penalized emissions above the cap, t
// Rows:
//   bal[q,y,k,j]          product balance against demand
//   cap[p,y,k,j]          output <= availability x installed capacity
//   pot[p,y]              installed capacity <= technical potential
//   emis[y]               annual operating emissions <= cap + residual
//   soc/chcap/discap/soccap  storage dynamics and limits

#ifndef PATHFORGE_LP_BUILD_HPP_
#define PATHFORGE_LP_BUILD_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathforge/accounting.hpp"
#include "pathforge/errors.hpp"
#include "pathforge/lp.hpp"
#include "pathforge/model.hpp"
#include "pathforge/timeagg.hpp"

namespace pathforge {

inline constexpr double kTonnesPerMt = 1e6;

// Index maps from model entities to LP columns and rows (-1 = absent).
struct WindowLp {
  LinearProgram lp;
  std::vector<int> years;
  int n_proc = 0, n_prod = 0, n_steps = 0;

  std::vector<int> new_cap;  // [p * Y + yi]
  std::vector<int> op;       // [(p * Y + yi) * T + t]
  std::vector<int> charge, discharge, soc;
  std::vector<int> vent;     // [(q * Y + yi) * T + t]
  std::vector<int> balance;  // [(q * Y + yi) * T + t]
  std::vector<int> residual;   // [yi]
  std::vector<int> emissions;  // [yi]
  std::vector<double> use_phase_t;  // [yi] constant use-phase emissions, t
  std::vector<double> surviving;    // [p * Y + yi] stock capacity

  int Y() const { return static_cast<int>(years.size()); }
  int py(int p, int yi) const { return p * Y() + yi; }
  int pyt(int p, int yi, int t) const { return (p * Y() + yi) * n_steps + t; }
};

inline std::string lp_name(std::string_view kind, std::string_view a, int y) {
  return std::string(kind) + "[" + std::string(a) + "," + std::to_string(y) + "]";
}

inline std::string lp_name(std::string_view kind, std::string_view a, int y,
                           int k, int j) {
  return std::string(kind) + "[" + std::string(a) + "," + std::to_string(y) +
         "," + std::to_string(k) + "," + std::to_string(j) + "]";
}

// Demand rate of a product at one typical step, unit/h.
inline double demand_at(const Model&, const TypicalPeriodSet& tps,
                        const Demand& d, int k, int j) {
  if (!d.profile) return d.constant;
  return tps.value(*d.profile, k, j) * d.scale;
}

inline double availability_at(const ProcessSpec& p, const TypicalPeriodSet& tps,
                              int k, int j) {
  if (!p.availability_profile) return 1.0;
  return tps.value(*p.availability_profile, k, j);
}

// Annual demand of a product under the typical-period representation.
inline double annual_demand(const Model& m, const TypicalPeriodSet& tps,
                            const std::string& product) {
  double total = 0.0;
  for (const auto& d : m.demands.demands) {
    if (d.product != product) continue;
    for (int k = 0; k < tps.n_periods; ++k)
      for (int j = 0; j < tps.steps_per_period; ++j)
        total += tps.weight(k) * demand_at(m, tps, d, k, j);
  }
  return total;
}

// Use-phase CO2 of all delivered demand in one year, t.
inline double use_phase_total(const Model& m, const TypicalPeriodSet& tps) {
  double total = 0.0;
  for (const auto& prod : m.products) {
    if (prod.unit != Unit::tonne || !prod.use_phase_combusts) continue;
    total += annual_demand(m, tps, prod.id) * use_phase_emissions(prod);
  }
  return total;
}

inline double surviving_capacity(const Model& m, const CapacityStock& stock,
                                  const std::string& process, int year) {
  double total = 0.0;
  for (const auto& v : stock.vintages) {
    if (v.process != process) continue;
    if (year - v.build_year < m.process(v.process).lifetime) total += v.capacity;
  }
  return total;
}

// Builds the LP of one window. `stock` holds the capacity existing at the
// window start; it retires by age within the window.
inline WindowLp build_window_lp(const Model& m, const CapacityStock& stock,
                                const std::vector<int>& window_years,
                                const TypicalPeriodSet& tps,
                                const EmissionsSchedule& caps) {
  if (window_years.empty()) throw InvalidArgument("empty window");
  for (const auto& v : stock.vintages) {
    if (!m.find_process(v.process))
      throw InvalidArgument("stock references unknown process '" + v.process + "'");
  }
  for (int y : window_years) {
    if (!caps.covers(y))
      throw InvalidArgument("emissions schedule does not cover year " +
                            std::to_string(y));
  }

  WindowLp w;
  w.years = window_years;
  w.n_proc = static_cast<int>(m.processes.size());
  w.n_prod = static_cast<int>(m.products.size());
  w.n_steps = tps.n_steps();
  const int Y = w.Y(), T = w.n_steps, S = tps.steps_per_period;
  auto& lp = w.lp;
  const double ann = annuity_factor(m.scenario.interest_rate, m.scenario.annuity_years);

  w.new_cap.assign(w.n_proc * Y, -1);
  w.op.assign(w.n_proc * Y * T, -1);
  w.charge = w.discharge = w.soc = w.op;
  w.vent.assign(w.n_prod * Y * T, -1);
  w.balance = w.vent;
  w.residual.assign(Y, -1);
  w.emissions.assign(Y, -1);
  w.use_phase_t.assign(Y, 0.0);
  w.surviving.assign(w.n_proc * Y, 0.0);

  // Investment columns.
  for (int p = 0; p < w.n_proc; ++p) {
    const auto& proc = m.processes[p];
    for (int yi = 0; yi < Y; ++yi) {
      const int y = window_years[yi];
      w.surviving[w.py(p, yi)] = surviving_capacity(m, stock, proc.id, y);
      if (!proc.buildable || proc.has_tag(ProcessTag::import) ||
          y < proc.available_from || !proc.capex.covers(y))
        continue;
      double cost = 0.0;
      for (int yj = yi; yj < Y; ++yj)
        if (window_years[yj] - y < proc.lifetime)
          cost += ann * proc.capex.at(y) + proc.fixed_opex(y);
      w.new_cap[w.py(p, yi)] =
          lp.add_column(lp_name("new_cap", proc.id, y), 0.0, kInf, cost, "new_capacity");
    }
  }
  // Capacity built in `yb` still alive in window year index yi.
  auto alive_builds = [&](int p, int yi) {
    std::vector<int> cols;
    const auto& proc = m.processes[p];
    for (int yb = 0; yb <= yi; ++yb) {
      const int c = w.new_cap[w.py(p, yb)];
      if (c >= 0 && window_years[yi] - window_years[yb] < proc.lifetime) cols.push_back(c);
    }
    return cols;
  };

  auto balance_row = [&](int q, int yi, int t) {
    int& r = w.balance[w.pyt(q, yi, t)];
    if (r < 0) {
      const auto& prod = m.products[q];
      const int k = t / S, j = t % S;
      double d = 0.0;
      for (const auto& dem : m.demands.demands)
        if (dem.product == prod.id) d += demand_at(m, tps, dem, k, j);
      r = lp.add_row(lp_name("bal", prod.id, window_years[yi], k, j),
                     prod.free_disposal ? Sense::ge : Sense::eq, d, "balance");
    }
    return r;
  };
  std::map<std::string, int> product_index;
  for (int q = 0; q < w.n_prod; ++q) product_index[m.products[q].id] = q;
  auto pidx = [&](const std::string& id) {
    auto it = product_index.find(id);
    if (it == product_index.end()) throw InvalidArgument("unknown product '" + id + "'");
    return it->second;
  };

  for (int yi = 0; yi < Y; ++yi) {
    const int y = window_years[yi];
    const auto cap = caps.caps_mt.at(y);
    if (cap) {
      w.use_phase_t[yi] = use_phase_total(m, tps);
      w.emissions[yi] = lp.add_row("emis[" + std::to_string(y) + "]", Sense::le,
                                   *cap * kTonnesPerMt - w.use_phase_t[yi], "emissions");
      if (caps.residual_penalty) {
        w.residual[yi] = lp.add_column("residual[" + std::to_string(y) + "]", 0.0, kInf,
                                       *caps.residual_penalty, "residual");
        lp.add_entry(w.emissions[yi], w.residual[yi], -1.0);
      }
    }
    // Demand rows exist even when nothing can serve them.
    for (int q = 0; q < w.n_prod; ++q) {
      if (!m.demands.find(m.products[q].id)) continue;
      for (int t = 0; t < T; ++t) balance_row(q, yi, t);
    }

    for (int p = 0; p < w.n_proc; ++p) {
      const auto& proc = m.processes[p];
      const double stock_cap = w.surviving[w.py(p, yi)];
      const auto builds = alive_builds(p, yi);
      const bool unlimited = proc.has_tag(ProcessTag::import);
      if (!unlimited && builds.empty() && stock_cap <= 0.0) continue;

      if (proc.is_storage()) {
        const auto& sp = *proc.storage;
        const int q = pidx(proc.reference_product);
        for (int t = 0; t < T; ++t) {
          const int k = t / S, j = t % S;
          const int i = w.pyt(p, yi, t);
          w.charge[i] = lp.add_column(lp_name("ch", proc.id, y, k, j), 0.0, kInf,
                                      0.0, "storage");
          w.discharge[i] = lp.add_column(lp_name("dis", proc.id, y, k, j), 0.0, kInf,
                                         tps.weight(k) * proc.opex_var.at_or_first(y),
                                         "storage");
          w.soc[i] = lp.add_column(lp_name("soc", proc.id, y, k, j), 0.0, kInf, 0.0,
                                   "storage");
          const int b = balance_row(q, yi, t);
          lp.add_entry(b, w.charge[i], -1.0);
          lp.add_entry(b, w.discharge[i], 1.0);
          struct Lim { const char* name; int col; double scale; };
          for (const Lim& l : {Lim{"chcap", w.charge[i], 1.0},
                               Lim{"discap", w.discharge[i], 1.0},
                               Lim{"soccap", w.soc[i], sp.energy_to_power}}) {
            const int r = lp.add_row(lp_name(l.name, proc.id, y, k, j), Sense::le,
                                     l.scale * stock_cap, "capacity");
            lp.add_entry(r, l.col, 1.0);
            for (int c : builds) lp.add_entry(r, c, -l.scale);
          }
        }
        // Cyclic state of charge within every typical period.
        for (int t = 0; t < T; ++t) {
          const int k = t / S, j = t % S;
          const int prev = k * S + (j + S - 1) % S;
          const int r = lp.add_row(lp_name("soc", proc.id, y, k, j), Sense::eq, 0.0,
                                   "storage");
          lp.add_entry(r, w.soc[w.pyt(p, yi, t)], 1.0);
          if (prev != t) lp.add_entry(r, w.soc[w.pyt(p, yi, prev)], -1.0);
          lp.add_entry(r, w.charge[w.pyt(p, yi, t)], -sp.charge_efficiency);
          lp.add_entry(r, w.discharge[w.pyt(p, yi, t)], 1.0 / sp.discharge_efficiency);
        }
        continue;
      }

      const double coef = emission_coefficient(m, proc, y);
      const double opex = proc.opex_var.at_or_first(y);
      std::vector<std::pair<int, double>> flows;
      for (const auto& [pid, series] : proc.flows) {
        const double f = series.at_or_first(y);
        if (f != 0.0) flows.emplace_back(pidx(pid), f);
      }
      for (int t = 0; t < T; ++t) {
        const int k = t / S, j = t % S;
        const double avail = availability_at(proc, tps, k, j);
        double ub = kInf;
        if (!unlimited && builds.empty()) ub = avail * stock_cap;
        const int c = lp.add_column(lp_name("op", proc.id, y, k, j), 0.0, ub,
                                    tps.weight(k) * opex, "operation");
        w.op[w.pyt(p, yi, t)] = c;
        for (const auto& [q, f] : flows) lp.add_entry(balance_row(q, yi, t), c, f);
        if (w.emissions[yi] >= 0) lp.add_entry(w.emissions[yi], c, tps.weight(k) * coef);
        if (!unlimited && !builds.empty()) {
          const int r = lp.add_row(lp_name("cap", proc.id, y, k, j), Sense::le,
                                   avail * stock_cap, "capacity");
          lp.add_entry(r, c, 1.0);
          for (int b : builds) lp.add_entry(r, b, -avail);
        }
      }
      if (proc.max_capacity && !builds.empty()) {
        const double room = std::max(0.0, proc.max_capacity->at_or_first(y) - stock_cap);
        const int r = lp.add_row(lp_name("pot", proc.id, y), Sense::le, room, "potential");
        for (int b : builds) lp.add_entry(r, b, 1.0);
      }
    }

    // Venting of point-source CO2.
    for (int q = 0; q < w.n_prod; ++q) {
      if (m.products[q].role != ProductRole::co2_point_source) continue;
      for (int t = 0; t < T; ++t) {
        if (w.balance[w.pyt(q, yi, t)] < 0) continue;
        const int k = t / S, j = t % S;
        const int c = lp.add_column(lp_name("vent", m.products[q].id, y, k, j), 0.0,
                                    kInf, 0.0, "vent");
        w.vent[w.pyt(q, yi, t)] = c;
        lp.add_entry(w.balance[w.pyt(q, yi, t)], c, -1.0);
        if (w.emissions[yi] >= 0) lp.add_entry(w.emissions[yi], c, tps.weight(k));
      }
    }
  }
  lp.finalize();
  return w;
}

}  // namespace pathforge

#endif  // PATHFORGE_LP_BUILD_HPP_
