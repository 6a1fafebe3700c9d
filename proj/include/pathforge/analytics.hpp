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

// Electrification analytics on solved pathways: supply-chain intensity
// rollup, Cost-Avoided, merit-order curves, load duration, utilization.

#ifndef PATHFORGE_ANALYTICS_HPP_
#define PATHFORGE_ANALYTICS_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pathforge/accounting.hpp"
#include "pathforge/errors.hpp"
#include "pathforge/model.hpp"
#include "pathforge/pathway.hpp"

namespace pathforge {

// product -> (process -> share of the product's supply)
using ProductionMixes = std::map<std::string, std::map<std::string, double>>;

enum class Quantity { electricity, cost, emissions };

struct RollupOptions {
  // Point-source CO2 released by a process counts as emitted.
  bool vent_point_source = true;
  // Intensities of the terminal electricity product.
  double electricity_cost = 0.0;
  double electricity_emissions = 0.0;
};

struct IntensityVector {
  double electricity = 0.0;  // MWh per unit
  double op_cost = 0.0;      // k€ per unit
  double emissions = 0.0;    // t CO2-eq per unit
};

namespace internal {

inline const Product* electricity_product(const Model& m) {
  return m.find_role(ProductRole::electricity);
}

// Direct per-unit term of a process for one quantity.
inline double direct_term(const Model& m, const ProcessSpec& p, int year, Quantity q,
                          const RollupOptions& opt) {
  switch (q) {
    case Quantity::electricity: return 0.0;
    case Quantity::cost: return p.opex_var.at_or_first(year);
    case Quantity::emissions: {
      double e = emission_coefficient(m, p, year);
      if (opt.vent_point_source) e += point_source_flow(m, p, year);
      return e;
    }
  }
  return 0.0;
}

// Inputs of a process (positive amounts per unit reference output).
inline std::vector<std::pair<std::string, double>> inputs_of(const ProcessSpec& p, int year) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [pid, s] : p.flows) {
    const double f = s.at_or_first(year);
    if (f < 0.0) out.emplace_back(pid, -f);
  }
  return out;
}

inline void check_mix(const std::string& product, const std::map<std::string, double>& mix) {
  double sum = 0.0;
  for (const auto& [k, v] : mix) sum += v;
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidArgument("production mix of '" + product + "' sums to " + std::to_string(sum));
}

// Linear system over all products reachable from `roots`.
struct RollupSystem {
  std::vector<std::string> products;
  std::map<std::string, int> index;
  Eigen::MatrixXd M;  // M(p, q): amount of q consumed per unit p
  std::vector<std::map<std::string, double>> mix;
  int electricity = -1;
};

inline RollupSystem build_rollup(const Model& m, int year, const ProductionMixes& mixes,
                                 const std::vector<std::string>& roots) {
  RollupSystem sys;
  const Product* elec = electricity_product(m);
  auto add = [&](const std::string& id) {
    if (sys.index.count(id)) return;
    sys.index[id] = static_cast<int>(sys.products.size());
    sys.products.push_back(id);
  };
  for (const auto& r : roots) add(r);
  std::map<std::string, std::map<std::string, double>> resolved;
  for (size_t k = 0; k < sys.products.size(); ++k) {
    const std::string id = sys.products[k];
    if (elec && id == elec->id) continue;
    std::map<std::string, double> mix;
    auto it = mixes.find(id);
    if (it != mixes.end() && !it->second.empty()) {
      check_mix(id, it->second);
      mix = it->second;
    } else {
      auto dp = m.analytics.default_producers.find(id);
      if (dp != m.analytics.default_producers.end()) {
        mix[dp->second] = 1.0;
      } else {
        for (const auto& p : m.processes)
          if (p.reference_product == id && !p.is_storage()) {
            mix[p.id] = 1.0;
            break;
          }
      }
      if (mix.empty()) throw UnresolvedProduct(id);
    }
    for (const auto& [pid, share] : mix) {
      const auto& proc = m.process(pid);
      if (proc.reference_product != id) continue;  // by-product supply
      for (const auto& [q, a] : inputs_of(proc, year)) add(q);
    }
    resolved[id] = std::move(mix);
  }
  const int n = static_cast<int>(sys.products.size());
  sys.M = Eigen::MatrixXd::Zero(n, n);
  sys.mix.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& id = sys.products[i];
    if (elec && id == elec->id) {
      sys.electricity = i;
      continue;
    }
    sys.mix[i] = resolved[id];
    for (const auto& [pid, share] : sys.mix[i]) {
      const auto& proc = m.process(pid);
      if (proc.reference_product != id) continue;
      for (const auto& [q, a] : inputs_of(proc, year)) sys.M(i, sys.index[q]) += share * a;
    }
  }
  return sys;
}

inline Eigen::VectorXd direct_vector(const Model& m, int year, const RollupSystem& sys,
                                     Quantity q, const RollupOptions& opt) {
  const int n = static_cast<int>(sys.products.size());
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (i == sys.electricity) {
      d[i] = q == Quantity::electricity ? 1.0
             : q == Quantity::cost      ? opt.electricity_cost
                                        : opt.electricity_emissions;
      continue;
    }
    for (const auto& [pid, share] : sys.mix[i]) {
      const auto& proc = m.process(pid);
      if (proc.reference_product != sys.products[i]) continue;
      d[i] += share * direct_term(m, proc, year, q, opt);
    }
  }
  return d;
}

inline Eigen::VectorXd solve_rollup(const RollupSystem& sys, const Eigen::VectorXd& d) {
  const int n = static_cast<int>(sys.products.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - sys.M;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw UnresolvedProduct(sys.products.front());
  return lu.solve(d);
}

}  // namespace internal

// Per-unit intensity of every product reachable from `product`, as the
// fixed point x = d + M x over the supplied production mixes.
inline std::map<std::string, double> rollup_all(const Model& m, const std::string& product, int year,
                                                const ProductionMixes& mixes, Quantity quantity,
                                                const RollupOptions& opt = {}) {
  auto sys = internal::build_rollup(m, year, mixes, {product});
  auto x = internal::solve_rollup(sys, internal::direct_vector(m, year, sys, quantity, opt));
  std::map<std::string, double> out;
  for (size_t i = 0; i < sys.products.size(); ++i) out[sys.products[i]] = x[i];
  return out;
}

inline double rollup_intensity(const Model& m, const std::string& product, int year,
                               const ProductionMixes& mixes, Quantity quantity,
                               const RollupOptions& opt = {}) {
  return rollup_all(m, product, year, mixes, quantity, opt).at(product);
}

// Activity of every process per unit of `product` delivered.
inline std::map<std::string, double> supply_chain_activity(const Model& m, const std::string& product,
                                                           int year, const ProductionMixes& mixes) {
  auto sys = internal::build_rollup(m, year, mixes, {product});
  const int n = static_cast<int>(sys.products.size());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e[sys.index.at(product)] = 1.0;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - sys.M;
  Eigen::VectorXd req = A.transpose().fullPivLu().solve(e);
  std::map<std::string, double> out;
  for (int i = 0; i < n; ++i) {
    if (i == sys.electricity) continue;
    for (const auto& [pid, share] : sys.mix[i]) {
      if (m.process(pid).reference_product != sys.products[i]) continue;
      out[pid] += req[i] * share;
    }
  }
  return out;
}

// Electricity drawn directly by each process per unit of `product`.
inline std::map<std::string, double> electricity_by_process(const Model& m, const std::string& product,
                                                            int year, const ProductionMixes& mixes) {
  const Product* elec = internal::electricity_product(m);
  std::map<std::string, double> out;
  if (!elec) return out;
  for (const auto& [pid, act] : supply_chain_activity(m, product, year, mixes)) {
    const double f = m.process(pid).flow(elec->id, year);
    if (f < 0.0) out[pid] = act * -f;
  }
  return out;
}

// Intensities of one specific route (process) with upstream supply from
// the mixes.
inline IntensityVector route_intensity(const Model& m, const std::string& process, int year,
                                       const ProductionMixes& mixes, const RollupOptions& opt = {}) {
  const auto& proc = m.process(process);
  std::vector<std::string> roots;
  for (const auto& [q, a] : internal::inputs_of(proc, year)) roots.push_back(q);
  IntensityVector v;
  v.op_cost = internal::direct_term(m, proc, year, Quantity::cost, opt);
  v.emissions = internal::direct_term(m, proc, year, Quantity::emissions, opt);
  if (roots.empty()) return v;
  auto sys = internal::build_rollup(m, year, mixes, roots);
  const auto xe = internal::solve_rollup(sys, internal::direct_vector(m, year, sys, Quantity::electricity, opt));
  const auto xc = internal::solve_rollup(sys, internal::direct_vector(m, year, sys, Quantity::cost, opt));
  const auto xm = internal::solve_rollup(sys, internal::direct_vector(m, year, sys, Quantity::emissions, opt));
  for (const auto& [q, a] : internal::inputs_of(proc, year)) {
    const int i = sys.index.at(q);
    v.electricity += a * xe[i];
    v.op_cost += a * xc[i];
    v.emissions += a * xm[i];
  }
  return v;
}

struct CostAvoided {
  double electricity = 0.0;       // E, MWh per unit
  double multiplier = 0.0;        // M = 1/E
  double delta_op_per_unit = 0.0;     // C_fossil - C_elec, k€ per unit
  double delta_e_per_unit = 0.0;      // e_fossil - e_elec, t per unit
  double per_unit = 0.0;              // composite, k€ per unit
  double delta_op = 0.0;          // k€/MWh
  double delta_e = 0.0;           // t/MWh
  double per_mwh = 0.0;           // k€/MWh
};

inline CostAvoided cost_avoided(const IntensityVector& fossil, const IntensityVector& electrified,
                                double co2_price) {
  const double E = electrified.electricity;
  if (!(E > 0.0)) throw InvalidArgument("electrified route draws no electricity");
  CostAvoided c;
  c.electricity = E;
  c.multiplier = 1.0 / E;
  c.delta_op_per_unit = fossil.op_cost - electrified.op_cost;
  c.delta_e_per_unit = fossil.emissions - electrified.emissions;
  c.per_unit = c.delta_op_per_unit + co2_price * c.delta_e_per_unit;
  c.delta_op = c.multiplier * c.delta_op_per_unit;
  c.delta_e = c.multiplier * c.delta_e_per_unit;
  c.per_mwh = c.delta_op + co2_price * c.delta_e;
  return c;
}

struct MeritEntry {
  std::string service;
  double cost_avoided = 0.0;  // k€/MWh
  double width = 0.0;         // MWh/h
  double start = 0.0;         // MWh/h
};

struct MeritInput {
  std::string service;
  double cost_avoided = 0.0;  // k€/MWh
  double electricity = 0.0;   // MWh per unit
  double capacity = 0.0;      // P, unit/h
  double demand = 0.0;        // D, unit/h
};

struct MeritOrderCurve {
  int period = 0;
  int step = 0;
  double renewable_supply = 0.0;  // MWh/h
  std::vector<MeritEntry> entries;

  double total_width() const {
    return entries.empty() ? 0.0 : entries.back().start + entries.back().width;
  }
};

inline MeritOrderCurve merit_order_curve(std::vector<MeritInput> inputs, double renewable_supply = 0.0,
                                         int period = 0, int step = 0) {
  std::sort(inputs.begin(), inputs.end(), [](const MeritInput& a, const MeritInput& b) {
    if (a.cost_avoided != b.cost_avoided) return a.cost_avoided > b.cost_avoided;
    return a.service < b.service;
  });
  MeritOrderCurve c;
  c.period = period;
  c.step = step;
  c.renewable_supply = renewable_supply;
  double start = 0.0;
  for (const auto& in : inputs) {
    const double width = in.electricity * std::max(0.0, std::min(in.capacity, in.demand));
    c.entries.push_back({in.service, in.cost_avoided, width, start});
    start += width;
  }
  return c;
}

// Electrified fraction of each service for renewable supply R.
inline std::map<std::string, double> predict_dispatch(const MeritOrderCurve& curve, double R) {
  if (R < 0.0) throw InvalidArgument("renewable supply must be >= 0");
  std::map<std::string, double> out;
  for (const auto& e : curve.entries) {
    if (e.width <= 0.0) {
      out[e.service] = 0.0;
      continue;
    }
    out[e.service] = std::clamp((R - e.start) / e.width, 0.0, 1.0);
  }
  return out;
}

// Cost-Avoided evaluation of the configured services in one solved year.
struct ServiceEvaluation {
  std::string service;
  std::string product;
  IntensityVector fossil, electrified;
  CostAvoided ca;
  double capacity = 0.0;  // electrified capacity, unit/h
  double demand = 0.0;    // unit/h served by this (sub-)service
  double report_divisor = 1.0;
};

inline ProductionMixes year_mixes(const PathwayResult& result, int year) {
  return result.year(year).production_mix;
}

// Hourly demand of a product in a typical step: external demand plus
// consumption by the year's operation.
inline double product_throughput(const Model& m, const YearResult& r, const std::string& product,
                                 int t) {
  double out = 0.0;
  for (const auto& [pid, ops] : r.operation) {
    const double f = m.process(pid).flow(product, r.year);
    if (f > 0.0) out += f * ops[t];
  }
  return out;
}

inline std::vector<ServiceEvaluation> evaluate_services(const Model& m, const PathwayResult& res,
                                                        int year, std::optional<int> step = {}) {
  const auto& r = res.year(year);
  const auto mixes = r.production_mix;
  std::vector<ServiceEvaluation> out;
  auto mean_or_step = [&](auto&& f) {
    if (step) return f(*step);
    double s = 0.0, w = 0.0;
    for (int k = 0; k < res.tps.n_periods; ++k)
      for (int j = 0; j < res.tps.steps_per_period; ++j) {
        s += res.tps.weight(k) * f(res.tps.flat(k, j));
        w += res.tps.weight(k);
      }
    return w > 0 ? s / w : 0.0;
  };
  for (const auto& s : m.analytics.services) {
    const auto& fp = m.process(s.fossil_process);
    auto cap_it = r.installed_capacity.find(s.electrified_process);
    const double cap = cap_it == r.installed_capacity.end() ? 0.0 : cap_it->second;
    const double demand =
        mean_or_step([&](int t) { return product_throughput(m, r, s.product, t); });
    const auto el = route_intensity(m, s.electrified_process, year, mixes);
    auto push = [&](const std::string& id, const IntensityVector& fos, double d) {
      ServiceEvaluation e;
      e.service = id;
      e.product = s.product;
      e.fossil = fos;
      e.electrified = el;
      e.ca = cost_avoided(fos, el, r.co2_price);
      e.capacity = cap;
      e.demand = d;
      e.report_divisor = s.report_divisor;
      out.push_back(e);
    };
    if (!s.split_point_source) {
      push(s.id, route_intensity(m, s.fossil_process, year, mixes), demand);
      continue;
    }
    // Two tranches: the fossil by-product CO2 is either utilized by CCU
    // (not vented) or vented.
    RollupOptions keep;
    keep.vent_point_source = false;
    const double ps = point_source_flow(m, fp, year);
    double utilized = 0.0;
    if (ps > 0.0) {
      const Product* co2ps = nullptr;
      for (const auto& [pid, f] : fp.flows)
        if (m.product(pid).role == ProductRole::co2_point_source) co2ps = &m.product(pid);
      if (co2ps) {
        const double consumed = mean_or_step([&](int t) {
          double c = 0.0;
          for (const auto& [pid, ops] : r.operation) {
            const double f = m.process(pid).flow(co2ps->id, year);
            if (f < 0.0) c -= f * ops[t];
          }
          return c;
        });
        utilized = std::min(demand, consumed / ps);
      }
    }
    push(s.id + ":co2_utilized", route_intensity(m, s.fossil_process, year, mixes, keep), utilized);
    push(s.id + ":co2_vented", route_intensity(m, s.fossil_process, year, mixes), demand - utilized);
  }
  return out;
}

// Renewable generation potential (capacity x availability) of a step.
inline double renewable_supply(const Model& m, const PathwayResult& res, const YearResult& r, int t) {
  const int k = t / res.tps.steps_per_period, j = t % res.tps.steps_per_period;
  double s = 0.0;
  for (const auto& proc : m.processes) {
    if (!proc.has_tag(ProcessTag::renewable)) continue;
    auto it = r.installed_capacity.find(proc.id);
    if (it == r.installed_capacity.end()) continue;
    const double f = proc.flow(proc.reference_product, r.year);
    s += f * it->second * availability_at(proc, res.tps, k, j);
  }
  return s;
}

// Renewable supply left after non-chemical electricity demand and the
// electricity use of processes in priority sectors.
inline double excess_renewables(const Model& m, const PathwayResult& res, const YearResult& r, int t) {
  const Product* elec = internal::electricity_product(m);
  double excess = renewable_supply(m, res, r, t);
  if (!elec) return excess;
  const int k = t / res.tps.steps_per_period, j = t % res.tps.steps_per_period;
  for (const auto& d : m.demands.demands)
    if (d.product == elec->id) excess -= demand_at(m, res.tps, d, k, j);
  const std::set<std::string> prio(m.analytics.priority_sectors.begin(),
                                   m.analytics.priority_sectors.end());
  for (const auto& [pid, ops] : r.operation) {
    const auto& proc = m.process(pid);
    if (!prio.count(proc.sector)) continue;
    const double f = proc.flow(elec->id, r.year);
    if (f < 0.0) excess += f * ops[t];
  }
  return excess;
}

inline MeritOrderCurve curve_at(const Model& m, const PathwayResult& res, int year, int t) {
  const auto& r = res.year(year);
  std::vector<MeritInput> in;
  for (const auto& e : evaluate_services(m, res, year, t))
    in.push_back({e.service, e.ca.per_mwh, e.ca.electricity, e.capacity, e.demand});
  const int S = res.tps.steps_per_period;
  return merit_order_curve(std::move(in), std::max(0.0, excess_renewables(m, res, r, t)), t / S, t % S);
}

struct LoadDurationRow {
  int hour = 0;
  int period = 0, step = 0;
  double excess_renewables = 0.0;  // MWh/h
  std::map<std::string, double> electrified;  // service product output, unit/h
  std::map<std::string, double> fossil;
};

inline std::vector<LoadDurationRow> load_duration(const Model& m, const PathwayResult& res, int year) {
  const auto& r = res.year(year);
  const int T = res.tps.n_steps();
  std::vector<double> excess(T);
  for (int t = 0; t < T; ++t) excess[t] = excess_renewables(m, res, r, t);
  std::vector<LoadDurationRow> rows;
  const auto& hm = res.tps.hour_map;
  for (size_t h = 0; h < hm.size(); ++h) {
    const int t = res.tps.flat(hm[h].period, hm[h].step);
    LoadDurationRow row;
    row.hour = static_cast<int>(h);
    row.period = hm[h].period;
    row.step = hm[h].step;
    row.excess_renewables = excess[t];
    for (const auto& s : m.analytics.services) {
      auto ope = r.operation.find(s.electrified_process);
      auto opf = r.operation.find(s.fossil_process);
      row.electrified[s.id] = ope == r.operation.end() ? 0.0 : ope->second[t];
      row.fossil[s.id] = opf == r.operation.end() ? 0.0 : opf->second[t];
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const LoadDurationRow& a, const LoadDurationRow& b) {
    return a.excess_renewables > b.excess_renewables;
  });
  return rows;
}

// Annual output over installed capacity times represented hours.
inline double utilization_rate(const PathwayResult& res, const std::string& process, int year) {
  const auto& r = res.year(year);
  auto cap = r.installed_capacity.find(process);
  if (cap == r.installed_capacity.end() || cap->second <= 0.0) return 0.0;
  auto op = r.operation.find(process);
  if (op == r.operation.end()) return 0.0;
  double hours = 0.0;
  for (int k = 0; k < res.tps.n_periods; ++k) hours += res.tps.weight(k) * res.tps.steps_per_period;
  return internal::weighted_sum(res.tps, op->second) / (cap->second * hours);
}

}  // namespace pathforge

#endif  // PATHFORGE_ANALYTICS_HPP_
