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

#ifndef PATHFORGE_ACCOUNTING_HPP_
#define PATHFORGE_ACCOUNTING_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pathforge/errors.hpp"
#include "pathforge/model.hpp"

namespace pathforge {

inline constexpr double kCo2PerCarbon = 44.0 / 12.0;

// Capital recovery factor r(1+r)^n / ((1+r)^n - 1).
inline double annuity_factor(double rate, double years) {
  if (!(years > 0.0)) throw InvalidArgument("annuity years must be > 0");
  if (rate < 0.0) throw InvalidArgument("annuity rate must be >= 0");
  if (rate == 0.0) return 1.0 / years;
  const double g = std::pow(1.0 + rate, years);
  return rate * g / (g - 1.0);
}

// CO2 released when one tonne of the product is burnt completely.
inline double use_phase_emissions(const Product& product) {
  if (product.unit != Unit::tonne)
    throw InvalidArgument("use-phase emissions need a mass unit: '" +
                          product.id + "'");
  if (!product.use_phase_combusts) return 0.0;
  return product.carbon_mass_fraction * kCo2PerCarbon;
}

// Signed 100-bar CO2 flow of a process (inputs negative).
inline double captured_co2_flow(const Model& model, const ProcessSpec& p,
                                int year) {
  double total = 0.0;
  for (const auto& [pid, series] : p.flows) {
    const Product* prod = model.find_product(pid);
    if (prod && prod->role == ProductRole::co2_captured)
      total += series.at(year);
  }
  return total;
}

// Point-source (1-bar) CO2 a process releases per unit output.
inline double point_source_flow(const Model& model, const ProcessSpec& p,
                                int year) {
  double total = 0.0;
  for (const auto& [pid, series] : p.flows) {
    const Product* prod = model.find_product(pid);
    if (prod && prod->role == ProductRole::co2_point_source)
      total += series.at(year);
  }
  return total;
}

// Operating emissions per unit reference output. Import processes carry
// their import emissions as direct emissions.
inline double emission_coefficient(const Model& model, const ProcessSpec& p,
                                   int year) {
  double e = p.direct_emissions.at(year) + captured_co2_flow(model, p, year);
  if (p.charges_use_phase) {
    const Product& ref = model.product(p.reference_product);
    if (ref.unit == Unit::tonne) e += use_phase_emissions(ref);
  }
  return e;
}

// Hourly demand rate used to size the initial stock (peak of a profile).
inline double peak_demand(const Model& model, const Demand& d) {
  if (!d.profile) return d.constant;
  auto it = model.profiles.find(*d.profile);
  if (it == model.profiles.end())
    throw InvalidArgument("unknown profile '" + *d.profile + "'");
  double peak = 0.0;
  for (double v : it->second) peak = std::max(peak, v);
  return peak * d.scale;
}

inline double mean_demand(const Model& model, const Demand& d) {
  if (!d.profile) return d.constant;
  auto it = model.profiles.find(*d.profile);
  if (it == model.profiles.end())
    throw InvalidArgument("unknown profile '" + *d.profile + "'");
  double sum = 0.0;
  for (double v : it->second) sum += v;
  return it->second.empty() ? 0.0 : sum / it->second.size() * d.scale;
}

// Removes vintages whose age reached their lifetime. On the first call
// (stock not yet seeded) every process with a seed share receives
// existing capacity equal to share x demand rate of its reference product,
// split into floor(lifetime/step) equal vintages one step apart, the
// youngest built in `period_year`.
inline CapacityStock retire_and_seed_stock(
    const CapacityStock& stock, const std::map<std::string, double>& demand,
    const std::vector<ProcessSpec>& processes, int period_year, int step) {
  auto lookup = [&](const std::string& id) -> const ProcessSpec& {
    for (const auto& p : processes)
      if (p.id == id) return p;
    throw InvalidArgument("stock references unknown process '" + id + "'");
  };
  CapacityStock out;
  out.seeded = true;
  if (!stock.seeded) {
    if (step <= 0) throw InvalidArgument("investment step must be > 0");
    for (const auto& p : processes) {
      if (p.seed_share <= 0.0) continue;
      auto it = demand.find(p.reference_product);
      if (it == demand.end() || it->second <= 0.0) continue;
      const int n = std::max(1, static_cast<int>(p.lifetime / step));
      const double share = p.seed_share * it->second / n;
      for (int k = 0; k < n; ++k) {
        const int built =
            period_year - static_cast<int>(p.lifetime) + step * (k + 1);
        out.vintages.push_back({p.id, std::min(built, period_year), share});
      }
    }
  }
  for (const auto& v : stock.vintages) out.vintages.push_back(v);
  std::erase_if(out.vintages, [&](const Vintage& v) {
    return v.capacity <= 0.0 ||
           period_year - v.build_year >= lookup(v.process).lifetime;
  });
  return out;
}

inline std::map<std::string, double> seed_demand_rates(const Model& model) {
  std::map<std::string, double> rates;
  for (const auto& d : model.demands.demands)
    rates[d.product] += peak_demand(model, d);
  return rates;
}

}  // namespace pathforge

#endif  // PATHFORGE_ACCOUNTING_HPP_
