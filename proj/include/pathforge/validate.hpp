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

#ifndef PATHFORGE_VALIDATE_HPP_
#define PATHFORGE_VALIDATE_HPP_

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "pathforge/model.hpp"

namespace pathforge {

struct Violation {
  std::string code;     // stable machine-readable kind
  std::string subject;  // offending id
  std::string message;
};

using ValidationReport = std::vector<Violation>;

namespace internal {

inline bool finite_series(const YearSeries& s) {
  if (s.is_constant()) return std::isfinite(s.min_value());
  for (const auto& [y, v] : s.points())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace internal

// Collects every well-formedness problem of a model; never throws.
inline ValidationReport validate_model(const Model& m) {
  ValidationReport out;
  auto add = [&](std::string code, std::string subject, std::string msg) {
    out.push_back({std::move(code), std::move(subject), std::move(msg)});
  };

  std::set<std::string> product_ids;
  for (const auto& p : m.products) {
    if (!product_ids.insert(p.id).second)
      add("duplicate id", p.id, "product id defined twice");
    if (!(p.carbon_mass_fraction >= 0.0 && p.carbon_mass_fraction <= 1.0))
      add("carbon fraction", p.id, "carbon_mass_fraction outside [0,1]");
    if (p.carbon_mass_fraction > 0.0 && p.unit != Unit::tonne)
      add("carbon fraction", p.id, "carbon content given for a non-mass unit");
    if (p.import_price && !p.import_emissions)
      add("import emissions", p.id, "import_price without import_emissions");
  }

  const auto& years = m.scenario.investment_years;
  std::set<std::string> process_ids;
  for (const auto& p : m.processes) {
    if (!process_ids.insert(p.id).second)
      add("duplicate id", p.id, "process id defined twice");
    if (!product_ids.contains(p.reference_product))
      add("dangling product id", p.id,
          "reference product '" + p.reference_product + "' is not defined");
    auto ref = p.flows.find(p.reference_product);
    if (ref == p.flows.end()) {
      add("missing reference flow", p.id,
          "flows omit reference product '" + p.reference_product + "'");
    } else if (ref->second.min_value() != 1.0 ||
               ref->second.max_value() != 1.0) {
      add("reference flow", p.id, "reference flow must be exactly +1");
    }
    for (const auto& [pid, series] : p.flows) {
      if (!product_ids.contains(pid))
        add("dangling product id", p.id,
            "flow references undefined product '" + pid + "'");
      if (!internal::finite_series(series))
        add("non-finite", p.id, "flow '" + pid + "' is not finite");
    }
    if (!(p.lifetime > 0.0)) add("lifetime", p.id, "lifetime must be > 0");
    if (p.capex.min_value() < 0.0) add("capex", p.id, "capex must be >= 0");
    for (const YearSeries* s :
         {&p.capex, &p.opex_fixed, &p.opex_var, &p.direct_emissions}) {
      if (!internal::finite_series(*s))
        add("non-finite", p.id, "cost or emission value is not finite");
    }
    for (int y : years) {
      if (y < p.available_from) continue;
      bool covered = p.capex.covers(y) && p.opex_fixed.covers(y) &&
                     p.opex_var.covers(y) && p.direct_emissions.covers(y);
      for (const auto& [pid, s] : p.flows) covered = covered && s.covers(y);
      if (p.max_capacity) covered = covered && p.max_capacity->covers(y);
      if (!covered) {
        add("year coverage", p.id,
            "parameters do not cover investment year " + std::to_string(y));
        break;
      }
    }
    if (p.availability_profile) {
      auto it = m.profiles.find(*p.availability_profile);
      if (it == m.profiles.end()) {
        add("dangling profile", p.id,
            "availability profile '" + *p.availability_profile +
                "' is not defined");
      } else {
        for (double v : it->second) {
          if (!(v >= 0.0 && v <= 1.0)) {
            add("availability", p.id, "availability outside [0,1]");
            break;
          }
        }
      }
    }
    if (p.storage) {
      const auto& s = *p.storage;
      if (!(s.charge_efficiency > 0.0 && s.charge_efficiency <= 1.0 &&
            s.discharge_efficiency > 0.0 && s.discharge_efficiency <= 1.0 &&
            s.energy_to_power > 0.0))
        add("storage", p.id, "storage parameters out of range");
    }
    if (p.seed_share < 0.0) add("seed share", p.id, "seed share must be >= 0");
  }

  for (const auto& d : m.demands.demands) {
    const Product* prod = m.find_product(d.product);
    if (!prod) {
      add("dangling product id", d.product, "demand for undefined product");
      continue;
    }
    if (d.constant < 0.0 || d.scale < 0.0)
      add("negative demand", d.product, "demand must be >= 0");
    if (d.profile) {
      auto it = m.profiles.find(*d.profile);
      if (it == m.profiles.end()) {
        add("dangling profile", d.product,
            "demand profile '" + *d.profile + "' is not defined");
      } else {
        for (double v : it->second) {
          if (v < 0.0) {
            add("negative demand", d.product, "profile has negative values");
            break;
          }
        }
      }
    }
    bool produced = prod->import_price.has_value();
    for (const auto& p : m.processes) {
      auto it = p.flows.find(d.product);
      if (it != p.flows.end() && it->second.max_value() > 0.0) produced = true;
    }
    if (!produced)
      add("uncovered demand", d.product,
          "no process or import produces demanded product");
  }

  for (const auto& v : m.initial_stock) {
    if (!process_ids.contains(v.process))
      add("dangling process id", v.process, "stock of undefined process");
    if (!(v.capacity > 0.0))
      add("negative capacity", v.process, "stock capacity must be > 0");
  }

  for (const auto& [name, values] : m.profiles) {
    if (values.size() != static_cast<size_t>(kHoursPerYear))
      add("profile length", name, "profile must have 8760 values");
  }

  const auto& sc = m.scenario;
  if (years.empty()) add("scenario", sc.name, "no investment years");
  for (size_t i = 1; i < years.size(); ++i) {
    if (years[i] - years[i - 1] != sc.investment_step())
      add("scenario", sc.name, "investment years must be evenly spaced");
  }
  if (!years.empty() && sc.base_year > years.front())
    add("scenario", sc.name, "base year after first investment year");
  if (sc.foresight_periods < 1)
    add("scenario", sc.name, "foresight_periods must be >= 1");
  if (sc.typical_periods < 1 || sc.hours_per_typical_period < 1 ||
      sc.typical_periods * sc.hours_per_typical_period > kHoursPerYear)
    add("scenario", sc.name, "typical period layout exceeds one year");
  if (sc.interest_rate < 0.0 || !(sc.annuity_years > 0.0))
    add("scenario", sc.name, "invalid annuity parameters");
  for (int y : years) {
    if (!m.schedule.covers(y))
      add("schedule", std::to_string(y), "emissions schedule misses year");
  }
  if (m.schedule.residual_penalty && *m.schedule.residual_penalty < 0.0)
    add("schedule", "residual_penalty", "residual penalty must be >= 0");

  for (const auto& s : m.analytics.services) {
    if (!product_ids.contains(s.product))
      add("dangling product id", s.id, "service references undefined product");
    for (const auto* pid : {&s.fossil_process, &s.electrified_process}) {
      if (!process_ids.contains(*pid))
        add("dangling process id", s.id,
            "service references undefined process '" + *pid + "'");
    }
  }
  return out;
}

}  // namespace pathforge

#endif  // PATHFORGE_VALIDATE_HPP_
