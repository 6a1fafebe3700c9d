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

// Domain data model of a sector-coupled energy system with an explicit
// chemical process network. All types are plain values: once a Model has
// been loaded and validated it is never mutated, so it may be shared
// freely between threads.

#ifndef PATHFORGE_MODEL_HPP_
#define PATHFORGE_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pathforge/errors.hpp"

namespace pathforge {

inline constexpr int kHoursPerYear = 8760;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Unit { tonne, mwh, vehicle_km, tonne_co2 };

// Special meaning a product carries for accounting.
enum class ProductRole {
  none,
  electricity,       // terminal of the electricity rollup, storage medium
  co2_captured,      // compressed CO2; signed flows count as emissions
  co2_point_source,  // concentrated by-product CO2; vented if not captured
  hydrogen,          // import price replaced by the scenario's penalty
};

enum class ProcessTag {
  fossil,
  electrified,
  import,
  capture,
  heat,
  storage,
  renewable,
};

enum class FixedOpexMode { absolute, percent_of_capex };

std::string_view to_string(Unit u);
std::string_view to_string(ProductRole r);
std::string_view to_string(ProcessTag t);
std::optional<Unit> parse_unit(std::string_view s);
std::optional<ProductRole> parse_role(std::string_view s);
std::optional<ProcessTag> parse_tag(std::string_view s);

// A parameter listed for discrete years. Lookups use the value of the
// latest listed year not after the query (step interpolation).
class YearSeries {
 public:
  YearSeries() : constant_(0.0) {}
  explicit YearSeries(double constant) : constant_(constant) {}
  explicit YearSeries(std::map<int, double> points)
      : points_(std::move(points)) {
    if (points_.empty()) constant_ = 0.0;
  }

  bool is_constant() const { return constant_.has_value(); }
  const std::map<int, double>& points() const { return points_; }

  bool covers(int year) const {
    return is_constant() || points_.begin()->first <= year;
  }

  double at(int year) const {
    if (constant_) return *constant_;
    auto it = points_.upper_bound(year);
    if (it == points_.begin()) {
      throw InvalidArgument("year " + std::to_string(year) +
                            " precedes first listed year " +
                            std::to_string(points_.begin()->first));
    }
    return std::prev(it)->second;
  }

  // Value at `year`, or the first listed value for earlier years.
  double at_or_first(int year) const {
    if (constant_ || covers(year)) return at(year);
    return points_.begin()->second;
  }

  // Smallest and largest listed values (the constant when not year-keyed).
  double min_value() const {
    if (constant_) return *constant_;
    double m = kInf;
    for (const auto& [y, v] : points_) m = std::min(m, v);
    return m;
  }
  double max_value() const {
    if (constant_) return *constant_;
    double m = -kInf;
    for (const auto& [y, v] : points_) m = std::max(m, v);
    return m;
  }

  template <class F>
  YearSeries transformed(F&& f) const {
    if (constant_) return YearSeries(f(*constant_));
    std::map<int, double> out;
    for (const auto& [y, v] : points_) out[y] = f(v);
    return YearSeries(std::move(out));
  }

  friend bool operator==(const YearSeries&, const YearSeries&) = default;

 private:
  std::optional<double> constant_;
  std::map<int, double> points_;
};

struct Product {
  std::string id;
  std::string name;
  Unit unit = Unit::tonne;
  double carbon_mass_fraction = 0.0;  // kg C per kg product
  bool use_phase_combusts = false;
  std::optional<double> import_price;      // k€ per unit
  std::optional<double> import_emissions;  // t CO2-eq per unit
  std::string sector;
  ProductRole role = ProductRole::none;
  bool free_disposal = false;  // balance row is >= instead of =
  std::string provenance;
};

struct StorageParams {
  double charge_efficiency = 1.0;
  double discharge_efficiency = 1.0;
  double energy_to_power = 1.0;  // hours of storage at rated power
};

struct ProcessSpec {
  std::string id;
  std::string reference_product;
  // Signed rate per unit of reference output: inputs negative.
  std::map<std::string, YearSeries> flows;
  YearSeries capex;       // k€ per (unit/h), by build year
  YearSeries opex_fixed;  // k€ per (unit/h) per year, or percent of capex
  FixedOpexMode opex_fixed_mode = FixedOpexMode::absolute;
  YearSeries opex_var;          // k€ per unit output
  YearSeries direct_emissions;  // t CO2-eq per unit output
  double lifetime = 30.0;
  int available_from = 0;
  std::set<ProcessTag> tags;
  std::string sector;
  std::optional<std::string> availability_profile;
  std::optional<YearSeries> max_capacity;  // total installed, unit/h
  double seed_share = 0.0;  // share of peak demand seeded as existing stock
  bool charges_use_phase = false;
  bool buildable = true;
  std::optional<StorageParams> storage;
  std::string provenance;

  bool has_tag(ProcessTag t) const { return tags.contains(t); }
  bool is_storage() const { return storage.has_value(); }

  double flow(const std::string& product, int year) const {
    auto it = flows.find(product);
    return it == flows.end() ? 0.0 : it->second.at(year);
  }

  // Fixed operating cost for capacity built in `build_year`.
  double fixed_opex(int build_year) const {
    if (opex_fixed_mode == FixedOpexMode::percent_of_capex) {
      return opex_fixed.at_or_first(build_year) / 100.0 *
             capex.at_or_first(build_year);
    }
    return opex_fixed.at_or_first(build_year);
  }
};

struct Vintage {
  std::string process;
  int build_year = 0;
  double capacity = 0.0;  // unit/h

  friend bool operator==(const Vintage&, const Vintage&) = default;
};

struct CapacityStock {
  std::vector<Vintage> vintages;
  bool seeded = false;

  double capacity(const std::string& process) const {
    double total = 0.0;
    for (const auto& v : vintages)
      if (v.process == process) total += v.capacity;
    return total;
  }
  double total() const {
    double t = 0.0;
    for (const auto& v : vintages) t += v.capacity;
    return t;
  }
};

// Demand of one product, in unit/h. Either a constant rate or a scaled
// hourly profile read from the dataset's side-car CSV.
struct Demand {
  std::string product;
  double constant = 0.0;
  std::optional<std::string> profile;
  double scale = 1.0;
};

struct DemandSet {
  std::vector<Demand> demands;

  const Demand* find(const std::string& product) const {
    for (const auto& d : demands)
      if (d.product == product) return &d;
    return nullptr;
  }
};

struct EmissionsSchedule {
  // Annual cap in Mt CO2-eq; nullopt means the year is uncapped.
  std::map<int, std::optional<double>> caps_mt;
  std::optional<double> residual_penalty;  // k€ per t CO2-eq

  bool covers(int year) const { return caps_mt.contains(year); }
};

struct ProcessOverride {
  std::optional<YearSeries> capex;
  std::optional<YearSeries> opex_fixed;
  std::optional<FixedOpexMode> opex_fixed_mode;
  std::optional<YearSeries> opex_var;
  std::optional<int> available_from;
};

struct ScenarioOverride {
  std::string description;
  std::map<std::string, ProcessOverride> processes;
};

struct ScenarioConfig {
  std::string name = "base";
  std::vector<int> investment_years;
  int base_year = 0;
  int foresight_periods = 1;
  int typical_periods = 6;
  int hours_per_typical_period = 6;
  double interest_rate = 0.05;
  double annuity_years = 30.0;
  std::optional<double> h2_import_penalty;  // k€ per tonne
  unsigned long long seed = 42;
  std::map<std::string, ScenarioOverride> overrides;
  std::vector<std::string> applied_overrides;

  int investment_step() const {
    return investment_years.size() > 1
               ? investment_years[1] - investment_years[0]
               : 1;
  }
};

// A product whose Cost-Avoided is tracked, with its competing routes.
struct ServiceSpec {
  std::string id;
  std::string product;
  std::string fossil_process;
  std::string electrified_process;
  bool split_point_source = false;
  double report_divisor = 1.0;  // e.g. 15.4 MWh/t for gas-equivalent heat
  std::string report_unit;
};

struct AnalyticsConfig {
  std::vector<ServiceSpec> services;
  std::vector<std::string> priority_sectors;
  std::map<std::string, std::string> default_producers;
};

struct Model {
  std::string name;
  std::vector<Product> products;
  std::vector<ProcessSpec> processes;
  DemandSet demands;
  EmissionsSchedule schedule;
  ScenarioConfig scenario;
  std::vector<Vintage> initial_stock;
  std::map<std::string, std::vector<double>> profiles;
  AnalyticsConfig analytics;

  const Product* find_product(std::string_view id) const {
    for (const auto& p : products)
      if (p.id == id) return &p;
    return nullptr;
  }
  const ProcessSpec* find_process(std::string_view id) const {
    for (const auto& p : processes)
      if (p.id == id) return &p;
    return nullptr;
  }
  const Product& product(std::string_view id) const {
    if (auto* p = find_product(id)) return *p;
    throw InvalidArgument("unknown product '" + std::string(id) + "'");
  }
  const ProcessSpec& process(std::string_view id) const {
    if (auto* p = find_process(id)) return *p;
    throw InvalidArgument("unknown process '" + std::string(id) + "'");
  }
  const Product* find_role(ProductRole role) const {
    for (const auto& p : products)
      if (p.role == role) return &p;
    return nullptr;
  }
};

// Adds one import process per importable product ("import:<product>") and
// applies the scenario's hydrogen import penalty. Idempotent.
inline void materialize_imports(Model& model) {
  for (const auto& prod : model.products) {
    if (!prod.import_price) continue;
    const std::string id = "import:" + prod.id;
    if (model.find_process(id)) continue;
    ProcessSpec p;
    p.id = id;
    p.reference_product = prod.id;
    p.flows[prod.id] = YearSeries(1.0);
    double price = *prod.import_price;
    if (prod.role == ProductRole::hydrogen && model.scenario.h2_import_penalty)
      price = *model.scenario.h2_import_penalty;
    p.opex_var = YearSeries(price);
    p.direct_emissions = YearSeries(prod.import_emissions.value_or(0.0));
    p.tags = {ProcessTag::import};
    p.sector = prod.sector;
    p.buildable = false;
    p.lifetime = 1e9;
    p.provenance = prod.provenance;
    model.processes.push_back(std::move(p));
  }
}

// Applies a named scenario override; "base" (or empty) is a no-op.
inline void apply_scenario(Model& model, const std::string& scenario) {
  if (scenario.empty() || scenario == "base") return;
  auto it = model.scenario.overrides.find(scenario);
  if (it == model.scenario.overrides.end())
    throw InvalidArgument("unknown scenario '" + scenario + "'");
  for (const auto& [pid, ov] : it->second.processes) {
    auto pit = std::find_if(model.processes.begin(), model.processes.end(),
                            [&](const ProcessSpec& p) { return p.id == pid; });
    if (pit == model.processes.end())
      throw InvalidArgument("scenario '" + scenario +
                            "' overrides unknown process '" + pid + "'");
    if (ov.capex) pit->capex = *ov.capex;
    if (ov.opex_fixed) pit->opex_fixed = *ov.opex_fixed;
    if (ov.opex_fixed_mode) pit->opex_fixed_mode = *ov.opex_fixed_mode;
    if (ov.opex_var) pit->opex_var = *ov.opex_var;
    if (ov.available_from) pit->available_from = *ov.available_from;
  }
  model.scenario.name = scenario;
  model.scenario.applied_overrides.push_back(scenario);
}

// ---------------------------------------------------------------------------

inline std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::tonne: return "tonne";
    case Unit::mwh: return "MWh";
    case Unit::vehicle_km: return "vehicle-km";
    case Unit::tonne_co2: return "tonne-CO2";
  }
  return "?";
}

inline std::optional<Unit> parse_unit(std::string_view s) {
  if (s == "tonne" || s == "t") return Unit::tonne;
  if (s == "MWh" || s == "mwh") return Unit::mwh;
  if (s == "vehicle-km" || s == "vkm") return Unit::vehicle_km;
  if (s == "tonne-CO2" || s == "tCO2") return Unit::tonne_co2;
  return std::nullopt;
}

inline std::string_view to_string(ProductRole r) {
  switch (r) {
    case ProductRole::none: return "none";
    case ProductRole::electricity: return "electricity";
    case ProductRole::co2_captured: return "co2_captured";
    case ProductRole::co2_point_source: return "co2_point_source";
    case ProductRole::hydrogen: return "hydrogen";
  }
  return "?";
}

inline std::optional<ProductRole> parse_role(std::string_view s) {
  for (auto r : {ProductRole::none, ProductRole::electricity,
                 ProductRole::co2_captured, ProductRole::co2_point_source,
                 ProductRole::hydrogen}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

inline std::string_view to_string(ProcessTag t) {
  switch (t) {
    case ProcessTag::fossil: return "fossil";
    case ProcessTag::electrified: return "electrified";
    case ProcessTag::import: return "import";
    case ProcessTag::capture: return "capture";
    case ProcessTag::heat: return "heat";
    case ProcessTag::storage: return "storage";
    case ProcessTag::renewable: return "renewable";
  }
  return "?";
}

inline std::optional<ProcessTag> parse_tag(std::string_view s) {
  for (auto t : {ProcessTag::fossil, ProcessTag::electrified,
                 ProcessTag::import, ProcessTag::capture, ProcessTag::heat,
                 ProcessTag::storage, ProcessTag::renewable}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

}  // namespace pathforge

#endif  // PATHFORGE_MODEL_HPP_
