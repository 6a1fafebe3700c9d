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

// Dataset ingestion: one JSON document plus an optional side-car CSV with
// hourly profiles (8760 rows, header row of series ids).

#ifndef PATHFORGE_DATASET_IO_HPP_
#define PATHFORGE_DATASET_IO_HPP_

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathforge/errors.hpp"
#include "pathforge/model.hpp"

namespace pathforge {

using json = nlohmann::json;

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != '"') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw IoError("empty number in " + where);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data() + b, s.data() + e + 1, v);
  if (ec != std::errc() || ptr != s.data() + e + 1)
    throw IoError("bad number '" + s + "' in " + where);
  return v;
}

// Reads a table of named numeric columns.
inline std::map<std::string, std::vector<double>> read_series_csv(
    const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV '" + path.string() + "'");
  const auto header = split_csv_line(line);
  std::vector<std::vector<double>> cols(header.size());
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw IoError(path.string() + ":" + std::to_string(row) +
                    ": expected " + std::to_string(header.size()) + " cells");
    for (size_t c = 0; c < cells.size(); ++c)
      cols[c].push_back(
          parse_double(cells[c], path.string() + ":" + std::to_string(row)));
  }
  std::map<std::string, std::vector<double>> out;
  for (size_t c = 0; c < header.size(); ++c) out[header[c]] = std::move(cols[c]);
  return out;
}

namespace internal {

inline YearSeries series_from_json(const json& j) {
  if (j.is_number()) return YearSeries(j.get<double>());
  if (j.is_object()) {
    std::map<int, double> pts;
    for (const auto& [k, v] : j.items()) pts[std::stoi(k)] = v.get<double>();
    if (pts.empty()) throw IoError("empty year-keyed series");
    return YearSeries(std::move(pts));
  }
  throw IoError("expected number or year-keyed object, got " + j.dump());
}

inline json series_to_json(const YearSeries& s) {
  if (s.is_constant()) return s.min_value();
  json o = json::object();
  for (const auto& [y, v] : s.points()) o[std::to_string(y)] = v;
  return o;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

inline std::optional<double> opt_double(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

inline Product product_from_json(const json& j) {
  Product p;
  p.id = j.at("id").get<std::string>();
  p.name = get_or<std::string>(j, "name", p.id);
  auto unit = parse_unit(get_or<std::string>(j, "unit", "tonne"));
  if (!unit) throw IoError("product '" + p.id + "': unknown unit");
  p.unit = *unit;
  p.carbon_mass_fraction = get_or(j, "carbon_mass_fraction", 0.0);
  p.use_phase_combusts = get_or(j, "use_phase_combusts", false);
  p.import_price = opt_double(j, "import_price");
  p.import_emissions = opt_double(j, "import_emissions");
  p.sector = get_or<std::string>(j, "sector", "");
  auto role = parse_role(get_or<std::string>(j, "role", "none"));
  if (!role) throw IoError("product '" + p.id + "': unknown role");
  p.role = *role;
  p.free_disposal = get_or(j, "free_disposal", false);
  p.provenance = get_or<std::string>(j, "provenance", "");
  return p;
}

inline ProcessOverride override_from_json(const json& j) {
  ProcessOverride o;
  if (j.contains("capex")) o.capex = series_from_json(j["capex"]);
  if (j.contains("opex_fixed")) o.opex_fixed = series_from_json(j["opex_fixed"]);
  if (j.contains("opex_fixed_mode"))
    o.opex_fixed_mode = j["opex_fixed_mode"] == "percent_of_capex"
                            ? FixedOpexMode::percent_of_capex
                            : FixedOpexMode::absolute;
  if (j.contains("opex_var")) o.opex_var = series_from_json(j["opex_var"]);
  if (j.contains("available_from"))
    o.available_from = j["available_from"].get<int>();
  return o;
}

inline ProcessSpec process_from_json(const json& j) {
  ProcessSpec p;
  p.id = j.at("id").get<std::string>();
  p.reference_product = j.at("reference_product").get<std::string>();
  for (const auto& [k, v] : j.at("flows").items())
    p.flows[k] = series_from_json(v);
  if (j.contains("capex")) p.capex = series_from_json(j["capex"]);
  if (j.contains("opex_fixed")) p.opex_fixed = series_from_json(j["opex_fixed"]);
  if (get_or<std::string>(j, "opex_fixed_mode", "absolute") ==
      "percent_of_capex")
    p.opex_fixed_mode = FixedOpexMode::percent_of_capex;
  if (j.contains("opex_var")) p.opex_var = series_from_json(j["opex_var"]);
  if (j.contains("direct_emissions"))
    p.direct_emissions = series_from_json(j["direct_emissions"]);
  p.lifetime = get_or(j, "lifetime", 30.0);
  p.available_from = get_or(j, "available_from", 0);
  for (const auto& t : get_or(j, "tags", json::array())) {
    auto tag = parse_tag(t.get<std::string>());
    if (!tag) throw IoError("process '" + p.id + "': unknown tag " + t.dump());
    p.tags.insert(*tag);
  }
  p.sector = get_or<std::string>(j, "sector", "");
  if (j.contains("availability_profile"))
    p.availability_profile = j["availability_profile"].get<std::string>();
  if (j.contains("max_capacity"))
    p.max_capacity = series_from_json(j["max_capacity"]);
  if (j.contains("seed_from_demand")) {
    const auto& s = j["seed_from_demand"];
    p.seed_share = s.is_boolean() ? (s.get<bool>() ? 1.0 : 0.0)
                                  : s.get<double>();
  }
  p.charges_use_phase = get_or(j, "charges_use_phase", false);
  p.buildable = get_or(j, "buildable", true);
  if (j.contains("storage")) {
    const auto& s = j["storage"];
    StorageParams sp;
    sp.charge_efficiency = get_or(s, "charge_efficiency", 1.0);
    sp.discharge_efficiency = get_or(s, "discharge_efficiency", 1.0);
    sp.energy_to_power = get_or(s, "energy_to_power", 1.0);
    p.storage = sp;
    p.tags.insert(ProcessTag::storage);
  }
  p.provenance = get_or<std::string>(j, "provenance", "");
  return p;
}

}  // namespace internal

// Parses a dataset document. Profiles are loaded from `base_dir` when the
// document names a side-car CSV.
inline Model model_from_json(const json& doc,
                             const std::filesystem::path& base_dir = {}) {
  using namespace internal;
  Model m;
  try {
    m.name = get_or<std::string>(doc, "name", "dataset");
    for (const auto& j : doc.at("products")) m.products.push_back(product_from_json(j));
    for (const auto& j : doc.at("processes")) m.processes.push_back(process_from_json(j));
    for (const auto& j : doc.at("demands")) {
      Demand d;
      d.product = j.at("product").get<std::string>();
      if (j.contains("annual")) d.constant = j["annual"].get<double>() / kHoursPerYear;
      d.constant = get_or(j, "constant", d.constant);
      if (j.contains("profile")) d.profile = j["profile"].get<std::string>();
      d.scale = get_or(j, "scale", 1.0);
      m.demands.demands.push_back(d);
    }
    const auto& sched = doc.at("emissions_schedule");
    for (const auto& [k, v] : sched.at("caps_mt").items()) {
      m.schedule.caps_mt[std::stoi(k)] =
          v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    }
    m.schedule.residual_penalty = opt_double(sched, "residual_penalty");

    const auto& sc = doc.at("scenario");
    m.scenario.investment_years = sc.at("investment_years").get<std::vector<int>>();
    m.scenario.base_year = get_or(sc, "base_year", m.scenario.investment_years.empty()
                                                       ? 0
                                                       : m.scenario.investment_years.front());
    m.scenario.foresight_periods = get_or(sc, "foresight_periods", 1);
    m.scenario.typical_periods = get_or(sc, "typical_periods", 6);
    m.scenario.hours_per_typical_period = get_or(sc, "hours_per_typical_period", 6);
    m.scenario.interest_rate = get_or(sc, "interest_rate", 0.05);
    m.scenario.annuity_years = get_or(sc, "annuity_years", 30.0);
    m.scenario.h2_import_penalty = opt_double(sc, "h2_import_penalty");
    m.scenario.seed = get_or<unsigned long long>(sc, "seed", 42ULL);
    if (sc.contains("overrides")) {
      for (const auto& [name, o] : sc["overrides"].items()) {
        ScenarioOverride so;
        so.description = get_or<std::string>(o, "description", "");
        for (const auto& [pid, po] : o.at("processes").items())
          so.processes[pid] = override_from_json(po);
        m.scenario.overrides[name] = std::move(so);
      }
    }
    for (const auto& j : get_or(doc, "initial_stock", json::array())) {
      m.initial_stock.push_back({j.at("process").get<std::string>(),
                                 j.at("build_year").get<int>(),
                                 j.at("capacity").get<double>()});
    }
    if (doc.contains("analytics")) {
      const auto& a = doc["analytics"];
      for (const auto& s : get_or(a, "services", json::array())) {
        ServiceSpec sv;
        sv.id = s.at("id").get<std::string>();
        sv.product = s.at("product").get<std::string>();
        sv.fossil_process = s.at("fossil").get<std::string>();
        sv.electrified_process = s.at("electrified").get<std::string>();
        sv.split_point_source = get_or(s, "split_point_source", false);
        sv.report_divisor = get_or(s, "report_divisor", 1.0);
        sv.report_unit = get_or<std::string>(s, "report_unit", "");
        m.analytics.services.push_back(sv);
      }
      m.analytics.priority_sectors =
          get_or(a, "priority_sectors", std::vector<std::string>{});
      m.analytics.default_producers =
          get_or(a, "default_producers", std::map<std::string, std::string>{});
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed dataset: ") + e.what());
  }
  if (doc.contains("profiles_csv")) {
    m.profiles = read_series_csv(base_dir / doc["profiles_csv"].get<std::string>());
  }
  return m;
}

inline json load_dataset_json(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError("cannot parse '" + path.string() + "': " + e.what());
  }
}

// Loads a dataset, applies the named scenario and materializes imports.
inline Model load_model(const std::filesystem::path& path,
                        const std::string& scenario = "base") {
  Model m = model_from_json(load_dataset_json(path), path.parent_path());
  apply_scenario(m, scenario);
  materialize_imports(m);
  return m;
}

}  // namespace pathforge

#endif  // PATHFORGE_DATASET_IO_HPP_
