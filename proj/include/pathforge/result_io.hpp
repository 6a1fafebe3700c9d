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

// JSON and CSV persistence of typical periods and pathway results.

#ifndef PATHFORGE_RESULT_IO_HPP_
#define PATHFORGE_RESULT_IO_HPP_

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pathforge/dataset_io.hpp"
#include "pathforge/pathway.hpp"
#include "pathforge/timeagg.hpp"

namespace pathforge {

inline std::string fmt_num(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline json tps_to_json(const TypicalPeriodSet& tps) {
  json j;
  j["n_periods"] = tps.n_periods;
  j["steps_per_period"] = tps.steps_per_period;
  j["weights"] = tps.weights;
  j["medoids"] = tps.medoids;
  j["values"] = tps.values;
  json hm = json::array();
  for (const auto& s : tps.hour_map) hm.push_back({s.period, s.step});
  j["hour_map"] = hm;
  return j;
}

inline TypicalPeriodSet tps_from_json(const json& j) {
  TypicalPeriodSet tps;
  tps.n_periods = j.at("n_periods");
  tps.steps_per_period = j.at("steps_per_period");
  tps.weights = j.at("weights").get<std::vector<int>>();
  tps.medoids = j.at("medoids").get<std::vector<int>>();
  tps.values = j.at("values").get<SeriesMap>();
  for (const auto& e : j.at("hour_map")) tps.hour_map.push_back({e[0].get<int>(), e[1].get<int>()});
  return tps;
}

// Typical values as CSV: period, step, weight, then one column per series.
inline std::string tps_to_csv(const TypicalPeriodSet& tps) {
  std::ostringstream out;
  out << "period,step,weight_periods";
  for (const auto& [id, v] : tps.values) out << "," << id;
  out << "\n";
  for (int k = 0; k < tps.n_periods; ++k)
    for (int s = 0; s < tps.steps_per_period; ++s) {
      out << k << "," << s << "," << tps.weights[k];
      for (const auto& [id, v] : tps.values) out << "," << fmt_num(v[tps.flat(k, s)]);
      out << "\n";
    }
  return out.str();
}

inline json vintages_to_json(const std::vector<Vintage>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"process", v.process}, {"build_year", v.build_year}, {"capacity", v.capacity}});
  return a;
}

inline std::vector<Vintage> vintages_from_json(const json& a) {
  std::vector<Vintage> out;
  for (const auto& v : a) out.push_back({v.at("process"), v.at("build_year"), v.at("capacity")});
  return out;
}

inline json result_to_json(const PathwayResult& r) {
  json j;
  j["dataset"] = r.dataset;
  j["scenario"] = r.scenario;
  j["typical_periods"] = tps_to_json(r.tps);
  json years = json::array();
  for (const auto& y : r.years) {
    json e;
    e["year"] = y.year;
    e["window"] = y.window;
    e["new_capacity"] = y.new_capacity;
    e["installed_capacity"] = y.installed_capacity;
    e["operation"] = y.operation;
    e["charge"] = y.charge;
    e["discharge"] = y.discharge;
    e["vent"] = y.vent;
    e["sector_emissions_mt"] = y.sector_emissions_mt;
    e["accounted_emissions_mt"] = y.accounted_emissions_mt;
    e["residual_mt"] = y.residual_mt;
    e["cap_mt"] = y.cap_mt ? json(*y.cap_mt) : json(nullptr);
    e["co2_price"] = y.co2_price;
    e["total_cost"] = y.total_cost;
    e["window_objective"] = y.window_objective;
    e["iterations"] = y.iterations;
    e["production_mix"] = y.production_mix;
    e["stock"] = vintages_to_json(y.stock);
    e["retired"] = vintages_to_json(y.retired);
    years.push_back(e);
  }
  j["years"] = years;
  return j;
}

inline PathwayResult result_from_json(const json& j) {
  PathwayResult r;
  try {
    r.dataset = j.at("dataset");
    r.scenario = j.at("scenario");
    r.tps = tps_from_json(j.at("typical_periods"));
    for (const auto& e : j.at("years")) {
      YearResult y;
      y.year = e.at("year");
      y.window = e.at("window").get<std::vector<int>>();
      y.new_capacity = e.at("new_capacity").get<std::map<std::string, double>>();
      y.installed_capacity = e.at("installed_capacity").get<std::map<std::string, double>>();
      using Ops = std::map<std::string, std::vector<double>>;
      y.operation = e.at("operation").get<Ops>();
      y.charge = e.at("charge").get<Ops>();
      y.discharge = e.at("discharge").get<Ops>();
      y.vent = e.at("vent").get<Ops>();
      y.sector_emissions_mt = e.at("sector_emissions_mt").get<std::map<std::string, double>>();
      y.accounted_emissions_mt = e.at("accounted_emissions_mt");
      y.residual_mt = e.at("residual_mt");
      if (!e.at("cap_mt").is_null()) y.cap_mt = e.at("cap_mt").get<double>();
      y.co2_price = e.at("co2_price");
      y.total_cost = e.at("total_cost");
      y.window_objective = e.at("window_objective");
      y.iterations = e.at("iterations");
      y.production_mix = e.at("production_mix").get<std::map<std::string, std::map<std::string, double>>>();
      y.stock = vintages_from_json(e.at("stock"));
      y.retired = vintages_from_json(e.at("retired"));
      r.years.push_back(std::move(y));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed result: ") + e.what());
  }
  return r;
}

inline std::string capacities_csv(const PathwayResult& r) {
  std::ostringstream out;
  out << "year,process,new_capacity_unit_per_h,installed_capacity_unit_per_h\n";
  for (const auto& y : r.years)
    for (const auto& [p, c] : y.installed_capacity) {
      auto it = y.new_capacity.find(p);
      out << y.year << "," << p << "," << fmt_num(it == y.new_capacity.end() ? 0.0 : it->second) << ","
          << fmt_num(c) << "\n";
    }
  return out.str();
}

inline std::string operation_csv(const PathwayResult& r) {
  std::ostringstream out;
  out << "year,process,period,step,weight_h,output_unit_per_h\n";
  const int S = r.tps.steps_per_period;
  for (const auto& y : r.years)
    for (const auto& [p, ops] : y.operation)
      for (size_t t = 0; t < ops.size(); ++t)
        out << y.year << "," << p << "," << t / S << "," << t % S << ","
            << r.tps.weights[t / S] << "," << fmt_num(ops[t]) << "\n";
  return out.str();
}

inline std::string emissions_csv(const PathwayResult& r) {
  std::ostringstream out;
  out << "year,sector,emissions_Mt_co2eq\n";
  for (const auto& y : r.years)
    for (const auto& [s, e] : y.sector_emissions_mt) out << y.year << "," << s << "," << fmt_num(e) << "\n";
  return out.str();
}

inline std::string prices_csv(const PathwayResult& r) {
  std::ostringstream out;
  out << "year,co2_price_keur_per_t,cap_Mt,accounted_Mt,residual_Mt,total_cost_keur\n";
  for (const auto& y : r.years)
    out << y.year << "," << fmt_num(y.co2_price) << "," << (y.cap_mt ? fmt_num(*y.cap_mt) : "") << ","
        << fmt_num(y.accounted_emissions_mt) << "," << fmt_num(y.residual_mt) << "," << fmt_num(y.total_cost)
        << "\n";
  return out.str();
}

inline std::string production_mix_csv(const PathwayResult& r) {
  std::ostringstream out;
  out << "year,product,process,share\n";
  for (const auto& y : r.years)
    for (const auto& [prod, mix] : y.production_mix)
      for (const auto& [p, s] : mix) out << y.year << "," << prod << "," << p << "," << fmt_num(s) << "\n";
  return out.str();
}

}  // namespace pathforge

#endif  // PATHFORGE_RESULT_IO_HPP_
