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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lp_fixtures.hpp"
#include "oracles.hpp"
#include "pathforge/commands.hpp"
#include "toys.hpp"

using namespace pathforge;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << " | ";
    else detail << "; ";
    pass = false;
    detail << why;
  }
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ":" << o.detail.str() << std::endl;
  if (!o.pass) ++failures;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void annuity() {
  Outcome o;
  const double a = annuity_factor(0.05, 30);
  const double ref = oracle::annuity_by_series(0.05, 30);
  o.detail << " annuity(0.05,30)=" << num(a) << " target 0.06505 tol 1e-5";
  if (std::abs(a - 0.06505) > 1e-5) o.fail("off target");
  if (std::abs(a - ref) > 1e-12) o.fail("series oracle " + num(ref));
  report(1, "annuity factor", o);
}

void table_composites() {
  struct Column {
    const char* name;
    double E, delta_e, delta_op, composite;
  };
  const Column cols[] = {{"methanol", 11.1, 0.33, 0.24, 1.05},
                         {"ammonia", 8.8, 0.11, 0.17, 0.44},
                         {"olefins", 34.3, 0.14, 0.07, 0.41},
                         {"aromatics", 52.0, 0.07, 0.02, 0.19}};
  Outcome o;
  o.detail << " tol 0.01;";
  double prev_unit = kInf, prev_mwh = kInf;
  for (const auto& c : cols) {
    const auto ca = cost_avoided(IntensityVector{0.0, c.delta_op, c.delta_e}, IntensityVector{c.E, 0.0, 0.0}, 2.46);
    o.detail << " " << c.name << "=" << num(ca.per_unit);
    if (std::abs(ca.per_unit - c.composite) > 0.01) o.fail(std::string(c.name) + " composite");
    if (!(ca.per_unit < prev_unit) || !(ca.per_mwh < prev_mwh)) o.fail(std::string("ordering at ") + c.name);
    prev_unit = ca.per_unit;
    prev_mwh = ca.per_mwh;
  }
  report(2, "cost-avoided composites", o);
}

void rollup() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto chain = toys::methanol_chain();
  const auto elec = electricity_by_process(chain.model, "methanol", 2040, chain.mixes);
  const double capture = elec.at("dac") + elec.at("point_source_capture");
  const double heat = elec.at("heat_pump_lt");
  o.detail << " capture=" << num(capture) << " (0.94) lt-heat=" << num(heat) << " (1.12) tol 0.01;";
  if (std::abs(capture - 0.94) > 0.01) o.fail("capture branch");
  if (std::abs(heat - 1.12) > 0.01) o.fail("heat branch");
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const auto rc = toys::random_chain(seed);
    for (const auto& root : rc.roots) {
      const double cost = rollup_intensity(rc.model, root, 2030, {}, Quantity::cost);
      const double em = rollup_intensity(rc.model, root, 2030, {}, Quantity::emissions);
      const double ce = oracle::tree_expand(rc.cost_tree, root);
      const double ee = oracle::tree_expand(rc.emission_tree, root);
      worst = std::max({worst, std::abs(cost - ce) / (1.0 + std::abs(ce)), std::abs(em - ee) / (1.0 + std::abs(ee))});
    }
  }
  o.detail << " tree expansion rel err " << num(worst) << " (tol 1e-12, 100 chains)";
  if (worst > 1e-12) o.fail("tree expansion");
  const double secs = seconds_since(t0);
  o.detail << "; " << num(secs) << " s";
  if (secs > 1.0) o.fail("runtime");
  report(3, "supply-chain rollup", o);
}

void solver() {
  const auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(500);
  int optimal = 0, infeasible = 0, bad = 0;
  double worst_obj = 0.0, worst_gap = 0.0, worst_dual = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto d = fixtures::random_dense_lp(rng);
    const auto sol = solve(fixtures::to_lp(d));
    const auto check = fixtures::check_against_oracle(d, sol, 1e-8, 1e-6);
    if (sol.optimal()) ++optimal;
    else if (sol.status == LpStatus::infeasible) ++infeasible;
    worst_obj = std::max(worst_obj, check.objective_error);
    worst_gap = std::max(worst_gap, check.duality_gap);
    worst_dual = std::min(worst_dual, check.worst_binding_le_dual);
    if (!check.ok && bad++ < 3) o.fail("trial " + std::to_string(trial) + ": " + check.detail);
  }
  const double secs = seconds_since(t0);
  o.detail << " 500 LPs (" << optimal << " optimal, " << infeasible << " infeasible), max |obj err| "
           << num(worst_obj) << " (tol 1e-8), max gap " << num(worst_gap)
           << " (tol 1e-6), min binding <= dual " << num(worst_dual) << "; " << num(secs) << " s";
  if (bad > 0) o.fail(std::to_string(bad) + " mismatches");
  if (secs > 30.0) o.fail("runtime");
  report(4, "simplex vs vertex oracle", o);
}

void merit_order() {
  const auto t0 = Clock::now();
  Outcome o;
  double worst = 0.0;
  long compared = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const auto toy = toys::decoupled_toy(seed);
    const auto res = run_pathway(toy.model);
    const auto& r = res.years[0];
    for (int t = 0; t < res.tps.n_steps(); ++t) {
      const auto curve = curve_at(toy.model, res, r.year, t);
      const auto pred = predict_dispatch(curve, curve.renewable_supply);
      for (const auto& s : toy.services) {
        const double lp = r.operation.at(s.id + "_elec")[t] / std::min(s.capacity, s.demand);
        worst = std::max(worst, std::abs(lp - pred.at(s.id)));
        ++compared;
      }
    }
  }
  const double secs = seconds_since(t0);
  o.detail << " 50 toys, " << compared << " fractions, max |lp - predicted| " << num(worst) << " (tol 1e-9); "
           << num(secs) << " s";
  if (worst > 1e-9) o.fail("dispatch mismatch");
  if (secs > 60.0) o.fail("runtime");
  report(5, "merit order equals LP dispatch", o);
}

void toy_ordering() {
  const auto t0 = Clock::now();
  Outcome o;
  const auto toy = toys::three_product_toy(6);
  oracle::ScheduleProblem pb;
  pb.years = toy.model.scenario.investment_years;
  for (size_t i = 0; i < toy.products.size(); ++i) {
    pb.demand.push_back(toy.demand);
    pb.fossil_cost.push_back(toy.fossil_opex);
    pb.elec_cost.push_back(toy.elec_opex[i] + toy.power_price);
  }
  pb.capacity_cost = oracle::annuity_by_series(0.05, 30) * toy.capex;
  for (int y : pb.years) pb.cap_t.push_back(*toy.model.schedule.caps_mt.at(y) * 1e6);
  pb.chunk = 5.0;
  pb.max_chunks = 2;
  const auto best = oracle::enumerate_schedules(pb);
  const auto res = run_pathway(toy.model);
  const auto lp_years = toys::first_electrification(toy, res);
  std::map<std::string, int> ref_years;
  for (size_t i = 0; i < toy.products.size(); ++i) {
    ref_years[toy.products[i]] = 0;
    for (size_t y = 0; y < pb.years.size(); ++y)
      if (best.chunks[i][y] > 0) {
        ref_years[toy.products[i]] = pb.years[y];
        break;
      }
  }
  o.detail << " " << best.schedules_checked << " schedules; first years lp/oracle";
  for (const auto& id : toy.products) o.detail << " " << id << "=" << lp_years.at(id) << "/" << ref_years.at(id);
  if (!best.feasible) o.fail("oracle infeasible");
  if (lp_years != ref_years) o.fail("first years differ from enumeration");
  if (!(lp_years.at("a") > 0 && lp_years.at("a") < lp_years.at("b") && lp_years.at("b") < lp_years.at("c")))
    o.fail("not ordered by cost avoided");
  const double rel = std::abs(res.years[0].window_objective - best.cost) / best.cost;
  o.detail << "; objective rel err " << num(rel) << " (tol 1e-6)";
  if (rel > 1e-6) o.fail("objective");
  const double secs = seconds_since(t0);
  o.detail << "; " << num(secs) << " s";
  if (secs > 60.0) o.fail("runtime");
  report(6, "three-product ordering", o);
}

// Earliest year with new capacity on any of the listed processes (0 = never).
int first_build(const PathwayResult& res, const std::vector<std::string>& procs) {
  for (const auto& r : res.years)
    for (const auto& p : procs) {
      auto it = r.new_capacity.find(p);
      if (it != r.new_capacity.end() && it->second > 1e-6) return r.year;
    }
  return 0;
}

void desk(const fs::path& dataset) {
  const fs::path out = fs::temp_directory_path() / "pathforge_acceptance";
  fs::remove_all(out);
  CommandOptions opts;
  opts.dataset = dataset;
  opts.out = out;
  std::ostringstream sink;
  opts.report = &sink;
  opts.log = &sink;
  const fs::path dir = out / "base" / "pathway";

  Outcome o7;
  auto t0 = Clock::now();
  const int rc = cmd_pathway(opts);
  const double secs = seconds_since(t0);
  std::map<std::string, std::string> first;
  if (rc != kExitOk) {
    o7.fail("cmd_pathway exit " + std::to_string(rc) + ": " + sink.str());
  } else {
    for (const auto& e : fs::directory_iterator(dir)) first[e.path().filename()] = slurp(e.path());
    const auto res = result_from_json(json::parse(first.at("result.json")));
    const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
        {"methanol", {"methanol_ccu"}},
        {"ammonia", {"ammonia_hb"}},
        {"olefins", {"ethylene_mto", "propylene_mto"}},
        {"aromatics", {"benzene_mta", "toluene_mta", "xylene_mta"}}};
    int prev = 0;
    o7.detail << " first electrification";
    for (const auto& [name, procs] : groups) {
      int y = first_build(res, procs);
      o7.detail << " " << name << "=" << y;
      if (y == 0) {
        o7.fail(name + " never electrified");
        y = 9999;
      }
      if (y < prev) o7.fail(name + " out of order");
      prev = y;
    }
    double worst = -kInf;
    for (const auto& r : res.years) {
      if (!r.cap_mt) continue;
      worst = std::max(worst, r.accounted_emissions_mt - r.residual_mt - *r.cap_mt);
    }
    o7.detail << "; max(net - residual - cap) " << num(worst) << " Mt (tol 1e-6)";
    if (worst > 1e-6) o7.fail("cap violated");
    const auto& last = res.years.back();
    const double cap = last.cap_mt.value_or(kInf);
    o7.detail << "; final net " << num(last.accounted_emissions_mt) << " Mt, cap " << num(cap) << " + residual "
              << num(last.residual_mt);
    if (last.accounted_emissions_mt > cap + last.residual_mt + 1e-6) o7.fail("final net above cap + residual");
  }
  o7.detail << "; " << num(secs) << " s (limit 300)";
  if (secs > 300.0) o7.fail("runtime");
  report(7, "desk dataset reproduction", o7);

  Outcome o8;
  if (rc != kExitOk) {
    o8.fail("first run failed");
  } else {
    t0 = Clock::now();
    const int rc2 = cmd_pathway(opts);
    if (rc2 != kExitOk) o8.fail("second run exit " + std::to_string(rc2));
    int compared = 0;
    for (const auto& [name, text] : first) {
      const std::string again = slurp(dir / name);
      if (name == "manifest.json") {
        json a = json::parse(text), b = json::parse(again);
        a.erase("timestamps");
        b.erase("timestamps");
        if (a != b) o8.fail("manifest differs beyond timestamps");
      } else if (again != text) {
        o8.fail(name + " differs");
      }
      ++compared;
    }
    o8.detail << " " << compared << " files compared; second run " << num(seconds_since(t0)) << " s";
  }
  report(8, "pathway determinism", o8);
  fs::remove_all(out);
}

void use_phase() {
  struct Case {
    const char* id;
    int c, h, o, n;
    double target;
  };
  const Case cases[] = {{"ethylene", 2, 4, 0, 0, 3.143}, {"methanol", 1, 4, 1, 0, 1.375}, {"ammonia", 0, 3, 0, 1, 0.0}};
  Outcome o;
  o.detail << " tol 1e-3;";
  for (const auto& c : cases) {
    Product p = fixtures::product(c.id);
    const double molar = 12.0 * c.c + c.h + 16.0 * c.o + 14.0 * c.n;
    p.carbon_mass_fraction = 12.0 * c.c / molar;
    p.use_phase_combusts = true;
    const double v = use_phase_emissions(p);
    const double ref = oracle::combustion_co2_per_tonne(c.c, c.h, c.o, c.n);
    o.detail << " " << c.id << "=" << num(v);
    if (std::abs(v - c.target) > 1e-3) o.fail(std::string(c.id) + " off target");
    if (std::abs(v - ref) > 1e-3) o.fail(std::string(c.id) + " vs combustion oracle " + num(ref));
  }
  report(9, "use-phase stoichiometry", o);
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dataset = argc > 1 ? fs::path(argv[1]) : fs::path(PATHFORGE_DATA_DIR) / "desk" / "dataset.json";
  annuity();
  table_composites();
  rollup();
  solver();
  merit_order();
  toy_ordering();
  desk(dataset);
  use_phase();
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures;
}
