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

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "lp_fixtures.hpp"
#include "model_fixtures.hpp"
#include "oracles.hpp"
#include "pathforge/lp_build.hpp"
#include "pathforge/mps.hpp"
#include "pathforge/simplex.hpp"

using namespace pathforge;
namespace fs = std::filesystem;

namespace {

constexpr double kHours = kHoursPerYear;

double col(const WindowLp& w, const LpSolution& s, const std::string& name) {
  const int j = w.lp.find_column(name);
  if (j < 0) throw std::runtime_error("no column " + name);
  return s.primal[j];
}

// Two routes to one product: dirty (opex 1, 1 t/unit) and clean (opex 2).
Model dirty_clean(double demand, std::optional<double> cap_mt, double capex = 0.0) {
  using namespace fixtures;
  Model m = empty_model({2020}, 2020);
  m.products = {product("x")};
  m.processes = {process("dirty", "x", {.opex_var = 1.0, .direct = 1.0, .capex = capex}),
                 process("clean", "x", {.opex_var = 2.0, .capex = capex})};
  m.demands.demands = {constant_demand("x", demand)};
  m.schedule.caps_mt[2020] = cap_mt;
  return m;
}

WindowLp build(const Model& m, const TypicalPeriodSet& tps, const CapacityStock& stock = {}) {
  return build_window_lp(m, stock, m.scenario.investment_years, tps, m.schedule);
}

// Reads fixed-format MPS back into dense form, whitespace-separated.
oracle::DenseLp parse_mps(const std::string& text) {
  oracle::DenseLp d;
  std::map<std::string, int> rows, cols;
  std::string section, line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> f;
    for (std::string t; ls >> t;) f.push_back(t);
    if (line[0] != ' ') {
      section = f[0];
      continue;
    }
    if (section == "ROWS") {
      if (f[0] == "N") continue;
      rows[f[1]] = static_cast<int>(d.b.size());
      d.sense.push_back(f[0] == "L" ? -1 : f[0] == "G" ? 1 : 0);
      d.b.push_back(0.0);
    } else if (section == "COLUMNS") {
      if (!cols.count(f[0])) {
        cols[f[0]] = static_cast<int>(d.c.size());
        d.c.push_back(0.0);
        d.lo.push_back(0.0);
        d.hi.push_back(1e30);
        for (auto& r : d.a) r.push_back(0.0);
      }
      const int j = cols[f[0]];
      for (size_t k = 1; k + 1 < f.size(); k += 2) {
        const double v = std::stod(f[k + 1]);
        if (f[k] == "OBJ") {
          d.c[j] = v;
        } else {
          if (d.a.size() < d.b.size()) d.a.resize(d.b.size(), std::vector<double>(d.c.size(), 0.0));
          d.a[rows.at(f[k])][j] = v;
        }
      }
    } else if (section == "RHS") {
      for (size_t k = 1; k + 1 < f.size(); k += 2)
        if (f[k] != "OBJ") d.b[rows.at(f[k])] = std::stod(f[k + 1]);
    } else if (section == "BOUNDS") {
      const int j = cols.at(f[2]);
      if (f[0] == "UP") d.hi[j] = std::stod(f[3]);
      if (f[0] == "LO") d.lo[j] = std::stod(f[3]);
      if (f[0] == "FX") d.lo[j] = d.hi[j] = std::stod(f[3]);
    }
  }
  d.a.resize(d.b.size(), std::vector<double>(d.c.size(), 0.0));
  for (auto& r : d.a) r.resize(d.c.size(), 0.0);
  return d;
}

}  // namespace

TEST(WindowLp, SingleProcessBuildsDemand) {
  using namespace fixtures;
  Model m = empty_model({2020}, 2020);
  m.products = {product("x")};
  m.processes = {process("p", "x", {.opex_var = 0.5, .capex = 100.0, .opex_fixed = 2.0})};
  m.demands.demands = {constant_demand("x", 4.0)};
  const auto tps = constant_periods(6);
  const auto w = build(m, tps);
  EXPECT_TRUE(w.lp.check().empty());
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal()) << s.message;
  EXPECT_NEAR(col(w, s, "new_cap[p,2020]"), 4.0, 1e-9);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(col(w, s, lp_name("op", "p", 2020, 0, j)), 4.0, 1e-9);
  const double ann = oracle::annuity_by_series(0.05, 30);
  EXPECT_NEAR(s.objective, 4.0 * (ann * 100.0 + 2.0) + 4.0 * 0.5 * kHours, 1e-6);
}

TEST(WindowLp, HalfCapSplitsProductionAndPricesCarbon) {
  const double d = 10.0;
  const double cap = 0.5 * d * kHours * 1.0 / kTonnesPerMt;
  Model m = dirty_clean(d, cap);
  const auto w = build(m, constant_periods(6));
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  for (int j = 0; j < 6; ++j) {
    EXPECT_NEAR(col(w, s, lp_name("op", "dirty", 2020, 0, j)), 5.0, 1e-9);
    EXPECT_NEAR(col(w, s, lp_name("op", "clean", 2020, 0, j)), 5.0, 1e-9);
  }
  EXPECT_NEAR(s.objective, kHours * (5.0 * 1.0 + 5.0 * 2.0), 1e-6);
  // (opex_clean - opex_dirty) / e_dirty
  EXPECT_NEAR(shadow_price(w.lp, s, "emis[2020]"), (2.0 - 1.0) / 1.0, 1e-9);
}

TEST(WindowLp, NonBindingCapHasZeroPrice) {
  Model m = dirty_clean(10.0, 1.0);
  const auto w = build(m, constant_periods(6));
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(shadow_price(w.lp, s, "emis[2020]"), 0.0);
  EXPECT_NEAR(col(w, s, lp_name("op", "dirty", 2020, 0, 3)), 10.0, 1e-9);
  EXPECT_THROW(shadow_price(w.lp, s, "emis[1999]"), InvalidArgument);
}

TEST(WindowLp, ResidualAbsorbsExcessAtPenalty) {
  Model m = dirty_clean(10.0, 0.0);
  m.schedule.residual_penalty = 0.5;  // cheaper than switching
  const auto w = build(m, constant_periods(6));
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(col(w, s, "residual[2020]"), 10.0 * kHours, 1e-6);
  EXPECT_NEAR(shadow_price(w.lp, s, "emis[2020]"), 0.5, 1e-9);
}

TEST(WindowLp, DemandScalingScalesObjective) {
  using namespace fixtures;
  for (double alpha : {0.5, 3.0, 17.0}) {
    Model m = dirty_clean(7.0, std::nullopt, 50.0);
    m.processes[0].opex_fixed = YearSeries(1.5);
    const auto base = solve(build(m, constant_periods(6)).lp);
    m.demands.demands[0].constant *= alpha;
    const auto scaled = solve(build(m, constant_periods(6)).lp);
    ASSERT_TRUE(base.optimal() && scaled.optimal());
    EXPECT_NEAR(scaled.objective, alpha * base.objective, 1e-9 * alpha * base.objective);
  }
}

TEST(WindowLp, WithoutCapsOnlyCheapestRouteRuns) {
  using namespace fixtures;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  const double ann = oracle::annuity_by_series(0.05, 30);
  for (int trial = 0; trial < 20; ++trial) {
    Model m = empty_model({2020}, 2020);
    m.products = {product("x")};
    std::string best;
    double best_cost = 1e300;
    for (int k = 0; k < 4; ++k) {
      const std::string id = "r" + std::to_string(k);
      const double capex = 100 * u(rng), opex = u(rng) / 10, fixed = u(rng);
      m.processes.push_back(process(id, "x", {.opex_var = opex, .direct = u(rng), .capex = capex, .opex_fixed = fixed}));
      const double unit = ann * capex + fixed + kHours * opex;
      if (unit < best_cost) best_cost = unit, best = id;
    }
    m.demands.demands = {constant_demand("x", 3.0)};
    const auto w = build(m, constant_periods(6));
    const auto s = solve(w.lp);
    ASSERT_TRUE(s.optimal());
    for (const auto& p : m.processes)
      EXPECT_NEAR(col(w, s, lp_name("op", p.id, 2020, 0, 0)), p.id == best ? 3.0 : 0.0, 1e-9);
    EXPECT_NEAR(s.objective, 3.0 * best_cost, 1e-9 * s.objective);
  }
}

TEST(WindowLp, UnservedDemandIsInfeasible) {
  using namespace fixtures;
  Model m = empty_model({2020}, 2020);
  m.products = {product("x")};
  m.demands.demands = {constant_demand("x", 1.0)};
  const auto s = solve(build(m, constant_periods(6)).lp);
  EXPECT_EQ(s.status, LpStatus::infeasible);
}

TEST(WindowLp, RejectsUnknownStockAndUncoveredYear) {
  Model m = dirty_clean(1.0, std::nullopt);
  CapacityStock stock;
  stock.vintages = {{"ghost", 2010, 1.0}};
  EXPECT_THROW(build(m, constant_periods(6), stock), InvalidArgument);
  m.schedule.caps_mt.erase(2020);
  EXPECT_THROW(build(m, constant_periods(6)), InvalidArgument);
}

TEST(WindowLp, AvailabilityYearSuppressesInvestment) {
  Model m = dirty_clean(1.0, std::nullopt, 10.0);
  m.scenario.investment_years = {2020, 2025};
  m.schedule.caps_mt[2025] = std::nullopt;
  m.processes[1].available_from = 2025;
  const auto w = build(m, constant_periods(6));
  EXPECT_LT(w.lp.find_column("new_cap[clean,2020]"), 0);
  EXPECT_GE(w.lp.find_column("new_cap[clean,2025]"), 0);
}

TEST(WindowLp, InvestmentCostCoversAliveWindowYears) {
  Model m = dirty_clean(1.0, std::nullopt, 80.0);
  m.scenario.investment_years = {2020, 2025, 2030};
  for (int y : {2025, 2030}) m.schedule.caps_mt[y] = std::nullopt;
  m.processes[0].lifetime = 10;
  m.processes[1].opex_fixed = YearSeries(3.0);
  const auto w = build(m, constant_periods(6));
  const double ann = oracle::annuity_by_series(0.05, 30);
  EXPECT_NEAR(w.lp.column(w.lp.find_column("new_cap[dirty,2020]")).cost, 2 * ann * 80.0, 1e-12);
  EXPECT_NEAR(w.lp.column(w.lp.find_column("new_cap[clean,2020]")).cost, 3 * (ann * 80.0 + 3.0), 1e-12);
  EXPECT_NEAR(w.lp.column(w.lp.find_column("new_cap[clean,2030]")).cost, ann * 80.0 + 3.0, 1e-12);
}

TEST(WindowLp, NonBuildableStockBoundsOperation) {
  Model m = dirty_clean(5.0, std::nullopt);
  m.processes[0].buildable = false;
  m.processes[1].capex = YearSeries(1000.0);
  CapacityStock stock;
  stock.seeded = true;
  stock.vintages = {{"dirty", 2010, 2.0}};
  const auto w = build(m, constant_periods(6), stock);
  const int j = w.lp.find_column(lp_name("op", "dirty", 2020, 0, 0));
  EXPECT_EQ(w.lp.column(j).upper, 2.0);
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.primal[j], 2.0, 1e-9);
  EXPECT_NEAR(col(w, s, "new_cap[clean,2020]"), 3.0, 1e-9);
}

TEST(WindowLp, UsePhaseMovesToRightHandSide) {
  Model m = dirty_clean(2.0, 1.0);
  m.products[0].carbon_mass_fraction = 12.0 / 32.0;
  m.products[0].use_phase_combusts = true;
  const auto w = build(m, constant_periods(6));
  const double use = 2.0 * kHours * oracle::combustion_co2_per_tonne(1, 4, 1, 0);
  EXPECT_NEAR(w.lp.row(w.lp.find_row("emis[2020]")).rhs, 1.0 * kTonnesPerMt - use, 1e-6);
}

TEST(WindowLp, PointSourceCo2IsVentedIntoEmissions) {
  using namespace fixtures;
  Model m = empty_model({2020}, 2020);
  m.products = {product("x"), product("co2ps", Unit::tonne_co2, ProductRole::co2_point_source)};
  m.processes = {process("fossil", "x", {.outputs = {{"co2ps", 2.0}}, .opex_var = 1.0})};
  m.demands.demands = {constant_demand("x", 3.0)};
  m.schedule.caps_mt[2020] = 0.0;
  m.schedule.residual_penalty = 0.1;
  const auto w = build(m, constant_periods(6));
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(col(w, s, lp_name("vent", "co2ps", 2020, 0, 2)), 6.0, 1e-9);
  EXPECT_NEAR(col(w, s, "residual[2020]"), 6.0 * kHours, 1e-6);
}

TEST(WindowLp, StorageShiftsEnergyWithinPeriod) {
  using namespace fixtures;
  Model m = empty_model({2020}, 2020);
  m.products = {product("power", Unit::mwh, ProductRole::electricity)};
  ProcessSpec wind = process("wind", "power", {.capex = 10.0});
  wind.availability_profile = "wind";
  ProcessSpec battery = process("battery", "power", {.capex = 1.0});
  battery.storage = StorageParams{0.9, 1.0, 1.0};
  ProcessSpec backup = process("backup", "power", {.opex_var = 5.0});
  m.processes = {wind, battery, backup};
  m.demands.demands = {constant_demand("power", 1.0)};
  std::vector<double> avail(kHoursPerYear);
  for (int h = 0; h < kHoursPerYear; ++h) avail[h] = h % 2 == 0 ? 1.0 : 0.0;
  const auto tps = aggregate({{"wind", avail}}, 1, 2, 0);
  const auto w = build(m, tps);
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  // Charging 1/0.9 in the windy hour covers the calm one.
  const double wind_cap = 1.0 + 1.0 / 0.9;
  EXPECT_NEAR(col(w, s, "new_cap[wind,2020]"), wind_cap, 1e-9);
  EXPECT_NEAR(col(w, s, lp_name("ch", "battery", 2020, 0, 0)), 1.0 / 0.9, 1e-9);
  EXPECT_NEAR(col(w, s, lp_name("dis", "battery", 2020, 0, 1)), 1.0, 1e-9);
  EXPECT_NEAR(col(w, s, lp_name("op", "backup", 2020, 0, 1)), 0.0, 1e-9);
}

TEST(WindowLp, NamesUniqueAndBuildReproducible) {
  Model m = dirty_clean(3.0, 0.01, 5.0);
  m.schedule.residual_penalty = 100.0;
  const auto a = build(m, constant_periods(6));
  const auto b = build(m, constant_periods(6));
  std::set<std::string> names;
  for (const auto& c : a.lp.columns()) EXPECT_TRUE(names.insert(c.name).second) << c.name;
  for (const auto& r : a.lp.rows()) EXPECT_TRUE(names.insert("row:" + r.name).second) << r.name;
  EXPECT_EQ(export_mps(a.lp).text, export_mps(b.lp).text);
  // One balance row per demanded product and step.
  int balances = 0;
  for (const auto& r : a.lp.rows()) balances += r.tag == "balance";
  EXPECT_EQ(balances, 6);
}

TEST(Mps, EmptyProgramHasAllSections) {
  LinearProgram lp;
  lp.finalize();
  EXPECT_EQ(export_mps(lp, "EMPTY").text,
            "NAME          EMPTY\nROWS\n N  OBJ\nCOLUMNS\nRHS\nBOUNDS\nENDATA\n");
}

TEST(Mps, OneVariableGoldenFile) {
  LinearProgram lp;
  const int x = lp.add_column("x", 0.0, 10.0, 2.0);
  const int r = lp.add_row("c1", Sense::ge, 6.0);
  lp.add_entry(r, x, 3.0);
  lp.finalize();
  // Codes: FNV-1a 64 of the name modulo 36^7 in base 36, computed by hand
  // outside the library.
  const std::string golden =
      "NAME          TINY\n"
      "ROWS\n"
      " N  OBJ\n"
      " G  R8Y5N4V7\n"
      "COLUMNS\n"
      "    C243HH1D  OBJ       2\n"
      "    C243HH1D  R8Y5N4V7  3\n"
      "RHS\n"
      "    RHS       R8Y5N4V7  6\n"
      "BOUNDS\n"
      " UP BND       C243HH1D  10\n"
      "ENDATA\n";
  const auto doc = export_mps(lp, "TINY");
  EXPECT_EQ(doc.text, golden);
  EXPECT_EQ(doc.name_map["rows"]["R8Y5N4V7"], "c1");
  EXPECT_EQ(doc.name_map["columns"]["C243HH1D"], "x");
}

TEST(Mps, CodesAreEightCharactersAndMapBack) {
  const auto w = build(dirty_clean(3.0, 0.01, 5.0), constant_periods(6));
  const auto doc = export_mps(w.lp);
  std::set<std::string> codes;
  for (const auto& c : doc.row_codes) {
    EXPECT_EQ(c.size(), 8u);
    EXPECT_TRUE(codes.insert(c).second);
  }
  for (const auto& c : doc.col_codes) {
    EXPECT_EQ(c.size(), 8u);
    EXPECT_TRUE(codes.insert(c).second);
  }
  for (int i = 0; i < w.lp.num_rows(); ++i)
    EXPECT_EQ(doc.name_map["rows"][doc.row_codes[i]], w.lp.row(i).name);
}

TEST(Mps, RandomProgramsRoundTripThroughIndependentReader) {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = fixtures::random_dense_lp(rng);
    const auto lp = fixtures::to_lp(d);
    const auto back = parse_mps(export_mps(lp).text);
    ASSERT_EQ(back.c.size(), d.c.size());
    ASSERT_EQ(back.b.size(), d.b.size());
    EXPECT_EQ(back.c, d.c);
    EXPECT_EQ(back.a, d.a);
    EXPECT_EQ(back.b, d.b);
    EXPECT_EQ(back.sense, d.sense);
    EXPECT_EQ(back.lo, d.lo);
    EXPECT_EQ(back.hi, d.hi);
    const auto ref = oracle::vertex_enumeration(back);
    const auto s = solve(lp);
    EXPECT_EQ(ref.feasible, s.optimal());
    if (ref.feasible && s.optimal()) {
      EXPECT_NEAR(s.objective, ref.objective, 1e-8 * std::max(1.0, std::abs(ref.objective)));
      ++compared;
    }
  }
  EXPECT_GT(compared, 20);
}

TEST(Mps, ExternalSolverAgreesOnToyWindow) {
  if (std::system("python3 -c 'import highspy' >/dev/null 2>&1") != 0)
    GTEST_SKIP() << "highspy not available";
  Model m = dirty_clean(3.0, 0.5 * 3.0 * kHours / kTonnesPerMt, 20.0);
  m.scenario.investment_years = {2020, 2025};
  m.schedule.caps_mt[2025] = 0.0;
  m.schedule.residual_penalty = 50.0;
  const auto w = build(m, constant_periods(6));
  const auto s = solve(w.lp);
  ASSERT_TRUE(s.optimal());
  const fs::path dir = fs::temp_directory_path() / "pathforge_mps_highs";
  fs::create_directories(dir);
  write_text_file(dir / "toy.mps", export_mps(w.lp).text);
  const std::string cmd =
      "python3 -c \"import highspy,sys; h=highspy.Highs(); h.setOptionValue('output_flag', False); "
      "h.readModel(sys.argv[1]); h.run(); print(repr(h.getInfo().objective_function_value))\" " +
      (dir / "toy.mps").string() + " > " + (dir / "obj.txt").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const double highs_obj = std::stod(read_text_file(dir / "obj.txt"));
  EXPECT_NEAR(highs_obj, s.objective, 1e-6 * std::max(1.0, std::abs(s.objective)));
  fs::remove_all(dir);
}
