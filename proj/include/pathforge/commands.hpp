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

// Command implementations behind the pathforge CLI. Every command writes
// into <out>/<scenario>/<command>/ and returns a process exit code.

#ifndef PATHFORGE_COMMANDS_HPP_
#define PATHFORGE_COMMANDS_HPP_

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "pathforge/analytics.hpp"
#include "pathforge/dataset_io.hpp"
#include "pathforge/manifest.hpp"
#include "pathforge/mps.hpp"
#include "pathforge/pathway.hpp"
#include "pathforge/result_io.hpp"
#include "pathforge/timeagg.hpp"
#include "pathforge/validate.hpp"

namespace pathforge {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitInfeasible = 3,
  kExitIo = 4,
};

struct CommandOptions {
  std::filesystem::path dataset;
  std::string scenario = "base";
  std::filesystem::path out = "out";
  std::optional<unsigned long long> seed;
  bool dump_mps = false;
  std::ostream* report = &std::cout;
  std::ostream* log = &std::cerr;
};

// Worker count from PATHFORGE_THREADS, capped by the hardware.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("PATHFORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return std::min(n, hw);
  }
  return hw;
}

// Runs f(i) for i in [0, n) on up to `workers` threads.
template <class F>
void parallel_for(int n, int workers, F&& f) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace internal {

inline std::filesystem::path command_dir(const CommandOptions& o, const std::string& command) {
  return o.out / (o.scenario.empty() ? std::string("base") : o.scenario) / command;
}

class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void write(const std::string& rel, const std::string& text) {
    write_text_file(dir_ / rel, text);
    files_.push_back(rel);
  }
  std::vector<std::string> files() const {
    auto f = files_;
    std::sort(f.begin(), f.end());
    return f;
  }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

inline RunManifest start_manifest(const CommandOptions& o, const std::string& command,
                                  const json& params) {
  RunManifest m;
  m.command = command;
  m.dataset = o.dataset.string();
  m.scenario = o.scenario;
  m.started_at = utc_timestamp();
  m.params = params;
  m.output_dir = command_dir(o, command).string();
  json hashed = params;
  hashed["command"] = command;
  hashed["scenario"] = o.scenario;
  m.config_hash = config_hash(o.dataset, hashed);
  return m;
}

inline void finish_manifest(RunManifest& m, OutputWriter& w) {
  m.outputs = w.files();
  m.finished_at = utc_timestamp();
  write_text_file(w.dir() / "manifest.json", m.to_json().dump(2) + "\n");
}

inline Model load_for(const CommandOptions& o) {
  Model m = load_model(o.dataset, o.scenario);
  if (o.seed) m.scenario.seed = *o.seed;
  return m;
}

// Maps library exceptions to exit codes.
template <class F>
int guarded(const CommandOptions& o, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    *o.log << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const json::exception& e) {
    *o.log << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnresolvedProduct& e) {
    *o.log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    *o.log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    *o.log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

inline std::string violations_text(const std::vector<Violation>& vs) {
  std::ostringstream out;
  for (const auto& v : vs) out << v.code << "\t" << v.subject << "\t" << v.message << "\n";
  return out.str();
}

inline json violations_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"code", v.code}, {"subject", v.subject}, {"message", v.message}});
  return a;
}

}  // namespace internal

inline int cmd_validate(const CommandOptions& o) {
  return internal::guarded(o, [&] {
    auto manifest = internal::start_manifest(o, "validate", json::object());
    const Model m = internal::load_for(o);
    const auto vs = validate_model(m);
    internal::OutputWriter w(internal::command_dir(o, "validate"));
    json report = {{"dataset", m.name},
                   {"scenario", o.scenario},
                   {"valid", vs.empty()},
                   {"violations", internal::violations_json(vs)}};
    w.write("report.json", report.dump(2) + "\n");
    manifest.applied_overrides = m.scenario.applied_overrides;
    internal::finish_manifest(manifest, w);
    if (vs.empty())
      *o.report << "dataset '" << m.name << "' is valid\n";
    else
      *o.report << internal::violations_text(vs);
    return vs.empty() ? kExitOk : kExitValidation;
  });
}

inline int cmd_aggregate(const CommandOptions& o, int n_periods = 6, int steps_per_period = 6) {
  return internal::guarded(o, [&] {
    const Model m = internal::load_for(o);
    const unsigned long long seed = m.scenario.seed;
    auto manifest = internal::start_manifest(
        o, "aggregate", {{"n_periods", n_periods}, {"steps_per_period", steps_per_period}, {"seed", seed}});
    if (m.profiles.empty()) throw InvalidArgument("dataset has no hourly profiles");
    const auto tps = aggregate(m.profiles, n_periods, steps_per_period, seed);
    internal::OutputWriter w(internal::command_dir(o, "aggregate"));
    w.write("typical_periods.json", tps_to_json(tps).dump(2) + "\n");
    w.write("typical_periods.csv", tps_to_csv(tps));
    std::ostringstream err;
    err << "series,rmse_normalized\n";
    for (const auto& [id, e] : reconstruction_error(m.profiles, tps)) err << id << "," << fmt_num(e) << "\n";
    w.write("reconstruction_error.csv", err.str());
    manifest.applied_overrides = m.scenario.applied_overrides;
    internal::finish_manifest(manifest, w);
    *o.report << tps.n_periods << " typical periods x " << tps.steps_per_period << " steps = "
              << tps.n_steps() << " typical steps\n";
    return kExitOk;
  });
}

inline int cmd_pathway(const CommandOptions& o) {
  return internal::guarded(o, [&] {
    const Model m = internal::load_for(o);
    auto manifest = internal::start_manifest(o, "pathway",
                                             {{"seed", m.scenario.seed}, {"dump_mps", o.dump_mps}});
    manifest.applied_overrides = m.scenario.applied_overrides;
    internal::OutputWriter w(internal::command_dir(o, "pathway"));
    const auto vs = validate_model(m);
    if (!vs.empty()) {
      *o.log << internal::violations_text(vs);
      return static_cast<int>(kExitValidation);
    }
    PathwayOptions popt;
    if (o.dump_mps)
      popt.on_window = [&](int year, const LinearProgram& lp) {
        const auto doc = export_mps(lp, "W" + std::to_string(year));
        const std::string stem = "mps/window_" + std::to_string(year);
        w.write(stem + ".mps", doc.text);
        w.write(stem + ".names.json", doc.name_map.dump(2) + "\n");
      };
    PathwayResult res;
    try {
      res = run_pathway(m, popt);
    } catch (const InfeasibleWindow& e) {
      json cert = {{"message", e.what()}, {"window", e.window()}, {"farkas_multipliers", json::object()}};
      for (const auto& [row, v] : e.certificate()) cert["farkas_multipliers"][row] = v;
      w.write("certificate.json", cert.dump(2) + "\n");
      internal::finish_manifest(manifest, w);
      *o.log << "error: " << e.what() << "\n";
      return static_cast<int>(kExitInfeasible);
    }
    w.write("result.json", result_to_json(res).dump(1) + "\n");
    w.write("capacities.csv", capacities_csv(res));
    w.write("operation.csv", operation_csv(res));
    w.write("emissions.csv", emissions_csv(res));
    w.write("prices.csv", prices_csv(res));
    w.write("production_mix.csv", production_mix_csv(res));
    internal::finish_manifest(manifest, w);
    for (const auto& y : res.years)
      *o.report << y.year << ": emissions " << fmt_num(y.accounted_emissions_mt) << " Mt, residual "
                << fmt_num(y.residual_mt) << " Mt, CO2 price " << fmt_num(y.co2_price) << " kEUR/t\n";
    return static_cast<int>(kExitOk);
  });
}

namespace internal {

inline std::string merit_csv(const MeritOrderCurve& c) {
  const auto frac = predict_dispatch(c, c.renewable_supply);
  std::ostringstream out;
  out << "rank,service,cost_avoided_keur_per_MWh,width_MWh_per_h,start_MWh_per_h,cumulative_MWh_per_h,"
         "electrified_fraction\n";
  int rank = 0;
  for (const auto& e : c.entries) {
    if (e.width <= 0.0) continue;
    out << rank++ << "," << e.service << "," << fmt_num(e.cost_avoided) << "," << fmt_num(e.width) << ","
        << fmt_num(e.start) << "," << fmt_num(e.start + e.width) << "," << fmt_num(frac.at(e.service))
        << "\n";
  }
  return out.str();
}

// Staircase plot: bars of height cost-avoided and width electricity
// demand, with the renewable supply as a vertical line.
inline std::string merit_svg(const MeritOrderCurve& c, int year) {
  const double W = 640, H = 360, m = 50;
  const double xmax = std::max({c.total_width(), c.renewable_supply, 1e-9});
  double ymin = 0.0, ymax = 0.0;
  for (const auto& e : c.entries) {
    ymin = std::min(ymin, e.cost_avoided);
    ymax = std::max(ymax, e.cost_avoided);
  }
  if (ymax - ymin <= 0.0) ymax = ymin + 1.0;
  auto X = [&](double x) { return m + (W - 2 * m) * x / xmax; };
  auto Y = [&](double y) { return H - m - (H - 2 * m) * (y - ymin) / (ymax - ymin); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<text x=\"" << m << "\" y=\"20\" font-size=\"13\">merit order " << year << " period " << c.period
    << " step " << c.step << "</text>\n";
  s << "<line x1=\"" << m << "\" y1=\"" << fmt_num(Y(0)) << "\" x2=\"" << W - m << "\" y2=\"" << fmt_num(Y(0))
    << "\" stroke=\"black\"/>\n";
  for (const auto& e : c.entries) {
    if (e.width <= 0.0) continue;
    const double x0 = X(e.start), x1 = X(e.start + e.width);
    const double y0 = Y(std::max(0.0, e.cost_avoided)), y1 = Y(std::min(0.0, e.cost_avoided));
    s << "<rect x=\"" << fmt_num(x0) << "\" y=\"" << fmt_num(y0) << "\" width=\"" << fmt_num(x1 - x0)
      << "\" height=\"" << fmt_num(y1 - y0) << "\" fill=\"steelblue\" stroke=\"white\"><title>" << e.service
      << "</title></rect>\n";
  }
  const double xr = X(c.renewable_supply);
  s << "<line x1=\"" << fmt_num(xr) << "\" y1=\"" << m << "\" x2=\"" << fmt_num(xr) << "\" y2=\"" << H - m
    << "\" stroke=\"green\" stroke-dasharray=\"4\"/>\n";
  s << "<text x=\"" << m << "\" y=\"" << H - 15 << "\" font-size=\"11\">electricity demand [MWh/h]</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace internal

// Analytics bundle for one solved year. `step` selects a single typical
// step; without it every step gets a merit-order curve.
inline int cmd_analyze(const CommandOptions& opts, const std::filesystem::path& result_path, int year,
                       std::optional<int> step = {}) {
  CommandOptions o = opts;
  return internal::guarded(o, [&] {
    const json rj = load_dataset_json(result_path);
    const PathwayResult res = result_from_json(rj);
    if (o.dataset.empty()) {
      const auto mpath = result_path.parent_path() / "manifest.json";
      o.dataset = load_dataset_json(mpath).at("dataset").get<std::string>();
    }
    if (o.scenario.empty() || o.scenario == "base") o.scenario = res.scenario;
    const Model m = internal::load_for(o);
    const auto& r = res.year(year);
    const int T = res.tps.n_steps();
    if (step && (*step < 0 || *step >= T))
      throw InvalidArgument("step " + std::to_string(*step) + " outside 0.." + std::to_string(T - 1));
    json params = {{"year", year}, {"result_sha256", sha256_hex(rj.dump())}};
    if (step) params["step"] = *step;
    auto manifest = internal::start_manifest(o, "analyze", params);
    manifest.applied_overrides = m.scenario.applied_overrides;
    internal::OutputWriter w(internal::command_dir(o, "analyze"));
    const std::string ys = std::to_string(year);

    std::ostringstream ca;
    ca << "service,product,electricity_MWh_per_unit,multiplier_unit_per_MWh,delta_op_keur_per_unit,"
          "delta_e_t_per_unit,composite_keur_per_unit,delta_op_keur_per_MWh,delta_e_t_per_MWh,"
          "cost_avoided_keur_per_MWh,co2_price_keur_per_t\n";
    for (const auto& e : evaluate_services(m, res, year))
      ca << e.service << "," << e.product << "," << fmt_num(e.ca.electricity) << ","
         << fmt_num(e.ca.multiplier) << "," << fmt_num(e.ca.delta_op_per_unit) << ","
         << fmt_num(e.ca.delta_e_per_unit) << "," << fmt_num(e.ca.per_unit) << "," << fmt_num(e.ca.delta_op)
         << "," << fmt_num(e.ca.delta_e) << "," << fmt_num(e.ca.per_mwh) << "," << fmt_num(r.co2_price)
         << "\n";
    w.write("cost_avoided_" + ys + ".csv", ca.str());

    std::vector<int> steps;
    if (step)
      steps.push_back(*step);
    else
      for (int t = 0; t < T; ++t) steps.push_back(t);
    std::vector<MeritOrderCurve> curves(steps.size());
    parallel_for(static_cast<int>(steps.size()), worker_count(),
                 [&](int i) { curves[i] = curve_at(m, res, year, steps[i]); });
    for (size_t i = 0; i < steps.size(); ++i) {
      const std::string stem = "merit_order_" + ys + "_" + std::to_string(steps[i]);
      w.write(stem + ".csv", internal::merit_csv(curves[i]));
      w.write(stem + ".svg", internal::merit_svg(curves[i], year));
    }

    std::ostringstream ld;
    ld << "rank,hour,period,step,excess_renewables_MWh_per_h";
    for (const auto& s : m.analytics.services)
      ld << ",electrified_" << s.id << "_unit_per_h,fossil_" << s.id << "_unit_per_h";
    ld << "\n";
    int rank = 0;
    for (const auto& row : load_duration(m, res, year)) {
      ld << rank++ << "," << row.hour << "," << row.period << "," << row.step << ","
         << fmt_num(row.excess_renewables);
      for (const auto& s : m.analytics.services)
        ld << "," << fmt_num(row.electrified.at(s.id)) << "," << fmt_num(row.fossil.at(s.id));
      ld << "\n";
    }
    w.write("load_duration_" + ys + ".csv", ld.str());

    std::ostringstream ut;
    ut << "process,installed_capacity_unit_per_h,utilization_fraction\n";
    for (const auto& [pid, cap] : r.installed_capacity)
      if (cap > 0.0) ut << pid << "," << fmt_num(cap) << "," << fmt_num(utilization_rate(res, pid, year)) << "\n";
    w.write("utilization_" + ys + ".csv", ut.str());

    internal::finish_manifest(manifest, w);
    *o.report << "wrote " << w.files().size() << " files to " << w.dir().string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

// Exports the window LP of `year` (default: first investment year) and
// optionally cross-checks a solution computed by an external solver.
inline int cmd_export_mps(const CommandOptions& o, std::optional<int> year = {},
                          std::optional<std::filesystem::path> solution = {}) {
  struct Captured {};
  return internal::guarded(o, [&] {
    const Model m = internal::load_for(o);
    if (m.scenario.investment_years.empty()) throw InvalidArgument("no investment years");
    const int y = year.value_or(m.scenario.investment_years.front());
    if (std::find(m.scenario.investment_years.begin(), m.scenario.investment_years.end(), y) ==
        m.scenario.investment_years.end())
      throw InvalidArgument("year " + std::to_string(y) + " is not an investment year");
    json params = {{"year", y}, {"seed", m.scenario.seed}};
    if (solution) params["solution_sha256"] = sha256_hex(read_text_file(*solution));
    auto manifest = internal::start_manifest(o, "export-mps", params);
    manifest.applied_overrides = m.scenario.applied_overrides;

    std::optional<LinearProgram> lp;
    PathwayOptions popt;
    popt.on_window = [&](int wy, const LinearProgram& w) {
      if (wy != y) return;
      lp = w;
      throw Captured{};
    };
    try {
      run_pathway(m, popt);
    } catch (const Captured&) {
    }
    if (!lp) throw InvalidArgument("window " + std::to_string(y) + " was not reached");

    internal::OutputWriter w(internal::command_dir(o, "export-mps"));
    const auto doc = export_mps(*lp, "W" + std::to_string(y));
    const std::string stem = "window_" + std::to_string(y);
    w.write(stem + ".mps", doc.text);
    w.write(stem + ".names.json", doc.name_map.dump(2) + "\n");
    int code = kExitOk;
    if (solution) {
      auto values = read_solution_csv(read_text_file(*solution));
      std::map<std::string, double> by_name;
      for (const auto& [k, v] : values) {
        const auto& cols = doc.name_map["columns"];
        by_name[cols.contains(k) ? cols[k].get<std::string>() : k] = v;
      }
      LinearProgram& L = *lp;
      L.finalize();
      std::vector<double> x(L.num_cols(), 0.0);
      for (int j = 0; j < L.num_cols(); ++j) {
        auto it = by_name.find(L.column(j).name);
        if (it != by_name.end()) x[j] = it->second;
      }
      const LpSolution internal_sol = solve(L);
      const double ext = L.objective_value(x);
      const auto act = L.activities(x);
      double viol = 0.0;
      for (int i = 0; i < L.num_rows(); ++i) {
        const auto& row = L.row(i);
        const double scale = 1.0 + std::abs(row.rhs);
        double v = 0.0;
        if (row.sense != Sense::ge) v = std::max(v, act[i] - row.rhs);
        if (row.sense != Sense::le) v = std::max(v, row.rhs - act[i]);
        viol = std::max(viol, v / scale);
      }
      for (int j = 0; j < L.num_cols(); ++j)
        viol = std::max({viol, L.column(j).lower - x[j], x[j] - L.column(j).upper});
      const double rel = std::abs(ext - internal_sol.objective) / std::max(1.0, std::abs(internal_sol.objective));
      const bool ok = internal_sol.optimal() && rel <= 1e-6 && viol <= 1e-6;
      json check = {{"internal_status", std::string(to_string(internal_sol.status))},
                    {"internal_objective", internal_sol.objective},
                    {"external_objective", ext},
                    {"relative_difference", rel},
                    {"max_external_violation", viol},
                    {"agree", ok}};
      w.write(stem + ".crosscheck.json", check.dump(2) + "\n");
      *o.report << "internal " << fmt_num(internal_sol.objective) << " external " << fmt_num(ext)
                << (ok ? " agree\n" : " DISAGREE\n");
      if (!ok) code = kExitValidation;
    }
    internal::finish_manifest(manifest, w);
    *o.report << "wrote " << (w.dir() / (stem + ".mps")).string() << "\n";
    return code;
  });
}

}  // namespace pathforge

#endif  // PATHFORGE_COMMANDS_HPP_
