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

// Fixed-format MPS export. Long row and column names are replaced by
// eight-character codes derived from a hash of the name; a JSON map
// translates them back.

#ifndef PATHFORGE_MPS_HPP_
#define PATHFORGE_MPS_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathforge/dataset_io.hpp"
#include "pathforge/lp.hpp"
#include "pathforge/model.hpp"

namespace pathforge {

struct MpsDocument {
  std::string text;
  std::vector<std::string> row_codes;
  std::vector<std::string> col_codes;
  nlohmann::json name_map;  // {"rows": {code: name}, "columns": {code: name}}
};

namespace internal {

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string base36(uint64_t v, int width) {
  static const char* digits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out(width, '0');
  for (int i = width - 1; i >= 0; --i) {
    out[i] = digits[v % 36];
    v /= 36;
  }
  return out;
}

// Prefix letter + 7 base-36 digits of the name hash; collisions advance
// the hash until a free code is found.
inline std::string short_code(char prefix, const std::string& name,
                              std::set<std::string>& used) {
  const uint64_t space = 78364164096ULL;  // 36^7
  uint64_t h = fnv1a(name) % space;
  for (;;) {
    std::string code = prefix + base36(h, 7);
    if (used.insert(code).second) return code;
    h = (h + 1) % space;
  }
}

// Shortest %g rendering that fits the 12-character value field.
inline std::string mps_number(double v) {
  char buf[64];
  for (int prec = 12; prec >= 1; --prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::string(buf).size() <= 12) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

inline std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Field layout: columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
inline std::string mps_line(const std::string& f1, const std::string& f2,
                            const std::string& f3 = {}, const std::string& f4 = {}) {
  std::string line = " " + pad(f1, 2) + " " + pad(f2, 8);
  if (!f3.empty() || !f4.empty()) line += "  " + pad(f3, 8);
  if (!f4.empty()) line += "  " + f4;
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line + "\n";
}

}  // namespace internal

inline MpsDocument export_mps(const LinearProgram& source,
                              const std::string& name = "PATHFRG") {
  LinearProgram lp = source;
  lp.finalize();
  using internal::mps_line;
  using internal::mps_number;
  MpsDocument doc;
  std::set<std::string> used = {"OBJ"};
  doc.name_map = {{"rows", nlohmann::json::object()}, {"columns", nlohmann::json::object()}};
  for (const auto& r : lp.rows()) {
    doc.row_codes.push_back(internal::short_code('R', r.name, used));
    doc.name_map["rows"][doc.row_codes.back()] = r.name;
  }
  for (const auto& c : lp.columns()) {
    doc.col_codes.push_back(internal::short_code('C', c.name, used));
    doc.name_map["columns"][doc.col_codes.back()] = c.name;
  }

  std::ostringstream out;
  out << "NAME          " << name.substr(0, 8) << "\n";
  out << "ROWS\n";
  out << mps_line("N", "OBJ");
  for (int i = 0; i < lp.num_rows(); ++i) {
    const char* s = lp.row(i).sense == Sense::le ? "L" : lp.row(i).sense == Sense::ge ? "G" : "E";
    out << mps_line(s, doc.row_codes[i]);
  }
  out << "COLUMNS\n";
  const auto& start = lp.col_start();
  const auto& index = lp.row_index();
  const auto& value = lp.values();
  for (int j = 0; j < lp.num_cols(); ++j) {
    const auto& code = doc.col_codes[j];
    if (lp.column(j).cost != 0.0) out << mps_line("", code, "OBJ", mps_number(lp.column(j).cost));
    for (int k = start[j]; k < start[j + 1]; ++k)
      out << mps_line("", code, doc.row_codes[index[k]], mps_number(value[k]));
    if (lp.column(j).cost == 0.0 && start[j] == start[j + 1])
      out << mps_line("", code, "OBJ", "0");
  }
  out << "RHS\n";
  if (lp.objective_offset != 0.0)
    out << mps_line("", "RHS", "OBJ", mps_number(-lp.objective_offset));
  for (int i = 0; i < lp.num_rows(); ++i)
    if (lp.row(i).rhs != 0.0) out << mps_line("", "RHS", doc.row_codes[i], mps_number(lp.row(i).rhs));
  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_cols(); ++j) {
    const auto& c = lp.column(j);
    const auto& code = doc.col_codes[j];
    const bool lo_inf = c.lower == -kInf, hi_inf = c.upper == kInf;
    if (c.lower == c.upper) {
      out << mps_line("FX", "BND", code, mps_number(c.lower));
      continue;
    }
    if (lo_inf && hi_inf) {
      out << mps_line("FR", "BND", code);
      continue;
    }
    if (lo_inf) out << mps_line("MI", "BND", code);
    else if (c.lower != 0.0) out << mps_line("LO", "BND", code, mps_number(c.lower));
    if (!hi_inf) out << mps_line("UP", "BND", code, mps_number(c.upper));
  }
  out << "ENDATA\n";
  doc.text = out.str();
  return doc;
}

// Reads a "name,value" CSV (header optional) written by an external solver.
inline std::map<std::string, double> read_solution_csv(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() < 2) throw IoError("solution line needs name,value: " + line);
    try {
      out[cells[0]] = parse_double(cells[1], "solution file");
    } catch (const IoError&) {
      if (!first) throw;
    }
    first = false;
  }
  return out;
}

}  // namespace pathforge

#endif  // PATHFORGE_MPS_HPP_
