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

// Aggregation of hourly series into weighted typical periods by k-medoids
// clustering of consecutive-hour candidate periods.

#ifndef PATHFORGE_TIMEAGG_HPP_
#define PATHFORGE_TIMEAGG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pathforge/errors.hpp"
#include "pathforge/model.hpp"

namespace pathforge {

using SeriesMap = std::map<std::string, std::vector<double>>;

struct TypicalStep {
  int period = 0;
  int step = 0;
  friend bool operator==(const TypicalStep&, const TypicalStep&) = default;
};

struct TypicalPeriodSet {
  int n_periods = 0;
  int steps_per_period = 0;
  std::vector<int> weights;        // candidate periods per cluster
  std::vector<int> medoids;        // candidate index of each typical period
  SeriesMap values;                // id -> n_periods * steps_per_period
  std::vector<TypicalStep> hour_map;  // original hour -> (period, step)

  int n_steps() const { return n_periods * steps_per_period; }
  int flat(int period, int step) const { return period * steps_per_period + step; }

  double value(const std::string& id, int period, int step) const {
    auto it = values.find(id);
    if (it == values.end())
      throw InvalidArgument("unknown series '" + id + "'");
    return it->second[flat(period, step)];
  }

  // Hours represented by one step of the period.
  double weight(int period) const { return weights[period]; }

  friend bool operator==(const TypicalPeriodSet&,
                         const TypicalPeriodSet&) = default;
};

namespace internal {

// Uniform double in [0,1) built from the generator's raw bits so results
// do not depend on the standard library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

}  // namespace internal

// Clusters the year into n_periods typical periods of steps_per_period
// hours. Hours past the last whole candidate period are mapped to the
// medoid closest on their partial window.
inline TypicalPeriodSet aggregate(const SeriesMap& series, int n_periods,
                                  int steps_per_period, uint64_t seed) {
  if (series.empty()) throw InvalidArgument("no series to aggregate");
  if (n_periods < 1 || steps_per_period < 1)
    throw InvalidArgument("n_periods and steps_per_period must be >= 1");
  const size_t hours = series.begin()->second.size();
  for (const auto& [id, v] : series) {
    if (v.size() != hours)
      throw InvalidArgument("series '" + id + "' length mismatch");
  }
  const int S = steps_per_period;
  const int C = static_cast<int>(hours) / S;
  if (C < n_periods)
    throw InvalidArgument("more typical periods than candidate periods");

  // Min-max normalized features, series in id order.
  std::vector<std::vector<double>> feat(C);
  for (auto& f : feat) f.reserve(series.size() * S);
  for (const auto& [id, v] : series) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double range = *hi - *lo;
    for (int c = 0; c < C; ++c)
      for (int s = 0; s < S; ++s)
        feat[c].push_back(range > 0.0 ? (v[c * S + s] - *lo) / range : 0.0);
  }

  std::vector<double> dist(static_cast<size_t>(C) * C, 0.0);
  for (int a = 0; a < C; ++a)
    for (int b = a + 1; b < C; ++b)
      dist[static_cast<size_t>(a) * C + b] = dist[static_cast<size_t>(b) * C + a] =
          internal::sq_dist(feat[a], feat[b]);
  auto D = [&](int a, int b) { return dist[static_cast<size_t>(a) * C + b]; };

  std::vector<int> med;
  if (n_periods == C) {
    for (int c = 0; c < C; ++c) med.push_back(c);
  } else {
    // k-medoids++ seeding.
    std::mt19937_64 rng(seed);
    med.push_back(std::min(C - 1, static_cast<int>(internal::unit_uniform(rng) * C)));
    std::vector<double> near(C);
    for (int c = 0; c < C; ++c) near[c] = D(c, med[0]);
    while (static_cast<int>(med.size()) < n_periods) {
      double total = 0.0;
      for (int c = 0; c < C; ++c) total += near[c];
      int pick = -1;
      if (total > 0.0) {
        double r = internal::unit_uniform(rng) * total;
        for (int c = 0; c < C; ++c) {
          if (near[c] <= 0.0) continue;
          pick = c;
          r -= near[c];
          if (r < 0.0) break;
        }
      } else {
        for (int c = 0; c < C && pick < 0; ++c)
          if (std::find(med.begin(), med.end(), c) == med.end()) pick = c;
      }
      med.push_back(pick);
      for (int c = 0; c < C; ++c) near[c] = std::min(near[c], D(c, pick));
    }

    // PAM swap phase, best improvement per pass.
    const int k = n_periods;
    std::vector<char> is_med(C, 0);
    for (int m : med) is_med[m] = 1;
    for (int pass = 0; pass < 1000; ++pass) {
      std::vector<double> d1(C), d2(C);
      std::vector<int> n1(C);
      for (int c = 0; c < C; ++c) {
        d1[c] = d2[c] = std::numeric_limits<double>::infinity();
        for (int i = 0; i < k; ++i) {
          const double d = D(c, med[i]);
          if (d < d1[c]) {
            d2[c] = d1[c];
            d1[c] = d;
            n1[c] = i;
          } else if (d < d2[c]) {
            d2[c] = d;
          }
        }
      }
      double best = -1e-12;
      int best_i = -1, best_o = -1;
      for (int o = 0; o < C; ++o) {
        if (is_med[o]) continue;
        for (int i = 0; i < k; ++i) {
          double delta = 0.0;
          for (int c = 0; c < C; ++c) {
            const double dn = D(c, o);
            if (n1[c] == i)
              delta += std::min(dn, d2[c]) - d1[c];
            else if (dn < d1[c])
              delta += dn - d1[c];
          }
          if (delta < best) {
            best = delta;
            best_i = i;
            best_o = o;
          }
        }
      }
      if (best_i < 0) break;
      is_med[med[best_i]] = 0;
      med[best_i] = best_o;
      is_med[best_o] = 1;
    }
  }
  std::sort(med.begin(), med.end());

  TypicalPeriodSet tps;
  tps.n_periods = n_periods;
  tps.steps_per_period = S;
  tps.medoids = med;
  tps.weights.assign(n_periods, 0);
  tps.hour_map.resize(hours);
  for (int c = 0; c < C; ++c) {
    int best = 0;
    for (int i = 1; i < n_periods; ++i)
      if (D(c, med[i]) < D(c, med[best])) best = i;
    // A medoid always represents itself.
    auto self = std::lower_bound(med.begin(), med.end(), c);
    if (self != med.end() && *self == c) best = static_cast<int>(self - med.begin());
    ++tps.weights[best];
    for (int s = 0; s < S; ++s) tps.hour_map[c * S + s] = {best, s};
  }
  const int rem = static_cast<int>(hours) - C * S;
  if (rem > 0) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_periods; ++i) {
      double d = 0.0;
      size_t si = 0;
      for (const auto& [id, v] : series) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        const double range = *hi - *lo;
        for (int s = 0; s < rem; ++s) {
          const double a = range > 0.0 ? (v[C * S + s] - *lo) / range : 0.0;
          const double t = a - feat[med[i]][si * S + s];
          d += t * t;
        }
        ++si;
      }
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    for (int s = 0; s < rem; ++s) tps.hour_map[C * S + s] = {best, s};
  }
  for (const auto& [id, v] : series) {
    auto& out = tps.values[id];
    out.resize(static_cast<size_t>(n_periods) * S);
    for (int i = 0; i < n_periods; ++i)
      for (int s = 0; s < S; ++s) out[i * S + s] = v[med[i] * S + s];
  }
  return tps;
}

// RMS deviation of every hour from its typical value, over series range.
inline std::map<std::string, double> reconstruction_error(
    const SeriesMap& original, const TypicalPeriodSet& tps) {
  std::map<std::string, double> out;
  for (const auto& [id, v] : original) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) {
      out[id] = 0.0;
      continue;
    }
    double ss = 0.0;
    for (size_t h = 0; h < v.size(); ++h) {
      const auto& ts = tps.hour_map[h];
      const double e = v[h] - tps.value(id, ts.period, ts.step);
      ss += e * e;
    }
    out[id] = std::sqrt(ss / v.size()) / range;
  }
  return out;
}

inline double annual_total(const TypicalPeriodSet& tps, const std::string& id) {
  auto it = tps.values.find(id);
  if (it == tps.values.end()) throw InvalidArgument("unknown series '" + id + "'");
  double total = 0.0;
  for (int i = 0; i < tps.n_periods; ++i)
    for (int s = 0; s < tps.steps_per_period; ++s)
      total += it->second[tps.flat(i, s)] * tps.weights[i];
  return total;
}

// Single typical period standing for the whole year at constant values.
inline TypicalPeriodSet constant_periods(int steps_per_period) {
  TypicalPeriodSet tps;
  tps.n_periods = 1;
  tps.steps_per_period = steps_per_period;
  tps.weights = {kHoursPerYear / steps_per_period};
  tps.medoids = {0};
  tps.hour_map.resize(kHoursPerYear);
  for (int h = 0; h < kHoursPerYear; ++h)
    tps.hour_map[h] = {0, std::min(h % steps_per_period, steps_per_period - 1)};
  return tps;
}

}  // namespace pathforge

#endif  // PATHFORGE_TIMEAGG_HPP_
