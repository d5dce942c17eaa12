// Copyright 2026 The sliceorch Authors
//
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

// Slow, direct re-implementations used as references by the test suites.
// They read only raw inputs (profile points, rates, delays) and share no code
// with the library beyond its plain data types.
#ifndef SLICEORCH_TESTS_ORACLES_HPP
#define SLICEORCH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sliceorch/placement.hpp"
#include "sliceorch/slice_model.hpp"

namespace oracle {

using namespace sliceorch;

// y(x) through the points (x_i, y_i) sorted by x, starting from the origin
// below the first point and continuing the last segment beyond the last one.
inline double interp(std::vector<std::pair<double, double>> pts, double x) {
  if (pts.front().first > 0.0) pts.insert(pts.begin(), {0.0, 0.0});
  if (x <= pts.front().first) return pts.front().second;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (x <= pts[i].first) {
      const auto [x0, y0] = pts[i - 1];
      const auto [x1, y1] = pts[i];
      return x1 == x0 ? y1 : y0 + (x - x0) * (y1 - y0) / (x1 - x0);
    }
  }
  const auto [x0, y0] = pts[pts.size() - 2];
  const auto [x1, y1] = pts.back();
  return y1 + (x - x1) * (y1 - y0) / (x1 - x0);
}

// CPU ms needed for `mbps` according to a profile's measured points.
inline double cpu_at(const NfProfile& p, double mbps) {
  if (mbps <= 0.0) return 0.0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& q : p.points) pts.emplace_back(q.throughput_mbps, q.cpu_ms);
  return interp(pts, mbps);
}

// Mbps reachable with `cpu` ms according to a profile's measured points.
inline double mbps_at(const NfProfile& p, double cpu) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& q : p.points) pts.emplace_back(q.cpu_ms, q.throughput_mbps);
  return interp(pts, std::max(cpu, 0.0));
}

inline double ram_gb(const NfProfile& p) {
  double m = 0.0;
  for (const auto& q : p.points) m = std::max(m, q.ram_mb);
  return m / 1000.0;
}

// Water level search by bisection: sum clamp(L, lo_i, max(hi_i, lo_i)) = budget.
inline std::vector<double> waterfill(const std::vector<double>& lo, const std::vector<double>& hi,
                                     double budget) {
  const std::size_t n = lo.size();
  std::vector<double> cap(n);
  double cap_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) cap_sum += cap[i] = std::max(lo[i], hi[i]);
  if (cap_sum <= budget) return cap;
  double a = 0.0, b = 0.0;
  for (double c : cap) b = std::max(b, c);
  auto fill = [&](double level) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::clamp(level, lo[i], cap[i]);
    return s;
  };
  for (int k = 0; k < 300; ++k) {
    const double m = 0.5 * (a + b);
    (fill(m) > budget ? b : a) = m;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(0.5 * (a + b), lo[i], cap[i]);
  return out;
}

struct Choice {
  std::string cuup, upf;
  double cost = 0.0;
  double rtt = 0.0;
};

inline double delay(const Topology& t, const std::string& a, const std::string& b) {
  if (a == b) return 0.0;
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  return t.links().at(key);
}

// Enumerates every (CU-UP pool, UPF pool) pair and prices each from scratch.
inline std::optional<Choice> brute_force_place(const SliceIntent& in, const Topology& topo,
                                               const NfProfileSet& profiles,
                                               const ResidualCapacity& residual) {
  const auto& cu = profiles.at(NfType::CuUp);
  const auto& up = profiles.at(NfType::Upf);
  const double qc = cpu_at(cu, in.tp_min_mbps), qu = cpu_at(up, in.tp_min_mbps);
  const double rc = ram_gb(cu), ru = ram_gb(up);
  const double gb = in.tp_min_mbps * 24 * 3600 / 8.0 / 1000.0;
  std::string edge;
  for (const auto& p : topo.pools())
    if (p.tier == Tier::Edge) edge = p.id;

  std::vector<Choice> all;
  for (const auto& a : topo.pools()) {
    for (const auto& b : topo.pools()) {
      const double rtt = 2 * (topo.radio_delay_ms() + delay(topo, edge, a.id) +
                              delay(topo, a.id, b.id) + topo.core_delay_ms());
      if (rtt > in.delay_max_ms) continue;
      const auto& ra = residual.at(a.id);
      const auto& rb = residual.at(b.id);
      const double eps = 1e-9;
      bool ok;
      if (a.id == b.id)
        ok = ra.cpu_ms + eps >= qc + qu && ra.ram_gb + eps >= rc + ru;
      else
        ok = ra.cpu_ms + eps >= qc && ra.ram_gb + eps >= rc && rb.cpu_ms + eps >= qu &&
             rb.ram_gb + eps >= ru;
      if (!ok) continue;
      const double cost = 24 * (qc / 100 * a.rates.cpu_rate + rc * a.rates.ram_rate) +
                          24 * (qu / 100 * b.rates.cpu_rate + ru * b.rates.ram_rate) +
                          gb * b.rates.bw_rate;
      all.push_back({a.id, b.id, cost, rtt});
    }
  }
  if (all.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : all) best = std::min(best, c.cost);
  std::vector<Choice> tied;
  for (const auto& c : all)
    if (std::fabs(c.cost - best) <= 1e-9 * std::max({1.0, std::fabs(c.cost), std::fabs(best)}))
      tied.push_back(c);
  std::sort(tied.begin(), tied.end(), [](const Choice& x, const Choice& y) {
    const bool cx = x.cuup == x.upf, cy = y.cuup == y.upf;
    if (cx != cy) return cx;
    return std::tie(x.cuup, x.upf) < std::tie(y.cuup, y.upf);
  });
  return tied.front();
}

// Exhaustive search for three co-located Edge slices: minimise
// sum p (t - x)^2 / t subject to sum cpu(x) <= budget, x_i in [0, t_i].
// x1, x2 on a grid of `step`; x3 is the largest value that still fits.
inline std::vector<double> grid_rebalance3(const NfProfileSet& profiles,
                                           const std::vector<double>& t,
                                           const std::vector<int>& p, double budget,
                                           double step) {
  const auto& cu = profiles.at(NfType::CuUp);
  const auto& up = profiles.at(NfType::Upf);
  auto c = [&](double x) { return cpu_at(cu, x) + cpu_at(up, x); };
  auto loss = [&](int i, double x) { return p[i] * (t[i] - x) * (t[i] - x) / t[i]; };
  std::vector<double> best{0, 0, 0};
  double best_val = std::numeric_limits<double>::infinity();
  for (double x1 = 0; x1 <= t[0] + 1e-12; x1 += step) {
    for (double x2 = 0; x2 <= t[1] + 1e-12; x2 += step) {
      const double left = budget - c(x1) - c(x2);
      if (left < 0) break;
      double a = 0, b = t[2];
      if (c(b) > left) {
        for (int k = 0; k < 60; ++k) {
          const double m = 0.5 * (a + b);
          (c(m) > left ? b : a) = m;
        }
        b = a;
      }
      const double v = loss(0, x1) + loss(1, x2) + loss(2, b);
      if (v < best_val) {
        best_val = v;
        best = {x1, x2, b};
      }
    }
  }
  return best;
}

// Deterministic generator helpers for the property suites.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
};

}  // namespace oracle

#endif  // SLICEORCH_TESTS_ORACLES_HPP
