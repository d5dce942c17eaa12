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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <fmt/format.h>

#include "oracles/oracles.hpp"
#include "sliceorch/assurance.hpp"
#include "sliceorch/compute_model.hpp"
#include "sliceorch/placement.hpp"
#include "sliceorch/radio_scheduler.hpp"
#include "sliceorch/sim_engine.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace sliceorch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures; the first few messages go into the detail.
struct Checker {
  Outcome o;
  int failures = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    o.pass = false;
    if (failures++ < 3) o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
};

const MetricsFrame& frame_at(const RunResult& r, std::int64_t t) {
  for (const auto& f : r.frames)
    if (f.t_ms == t) return f;
  throw std::out_of_range(fmt::format("no frame at {}", t));
}

std::map<SliceId, SliceIntent> intents_of(const Scenario& sc) {
  std::map<SliceId, SliceIntent> out;
  for (const auto& e : sc.events)
    if (e.kind == EventKind::SliceStart) out[e.intent.id] = e.intent;
  return out;
}

Outcome placement_reproduction() {
  Checker c;
  const auto sc = fixtures::bundled("exp1");
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run(sc);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::vector<std::tuple<int, std::string, int>> want{
      {1, "central", 30}, {2, "regional", 30}, {3, "edge", 15}, {4, "edge", 20}};
  std::string got;
  for (const auto& [sd, pool, floor] : want) {
    auto it = r.final_state.slices.find({1, sd});
    if (it == r.final_state.slices.end()) {
      c.expect(false, fmt::format("S{} not admitted", sd));
      continue;
    }
    const auto& p = it->second.placement();
    got += fmt::format("{}{}/{}", got.empty() ? "" : " ", p.pool_cuup, p.prb_floor);
    c.expect(p.pool_cuup == pool && p.pool_upf == pool,
             fmt::format("S{} at {}/{}", sd, p.pool_cuup, p.pool_upf));
    c.expect(p.prb_floor == floor, fmt::format("S{} floor {}", sd, p.prb_floor));
  }
  c.expect(secs < 1.0, fmt::format("took {:.3f}s", secs));
  if (c.o.pass) c.o.detail = fmt::format("{} in {:.3f}s", got, secs);
  return c.o;
}

Outcome prb_floors() {
  Checker c;
  const auto cell = fixtures::bundled("exp1").cell;
  const double tp[] = {70, 70, 30, 45, 25, 25, 30, 45, 90};
  const int want[] = {30, 30, 15, 20, 10, 10, 15, 20, 40};
  std::string got;
  for (int i = 0; i < 9; ++i) {
    const int f = min_prbs(tp[i], cell);
    got += fmt::format("{}{}", i ? "/" : "", f);
    c.expect(f == want[i], fmt::format("tp_min {} -> {}", tp[i], f));
  }
  if (c.o.pass) c.o.detail = got;
  return c.o;
}

Outcome exp1_stages() {
  Checker c;
  const auto sc = fixtures::bundled("exp1");
  const auto r = run(sc);
  struct Stage {
    std::int64_t t;
    std::vector<double> ref;
  };
  const Stage stages[] = {{60000, {250}},
                          {135000, {125, 125}},
                          {210000, {80, 80, 80}},
                          {285000, {80, 80, 50, 50}}};
  std::string got;
  for (const auto& s : stages) {
    const auto& f = frame_at(r, s.t);
    c.expect(f.slices.size() == s.ref.size(), fmt::format("t={} has {} slices", s.t, f.slices.size()));
    std::string row;
    for (std::size_t i = 0; i < std::min(s.ref.size(), f.slices.size()); ++i) {
      const double v = f.slices[i].achieved_mbps;
      row += fmt::format("{}{:.1f}", i ? "/" : "", v);
      c.expect(std::fabs(v - s.ref[i]) <= 0.10 * s.ref[i],
               fmt::format("t={} S{} {:.2f} vs {}", s.t, i + 1, v, s.ref[i]));
    }
    got += (got.empty() ? "" : " -> ") + row;
  }
  const auto intents = intents_of(sc);
  std::size_t violated = 0;
  for (const auto& f : r.frames)
    for (const auto& s : detect(f, intents).slices) violated += s.tp_violation_pct > 0.0;
  c.expect(violated == 0, fmt::format("{} slice-frames below tp_min", violated));
  if (c.o.pass) c.o.detail = got + ", tp_min held in all frames";
  return c.o;
}

Outcome exp1_rtt() {
  Checker c;
  const auto sc = fixtures::bundled("exp1");
  const auto intents = intents_of(sc);
  const auto r = run(sc);
  std::map<SliceId, double> seen;
  for (const auto& f : r.frames)
    for (const auto& m : f.slices) {
      const auto& in = intents.at(m.id);
      c.expect(m.rtt_ms >= in.delay_min_ms && m.rtt_ms <= in.delay_max_ms,
               fmt::format("{} rtt {} outside [{}, {}]", m.id.str(), m.rtt_ms, in.delay_min_ms,
                           in.delay_max_ms));
      seen[m.id] = m.rtt_ms;
    }
  c.expect(seen.size() == 4, "not all slices observed");
  if (c.o.pass) {
    std::string got;
    for (const auto& [id, v] : seen) got += fmt::format("{}{:.0f}", got.empty() ? "" : "/", v);
    c.o.detail = got + " ms, all inside their bands";
  }
  return c.o;
}

Outcome compute_exactness() {
  Checker c;
  const auto sc = fixtures::bundled("exp1");
  const auto model = DataPlaneModel::from_profiles(sc.profiles);
  auto rel = [](double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); };
  double worst = 0.0;
  int points = 0;
  for (auto [type, curve] : {std::pair{NfType::CuUp, &model.cuup}, std::pair{NfType::Upf, &model.upf}}) {
    for (const auto& p : sc.profiles.at(type).points) {
      const double e1 = rel(curve->cpu_for_throughput(p.throughput_mbps), p.cpu_ms);
      const double e2 = rel(curve->throughput_for_cpu(p.cpu_ms), p.throughput_mbps);
      worst = std::max({worst, e1, e2});
      c.expect(e1 <= 1e-9 && e2 <= 1e-9,
               fmt::format("{} at {} Mbps off by {:.2e}", to_string(type), p.throughput_mbps, std::max(e1, e2)));
      ++points;
    }
  }
  c.expect(points == 6, fmt::format("{} measured points", points));
  if (c.o.pass) c.o.detail = fmt::format("{} points, max rel error {:.1e}", points, worst);
  return c.o;
}

Outcome exp2_baseline() {
  Checker c;
  auto sc = fixtures::bundled("exp2");
  sc.settings.assurance = false;
  const auto r = run(sc);
  const auto* m = r.frames.back().find({1, 5});
  if (!m) {
    c.expect(false, "S5 missing");
    return c.o;
  }
  const double v = tp_violation_pct(m->achieved_mbps, 90);
  c.expect(std::fabs(m->achieved_mbps - 29.3) <= 5.0, fmt::format("S5 {:.2f} Mbps", m->achieved_mbps));
  c.expect(std::fabs(v - 67.0) <= 7.0, fmt::format("violation {:.2f}%", v));
  if (c.o.pass) c.o.detail = fmt::format("S5 {:.2f} Mbps, violation {:.1f}%", m->achieved_mbps, v);
  return c.o;
}

Outcome exp2_assured() {
  Checker c;
  const auto r = run(fixtures::bundled("exp2"));
  const auto& f = r.frames.back();
  const std::tuple<int, double, double> want[] = {{3, 15, 30}, {4, 25, 45}, {5, 65, 90}};
  std::vector<double> viol;
  std::string got;
  for (const auto& [sd, ref, tmin] : want) {
    const auto* m = f.find({1, sd});
    if (!m) {
      c.expect(false, fmt::format("S{} missing", sd));
      return c.o;
    }
    viol.push_back(tp_violation_pct(m->achieved_mbps, tmin));
    got += fmt::format("{}S{} {:.2f} Mbps ({:.1f}%)", got.empty() ? "" : ", ", sd, m->achieved_mbps, viol.back());
    c.expect(std::fabs(m->achieved_mbps - ref) <= 8.0,
             fmt::format("S{} {:.2f} vs {}", sd, m->achieved_mbps, ref));
  }
  c.expect(viol[2] < viol[1] && viol[1] < viol[0], "violation ordering S5 < S4 < S3 broken");
  if (c.o.pass) c.o.detail = got;
  return c.o;
}

Outcome placement_oracle() {
  Checker c;
  oracle::Gen g(4242);
  const int kInstances = 1000;
  int disagree = 0, infeasible = 0;
  for (int n = 0; n < kInstances; ++n) {
    const Scenario s = gen::random_bed(g);
    const auto model = DataPlaneModel::from_profiles(s.profiles);
    ResidualCapacity residual = nominal_capacity(s.topology);
    for (auto& [id, r] : residual) {
      r.cpu_ms *= g.real(0, 1);
      r.ram_gb *= g.real(0, 1);
    }
    const double tmin = g.real(0, 200);
    const auto in = fixtures::intent(1, 0, g.real(5, 150), tmin, tmin + g.real(0, 100), g.integer(1, 3));
    const auto want = oracle::brute_force_place(in, s.topology, s.profiles, residual);
    std::optional<Placement> got;
    try {
      got = place_slice(in, {s.topology, model, s.cell}, residual);
    } catch (const NoFeasiblePlacement&) {
    }
    infeasible += !want;
    const bool same = want.has_value() == got.has_value() &&
                      (!want || (want->cuup == got->pool_cuup && want->upf == got->pool_upf));
    if (!same) ++disagree;
  }
  c.expect(disagree == 0, fmt::format("{} disagreements", disagree));
  if (c.o.pass)
    c.o.detail = fmt::format("{} instances ({} infeasible), 0 disagreements", kInstances, infeasible);
  return c.o;
}

Outcome scheduler_properties() {
  Checker c;
  oracle::Gen g(7);
  const int kInstances = 10000;
  auto sum = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); };
  for (int n = 0; n < kInstances; ++n) {
    const auto [lo, hi, budget] = gen::fill_instance(g);
    const std::size_t k = lo.size();
    const auto x = max_min_fill(lo, hi, budget);
    double cap_sum = 0;
    for (std::size_t i = 0; i < k; ++i) cap_sum += std::max(lo[i], hi[i]);
    c.expect(sum(x) <= budget + 1e-9 && std::fabs(sum(x) - std::min(budget, cap_sum)) <= 1e-7,
             fmt::format("#{} conservation", n));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (x[i] < std::max(lo[i], hi[i]) - 1e-9 && x[j] > lo[j] + 1e-9)
          c.expect(x[i] >= x[j] - 1e-9, fmt::format("#{} max-min", n));
        if (lo[i] == lo[j] && std::max(lo[i], hi[i]) == std::max(lo[j], hi[j]))
          c.expect(std::fabs(x[i] - x[j]) <= 1e-12, fmt::format("#{} equal treatment", n));
      }
    if (k > 1) {
      const auto drop = static_cast<std::size_t>(g.integer(0, static_cast<int>(k) - 1));
      auto lo2 = lo, hi2 = hi;
      lo2.erase(lo2.begin() + static_cast<long>(drop));
      hi2.erase(hi2.begin() + static_cast<long>(drop));
      const auto y = max_min_fill(lo2, hi2, budget);
      for (std::size_t i = 0, j = 0; i < k; ++i) {
        if (i == drop) continue;
        c.expect(y[j++] >= x[i] - 1e-9, fmt::format("#{} removal monotonicity", n));
      }
    }
  }
  if (c.o.pass)
    c.o.detail = fmt::format("{} instances: conservation, max-min, equal treatment, removal monotonicity",
                             kInstances);
  return c.o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Checker c;
  const fs::path base = fs::temp_directory_path() / fmt::format("sliceorch-accept-{}", ::getpid());
  fs::remove_all(base);
  std::vector<std::string> csv;
  for (const char* tag : {"a", "b"}) {
    const fs::path out = base / tag;
    const std::string cmd = fmt::format("{} run {}/exp1.scenario --out {} >/dev/null 2>&1", SLICEORCH_CLI,
                                        SLICEORCH_SCENARIO_DIR, out.string());
    c.expect(std::system(cmd.c_str()) == 0, fmt::format("run {} failed", tag));
    csv.push_back(slurp(out / "frames.csv"));
  }
  fs::remove_all(base);
  c.expect(!csv[0].empty(), "empty frames.csv");
  c.expect(csv[0] == csv[1], "frames.csv differs between runs");
  if (c.o.pass) c.o.detail = fmt::format("frames.csv identical ({} bytes)", csv[0].size());
  return c.o;
}

Outcome cost_substitute() {
  Checker c;
  const auto topo = fixtures::testbed().topology;
  const auto& e = topo.pool("edge").rates;
  const auto& r = topo.pool("regional").rates;
  const auto& ce = topo.pool("central").rates;
  oracle::Gen g(2718);
  for (int n = 0; n < 1000; ++n) {
    const double q = g.real(0.01, 500), ram = g.real(0.001, 5), h = g.real(0.01, 48);
    const ThroughputSegment tl[] = {{h * 3600, g.real(0, 250)}};
    const NfCharge a[] = {{q, ram, e}}, b[] = {{q, ram, r}}, d[] = {{q, ram, ce}};
    const double x = accrue_cost(a, e.bw_rate, tl, h), y = accrue_cost(b, r.bw_rate, tl, h),
                 z = accrue_cost(d, ce.bw_rate, tl, h);
    c.expect(x > y && y > z, fmt::format("ordering broken at load #{}", n));
  }
  for (int n = 0; n < 100; ++n) {
    std::vector<NfCharge> nfs;
    double expect = 0;
    const double h = g.real(0.01, 100);
    for (int i = 0, k = g.integer(1, 4); i < k; ++i) {
      NfCharge nf{g.real(0, 500), g.real(0, 10), {g.real(0, 1), g.real(0, 1), g.real(0, 1)}};
      nfs.push_back(nf);
      expect += (nf.cpu_quota_ms / 100 * nf.rates.cpu_rate + nf.ram_gb * nf.rates.ram_rate) * h;
    }
    const double bw = g.real(0, 1);
    std::vector<ThroughputSegment> tl;
    for (int i = 0, k = g.integer(0, 4); i < k; ++i) {
      tl.push_back({g.real(0, 3600), g.real(0, 300)});
      expect += bw * tl.back().seconds * tl.back().mbps / 8 / 1000;
    }
    c.expect(fixtures::close(accrue_cost(nfs, bw, tl, h), expect, 1e-9), fmt::format("closed form #{}", n));
  }
  if (c.o.pass) c.o.detail = "Edge > Regional > Central on 1000 loads; closed form on 100 inputs";
  return c.o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"placement reproduction (exp1)", placement_reproduction},
      {"PRB floors (nine reference values)", prb_floors},
      {"exp1 throughput stages", exp1_stages},
      {"exp1 RTT bands", exp1_rtt},
      {"compute model through measured points", compute_exactness},
      {"exp2 baseline without assurance", exp2_baseline},
      {"exp2 with assurance", exp2_assured},
      {"placement oracle equivalence", placement_oracle},
      {"scheduler property suite", scheduler_properties},
      {"determinism of frames.csv", determinism},
      {"cost substitute (ordering + closed form)", cost_substitute},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    failed += !o.pass;
    fmt::print("{} {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
