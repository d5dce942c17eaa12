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

#include <doctest.h>

#include "oracles/oracles.hpp"
#include "sliceorch/placement.hpp"
#include "sliceorch/radio_scheduler.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace sliceorch;
using fixtures::intent;

namespace {

struct Bed {
  Scenario s = fixtures::testbed();
  DataPlaneModel model = DataPlaneModel::from_profiles(s.profiles);
  PlacementContext ctx() const { return {s.topology, model, s.cell}; }
};

}  // namespace

TEST_CASE("round-trip time per pool pair") {
  const auto topo = fixtures::testbed().topology;
  CHECK(rtt("edge", "edge", topo) == 20);
  CHECK(rtt("regional", "regional", topo) == 60);
  CHECK(rtt("central", "central", topo) == 80);
  CHECK(rtt("edge", "central", topo) == 80);
  CHECK(rtt("regional", "central", topo) == 80);
  CHECK(rtt("central", "edge", topo) == 140);
}

TEST_CASE("reference slices land where the testbed put them") {
  Bed b;
  ResidualCapacity residual = nominal_capacity(b.s.topology);
  struct Row {
    SliceIntent in;
    const char* pool;
    int prbs;
    double rtt;
  };
  const Row rows[] = {{intent(1, 50, 100, 70, 250), "central", 30, 80},
                      {intent(2, 30, 70, 70, 250), "regional", 30, 60},
                      {intent(3, 10, 50, 30, 250), "edge", 15, 20},
                      {intent(4, 10, 50, 45, 250), "edge", 20, 20}};
  for (const auto& r : rows) {
    const Placement p = place_slice(r.in, b.ctx(), residual);
    CAPTURE(r.in.id.str());
    CHECK(p.pool_cuup == r.pool);
    CHECK(p.pool_upf == r.pool);
    CHECK(p.prb_floor == r.prbs);
    CHECK(p.predicted_rtt_ms == r.rtt);
    CHECK(p.predicted_rtt_ms >= r.in.delay_min_ms);
    CHECK(p.predicted_rtt_ms <= r.in.delay_max_ms);
    residual[p.pool_cuup].cpu_ms -= p.cpu_quota.total();
  }
}

TEST_CASE("relaxed delay goes to the cheapest pool; impossible delay has no answer") {
  Bed b;
  const auto residual = nominal_capacity(b.s.topology);
  const Placement p = place_slice(intent(9, 0, 1000, 10, 250), b.ctx(), residual);
  CHECK(p.pool_cuup == "central");
  CHECK(p.pool_upf == "central");
  CHECK_THROWS_AS(place_slice(intent(9, 0, 1, 10, 250), b.ctx(), residual), NoFeasiblePlacement);
  // unsatisfiable throughput is reported first
  CHECK_THROWS_AS(place_slice(intent(9, 0, 1, 300, 400), b.ctx(), residual), SlaUnsatisfiable);
}

TEST_CASE("capacity limits candidates and co-located pairs count both NFs") {
  Bed b;
  auto residual = nominal_capacity(b.s.topology);
  const auto in = intent(3, 10, 50, 30, 250);
  const auto q = slice_cpu_demand(b.model, 30);
  residual["edge"].cpu_ms = q.total() - 1;
  CHECK(feasible_placements(in, b.ctx(), residual).empty());
  residual["edge"].cpu_ms = q.total();
  CHECK(feasible_placements(in, b.ctx(), residual).size() == 1);
  residual["edge"].ram_gb = 0.0085;
  CHECK(feasible_placements(in, b.ctx(), residual).empty());
}

TEST_CASE("daily cost of a placement") {
  Bed b;
  const auto in = intent(1, 50, 100, 70, 250);
  const Placement p = place_slice(in, b.ctx(), nominal_capacity(b.s.topology));
  const auto q = slice_cpu_demand(b.model, 70);
  const double expect = 24 * (q.cuup_ms / 100 * 0.001 + 0.0038 * 0.002) +
                        24 * (q.upf_ms / 100 * 0.001 + 0.0048 * 0.002) +
                        0.1 * 70 * 86400 / 8 / 1000;
  CHECK(fixtures::close(steady_daily_cost(p, in, b.s.topology), expect));
}

TEST_CASE("property: place_slice agrees with exhaustive search") {
  oracle::Gen g(99);
  const int kInstances = 1000;
  int disagreements = 0, infeasible = 0;
  for (int n = 0; n < kInstances; ++n) {
    const Scenario s = gen::random_bed(g);
    const auto model = DataPlaneModel::from_profiles(s.profiles);
    ResidualCapacity residual = nominal_capacity(s.topology);
    for (auto& [id, r] : residual) {
      r.cpu_ms *= g.real(0, 1);
      r.ram_gb *= g.real(0, 1);
    }
    const double tmin = g.real(0, 200);
    const SliceIntent in = intent(1, 0, g.real(5, 150), tmin, tmin + g.real(0, 100), g.integer(1, 3));
    const auto want = oracle::brute_force_place(in, s.topology, s.profiles, residual);
    std::optional<Placement> got;
    try {
      got = place_slice(in, {s.topology, model, s.cell}, residual);
    } catch (const NoFeasiblePlacement&) {
    }
    CAPTURE(n);
    if (!want) ++infeasible;
    const bool same = want.has_value() == got.has_value() &&
                      (!want || (want->cuup == got->pool_cuup && want->upf == got->pool_upf &&
                                 want->rtt == got->predicted_rtt_ms));
    if (!same) ++disagreements;
    CHECK(same);
  }
  CHECK(disagreements == 0);
  // both outcomes are exercised
  CHECK(infeasible > 50);
  CHECK(infeasible < kInstances - 50);
}
