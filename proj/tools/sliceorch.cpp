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

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sliceorch/http_api.hpp"
#include "sliceorch/orchestrator.hpp"
#include "sliceorch/run_output.hpp"
#include "sliceorch/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitScenario = 2;
constexpr int kExitViolation = 3;

sliceorch::HttpApi* g_api = nullptr;

void on_signal(int) {
  if (g_api) g_api->stop();
}

void print_summary(const sliceorch::RunSummary& s) {
  fmt::print("scenario {}: {} frames, {} violations, {} rejections, cost {:.6f}\n", s.scenario,
             s.frames, s.violations, s.rejections, s.total_cost);
  for (const auto& a : s.slices)
    fmt::print("  {} cuup={} upf={} prb_floor={} rtt={:.1f}ms mean={:.3f}Mbps viol_mean={:.2f}% "
               "viol_max={:.2f}%\n",
               a.id.str(), a.pool_cuup, a.pool_upf, a.prb_floor, a.rtt_ms, a.mean_achieved_mbps,
               a.mean_violation_pct, a.max_violation_pct);
}

int serve(const sliceorch::Scenario& scenario, const std::string& addr) {
  sliceorch::Session session(scenario);
  sliceorch::HttpApi api(session);
  const auto [host, port] = sliceorch::parse_listen_address(addr);
  const int bound = api.bind(host, port);
  if (bound < 0) {
    fmt::print(stderr, "cannot listen on {}\n", addr);
    return 1;
  }
  fmt::print("serving {} on http://{}:{}\n", scenario.name, host, bound);
  std::fflush(stdout);
  g_api = &api;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  api.serve();
  g_api = nullptr;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intent-driven slice orchestration simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string serve_addr;
  bool no_assurance = false;
  bool fail_on_violation = false;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run a scenario to its horizon, or serve it live");
  run->add_option("scenario", scenario_path, "Scenario file (YAML or JSON)")->required();
  run->add_option("--out", out_dir, "Run directory for outputs");
  run->add_flag("--no-assurance", no_assurance, "Start with the assurance loop disabled");
  run->add_flag("--fail-on-violation", fail_on_violation, "Exit 3 if any SLA is violated");
  run->add_option("--seed", seed, "Reserved; the simulator is deterministic");
  run->add_option("--serve", serve_addr, "Serve the HTTP API on host:port instead of batch running");

  CLI11_PARSE(app, argc, argv);

  sliceorch::Scenario scenario;
  try {
    scenario = sliceorch::load_scenario_file(scenario_path);
    if (no_assurance) scenario.settings.assurance = false;
  } catch (const std::exception& e) {
    fmt::print(stderr, "scenario error: {}\n", e.what());
    return kExitScenario;
  }

  try {
    if (!serve_addr.empty()) return serve(scenario, serve_addr);

    const auto result = sliceorch::run(scenario);
    const auto summary = out_dir.empty() ? sliceorch::summarize(scenario, result)
                                         : sliceorch::write_run_directory(out_dir, scenario, result);
    print_summary(summary);
    if (fail_on_violation && summary.violations > 0) return kExitViolation;
    return kExitOk;
  } catch (const sliceorch::InvariantError& e) {
    fmt::print(stderr, "scenario error: {}\n", e.what());
    return kExitScenario;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
