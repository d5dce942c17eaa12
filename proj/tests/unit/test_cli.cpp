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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>
#include <sys/wait.h>

#include "sliceorch/run_output.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = SLICEORCH_CLI;
const std::string kScenarios = SLICEORCH_SCENARIO_DIR;

int exit_code(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("sliceorch-cli-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code("run " + kScenarios + "/exp1.scenario") == 0);
  CHECK(exit_code("run /nonexistent/none.scenario") == 2);
  CHECK(exit_code("run " + kScenarios + "/exp2.scenario --no-assurance --fail-on-violation") == 3);
  // with assurance the remaining shortfall is still a violation
  CHECK(exit_code("run " + kScenarios + "/exp2.scenario --fail-on-violation") == 3);
  CHECK(exit_code("run " + kScenarios + "/exp2.scenario --no-assurance") == 0);
  CHECK(exit_code("run " + kScenarios + "/exp1.scenario --fail-on-violation --seed 7") == 0);
  CHECK(exit_code("") != 0);
}

TEST_CASE("malformed scenarios exit 2") {
  TempDir d("bad");
  fs::create_directories(d.path);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(d.path / name) << text;
    return (d.path / name).string();
  };
  CHECK(exit_code("run " + write("a.scenario", "name: [unclosed")) == 2);
  CHECK(exit_code("run " + write("b.scenario", "name: x\n")) == 2);
  // valid syntax, broken semantics: an unknown tier
  std::string text = slurp(kScenarios + "/exp1.scenario");
  text.replace(text.find("tier: Edge"), 10, "tier: Fog");
  CHECK(exit_code("run " + write("c.scenario", text)) == 2);
}

TEST_CASE("run directory contents") {
  TempDir d("exp1");
  REQUIRE(exit_code("run " + kScenarios + "/exp1.scenario --out " + d.path.string()) == 0);
  for (const char* f : {"scenario.json", "frames.csv", "frames.jsonl", "events.jsonl", "summary.json"})
    CHECK(fs::exists(d.path / f));

  const json summary = json::parse(slurp(d.path / "summary.json"));
  CHECK(summary["violations"] == 0);
  CHECK(summary["frames"] == 300);
  CHECK(summary["rejections"] == 0);
  CHECK(summary["slices"].size() == 4);

  // the persisted scenario reloads to the same value
  const auto original = fixtures::bundled("exp1");
  CHECK(sliceorch::load_scenario_file(d.path / "scenario.json") == original);

  // the persisted event log replays to the batch run's final state
  const auto result = sliceorch::run(original);
  const auto log = sliceorch::parse_events_jsonl(slurp(d.path / "events.jsonl"));
  CHECK(log == result.log);
  CHECK(sliceorch::replay(log) == result.final_state);
  CHECK(slurp(d.path / "frames.csv") == sliceorch::frames_csv(result.frames));

  std::istringstream lines(slurp(d.path / "frames.jsonl"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(json::parse(line)["seq"] == ++n);
  }
  CHECK(n == 300);
}

TEST_CASE("two runs write byte-identical frames") {
  TempDir a("det-a"), b("det-b");
  REQUIRE(exit_code("run " + kScenarios + "/exp1.scenario --out " + a.path.string()) == 0);
  REQUIRE(exit_code("run " + kScenarios + "/exp1.scenario --out " + b.path.string()) == 0);
  CHECK(slurp(a.path / "frames.csv") == slurp(b.path / "frames.csv"));
  CHECK(slurp(a.path / "events.jsonl") == slurp(b.path / "events.jsonl"));
  CHECK(slurp(a.path / "summary.json") == slurp(b.path / "summary.json"));
}

TEST_CASE("serve mode answers HTTP until interrupted") {
  const std::string cmd =
      "timeout --preserve-status -s INT 3 " + kCli + " run " + kScenarios + "/exp2.scenario --serve 127.0.0.1:0";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[256] = {};
  REQUIRE(std::fgets(buf, sizeof buf, pipe));
  const std::string banner = buf;
  CHECK(banner.starts_with("serving exp2 on http://127.0.0.1:"));
  const int port = std::stoi(banner.substr(banner.rfind(':') + 1));

  httplib::Client c("127.0.0.1", port);
  auto r = c.Get("/topology");
  REQUIRE(r);
  CHECK(r->status == 200);
  r = c.Post("/session/step", "", "application/json");
  REQUIRE(r);
  CHECK(json::parse(r->body)["slices"].size() == 4);

  const int status = ::pclose(pipe);
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}
