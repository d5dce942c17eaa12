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

#ifndef SLICEORCH_TESTS_FIXTURES_HPP
#define SLICEORCH_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include "sliceorch/compute_model.hpp"
#include "sliceorch/scenario.hpp"

namespace fixtures {

inline sliceorch::Scenario bundled(const std::string& name) {
  return sliceorch::load_scenario_file(std::string(SLICEORCH_SCENARIO_DIR) + "/" + name +
                                       ".scenario");
}

// exp1 with its events stripped: the reference testbed with nothing running.
inline sliceorch::Scenario testbed() {
  auto s = bundled("exp1");
  s.events.clear();
  s.settings.horizon_ms = 0;
  return s;
}

inline sliceorch::SliceIntent intent(int sd, double dmin, double dmax, double tmin, double tmax,
                                     int priority = 1) {
  return {{1, sd}, dmin, dmax, tmin, tmax, priority};
}

inline bool close(double a, double b, double rel = 1e-9) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel * scale;
}

}  // namespace fixtures

#endif  // SLICEORCH_TESTS_FIXTURES_HPP
