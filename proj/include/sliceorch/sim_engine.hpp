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

#ifndef SLICEORCH_SIM_ENGINE_HPP
#define SLICEORCH_SIM_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sliceorch/assurance.hpp"
#include "sliceorch/compute_model.hpp"
#include "sliceorch/placement.hpp"
#include "sliceorch/scenario.hpp"
#include "sliceorch/state.hpp"

namespace sliceorch {

/// Single-threaded, deterministic network simulator. Events mutate the
/// reconciled state (and append to the log); step() runs the control loop when
/// due and samples one frame.
class Simulator {
 public:
  /// Validates the scenario. Events are not applied; callers feed them.
  explicit Simulator(Scenario scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  const DataPlaneModel& model() const noexcept { return model_; }
  const NetworkState& state() const noexcept { return state_; }
  const std::vector<ReconcileRecord>& log() const noexcept { return log_; }
  const std::optional<MetricsFrame>& last_frame() const noexcept { return last_frame_; }
  std::int64_t now() const noexcept { return now_; }

  /// Offered load of a slice: the last demand event, else tp_max.
  double demand(const SliceId& id) const;

  /// Nominal capacity minus the reservations of every active slice.
  ResidualCapacity residual() const;
  PlacementContext placement_context() const { return {scenario_.topology, model_, scenario_.cell}; }
  AssuranceConfig assurance_config() const {
    return {scenario_.topology, model_, scenario_.cell, scenario_.profiles};
  }

  /// Dispatches one scenario event. Admission failures become Reject records.
  void apply(const SimEvent& event);

  /// Admission: lifecycle Preparation -> Commissioning -> Operation, or a
  /// logged rejection. Throws DuplicateSlice or InvariantError before logging.
  const ReconcileRecord& admit(const SliceIntent& intent, std::int64_t t_ms);
  /// Operation -> Decommissioning -> Terminated; frees resources. Throws UnknownSlice.
  const ReconcileRecord& retire(const SliceId& id, std::int64_t t_ms);
  void set_demand(const SliceId& id, double mbps);
  void set_assurance(bool enabled, std::int64_t t_ms);

  /// Runs the control loop if the intent set changed or its period elapsed,
  /// accrues cost since the previous frame and samples the frame at `t_ms`.
  /// `t_ms` must not go backwards.
  const MetricsFrame& step(std::int64_t t_ms);

  /// Metrics of the current state at `t_ms`, cost excluded. No side effects.
  MetricsFrame sample(std::int64_t t_ms) const;

 private:
  ReconcileRecord& append(ReconcileRecord record);
  void control(std::int64_t t_ms);

  Scenario scenario_;
  DataPlaneModel model_;
  NetworkState state_;
  std::map<SliceId, double> demand_;
  std::vector<ReconcileRecord> log_;
  std::optional<MetricsFrame> last_frame_;
  std::int64_t now_ = 0;
  std::optional<std::int64_t> last_control_;
  bool dirty_ = false;
  std::uint64_t next_frame_ = 1;
};

struct RunResult {
  std::vector<MetricsFrame> frames;
  std::vector<ReconcileRecord> log;
  NetworkState final_state;
};

/// Replays every event and samples one frame per tick on [0, horizon).
RunResult run(const Scenario& scenario);

/// Cost of holding `frame` for `seconds`: reservations plus bandwidth at the UPF pool.
double frame_cost(const MetricsFrame& frame, const Scenario& scenario, const DataPlaneModel& model,
                  double seconds);

/// Independent consistency check of one frame against the models. Returns
/// one message per broken rule; empty when the frame is sound.
std::vector<std::string> validate_frame(const MetricsFrame& frame, const Scenario& scenario,
                                        const std::map<SliceId, SliceIntent>& intents);

}  // namespace sliceorch

#endif  // SLICEORCH_SIM_ENGINE_HPP
