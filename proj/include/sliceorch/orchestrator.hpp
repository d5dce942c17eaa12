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

#ifndef SLICEORCH_ORCHESTRATOR_HPP
#define SLICEORCH_ORCHESTRATOR_HPP

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sliceorch/sim_engine.hpp"

namespace sliceorch {

/// Answer of a what-if placement query. Infeasibility is an answer, not an error.
struct WhatIfAnswer {
  bool feasible = false;
  std::optional<Placement> placement;
  double rtt_ms = 0.0;
  double daily_cost = 0.0;
  std::string reason;
};

nlohmann::json to_json(const WhatIfAnswer& answer);

/// A live orchestration session. Every mutation runs on one worker thread in
/// submission order; readers get copies of the last published snapshot.
class Session {
 public:
  /// `wall_tick` paces the clock while started; simulated time always moves
  /// by the scenario tick per step.
  explicit Session(Scenario scenario,
                   std::chrono::milliseconds wall_tick = std::chrono::milliseconds(1000));
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Throws DuplicateSlice or InvariantError; admission failures come back as
  /// a Reject record.
  ReconcileRecord submit_intent(const SliceIntent& intent);
  /// Throws UnknownSlice.
  ReconcileRecord retire(const SliceId& id);
  void set_assurance(bool enabled);
  /// Applies scenario events due at the current time and samples one frame.
  MetricsFrame step();
  void start();
  void pause();
  bool running() const;

  /// Pure: evaluated against the published residual capacity.
  WhatIfAnswer whatif_placement(const SliceIntent& intent) const;

  std::vector<MetricsFrame> frames_since(std::uint64_t seq) const;
  std::vector<ReconcileRecord> events_since(std::uint64_t seq) const;
  /// Blocks until a frame newer than `seq` exists or `timeout` passes.
  std::vector<MetricsFrame> wait_frames(std::uint64_t seq, std::chrono::milliseconds timeout) const;

  NetworkState snapshot() const;
  std::int64_t now_ms() const;
  const Scenario& scenario() const noexcept { return scenario_; }

 private:
  template <typename F>
  auto submit(F&& f) -> decltype(f());
  void worker();
  void publish();
  MetricsFrame advance();

  const Scenario scenario_;
  const std::chrono::milliseconds wall_tick_;

  // owned by the worker
  Simulator sim_;
  std::size_t next_event_ = 0;
  std::int64_t clock_ms_ = 0;

  mutable std::mutex queue_mu_;
  std::condition_variable queue_cv_;
  std::deque<std::function<void()>> queue_;
  bool running_ = false;
  bool stopping_ = false;

  mutable std::shared_mutex snap_mu_;
  mutable std::condition_variable_any frame_cv_;
  NetworkState snap_state_;
  ResidualCapacity snap_residual_;
  std::vector<MetricsFrame> frames_;
  std::vector<ReconcileRecord> log_;
  std::int64_t snap_clock_ = 0;

  std::thread thread_;
};

}  // namespace sliceorch

#endif  // SLICEORCH_ORCHESTRATOR_HPP
