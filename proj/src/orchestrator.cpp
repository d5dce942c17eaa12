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

#include "sliceorch/orchestrator.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "sliceorch/json_io.hpp"
#include "sliceorch/radio_scheduler.hpp"

namespace sliceorch {

nlohmann::json to_json(const WhatIfAnswer& answer) {
  nlohmann::json j{{"feasible", answer.feasible}};
  if (answer.placement) {
    j["placement"] = to_json(*answer.placement);
    j["rtt_ms"] = answer.rtt_ms;
    j["daily_cost"] = answer.daily_cost;
  }
  if (!answer.reason.empty()) j["reason"] = answer.reason;
  return j;
}

Session::Session(Scenario scenario, std::chrono::milliseconds wall_tick)
    : scenario_(std::move(scenario)), wall_tick_(wall_tick), sim_(scenario_) {
  publish();
  thread_ = std::thread([this] { worker(); });
}

Session::~Session() {
  {
    std::lock_guard lk(queue_mu_);
    stopping_ = true;
  }
  queue_cv_.notify_all();
  thread_.join();
}

template <typename F>
auto Session::submit(F&& f) -> decltype(f()) {
  using R = decltype(f());
  auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(f));
  auto fut = task->get_future();
  {
    std::lock_guard lk(queue_mu_);
    queue_.push_back([task] { (*task)(); });
  }
  queue_cv_.notify_all();
  return fut.get();
}

void Session::worker() {
  auto next_tick = std::chrono::steady_clock::now() + wall_tick_;
  std::unique_lock lk(queue_mu_);
  for (;;) {
    if (stopping_) return;
    if (!queue_.empty()) {
      auto job = std::move(queue_.front());
      queue_.pop_front();
      lk.unlock();
      job();
      lk.lock();
      continue;
    }
    if (running_) {
      if (std::chrono::steady_clock::now() >= next_tick) {
        next_tick += wall_tick_;
        lk.unlock();
        advance();
        lk.lock();
        continue;
      }
      queue_cv_.wait_until(lk, next_tick);
    } else {
      queue_cv_.wait(lk);
      next_tick = std::chrono::steady_clock::now() + wall_tick_;
    }
  }
}

void Session::publish() {
  std::unique_lock lk(snap_mu_);
  snap_state_ = sim_.state();
  snap_residual_ = sim_.residual();
  const auto& log = sim_.log();
  log_.insert(log_.end(), log.begin() + static_cast<std::ptrdiff_t>(log_.size()), log.end());
  if (sim_.last_frame() && (frames_.empty() || frames_.back().seq != sim_.last_frame()->seq))
    frames_.push_back(*sim_.last_frame());
  snap_clock_ = clock_ms_;
  lk.unlock();
  frame_cv_.notify_all();
}

MetricsFrame Session::advance() {
  const auto& events = scenario_.events;
  while (next_event_ < events.size() && events[next_event_].t_ms <= clock_ms_) {
    try {
      sim_.apply(events[next_event_]);
    } catch (const Error&) {
      // scenario event clashing with an operator command; skip it
    }
    ++next_event_;
  }
  MetricsFrame f = sim_.step(clock_ms_);
  clock_ms_ += scenario_.settings.tick_ms;
  publish();
  return f;
}

ReconcileRecord Session::submit_intent(const SliceIntent& intent) {
  return submit([&] {
    ReconcileRecord r = sim_.admit(intent, clock_ms_);
    publish();
    return r;
  });
}

ReconcileRecord Session::retire(const SliceId& id) {
  return submit([&] {
    ReconcileRecord r = sim_.retire(id, clock_ms_);
    publish();
    return r;
  });
}

void Session::set_assurance(bool enabled) {
  submit([&] {
    sim_.set_assurance(enabled, clock_ms_);
    publish();
  });
}

MetricsFrame Session::step() {
  return submit([&] { return advance(); });
}

void Session::start() {
  {
    std::lock_guard lk(queue_mu_);
    running_ = true;
  }
  queue_cv_.notify_all();
}

void Session::pause() {
  {
    std::lock_guard lk(queue_mu_);
    running_ = false;
  }
  queue_cv_.notify_all();
}

bool Session::running() const {
  std::lock_guard lk(queue_mu_);
  return running_;
}

WhatIfAnswer Session::whatif_placement(const SliceIntent& intent) const {
  intent.validate();
  ResidualCapacity residual;
  NetworkState state;
  {
    std::shared_lock lk(snap_mu_);
    residual = snap_residual_;
    state = snap_state_;
  }
  const DataPlaneModel& model = sim_.model();  // immutable after construction
  WhatIfAnswer a;
  try {
    Placement p = place_slice(intent, {scenario_.topology, model, scenario_.cell}, residual);
    int floors = p.prb_floor;
    for (const auto& [id, s] : state.slices) floors += s.placement().prb_floor;
    if (floors > scenario_.cell.prb_budget)
      throw AdmissionOverflow(fmt::format("PRB floors {} exceed budget {}", floors,
                                          scenario_.cell.prb_budget));
    a.feasible = true;
    a.rtt_ms = p.predicted_rtt_ms;
    a.daily_cost = steady_daily_cost(p, intent, scenario_.topology);
    a.placement = std::move(p);
  } catch (const NoFeasiblePlacement& e) {
    a.reason = fmt::format("no feasible placement: {}", e.what());
  } catch (const SlaUnsatisfiable& e) {
    a.reason = fmt::format("SLA unsatisfiable: {}", e.what());
  } catch (const AdmissionOverflow& e) {
    a.reason = fmt::format("admission overflow: {}", e.what());
  }
  return a;
}

std::vector<MetricsFrame> Session::frames_since(std::uint64_t seq) const {
  std::shared_lock lk(snap_mu_);
  auto it = std::upper_bound(frames_.begin(), frames_.end(), seq,
                             [](std::uint64_t s, const MetricsFrame& f) { return s < f.seq; });
  return {it, frames_.end()};
}

std::vector<ReconcileRecord> Session::events_since(std::uint64_t seq) const {
  std::shared_lock lk(snap_mu_);
  auto it = std::upper_bound(log_.begin(), log_.end(), seq,
                             [](std::uint64_t s, const ReconcileRecord& r) { return s < r.sequence; });
  return {it, log_.end()};
}

std::vector<MetricsFrame> Session::wait_frames(std::uint64_t seq,
                                               std::chrono::milliseconds timeout) const {
  std::shared_lock lk(snap_mu_);
  frame_cv_.wait_for(lk, timeout, [&] { return !frames_.empty() && frames_.back().seq > seq; });
  auto it = std::upper_bound(frames_.begin(), frames_.end(), seq,
                             [](std::uint64_t s, const MetricsFrame& f) { return s < f.seq; });
  return {it, frames_.end()};
}

NetworkState Session::snapshot() const {
  std::shared_lock lk(snap_mu_);
  return snap_state_;
}

std::int64_t Session::now_ms() const {
  std::shared_lock lk(snap_mu_);
  return snap_clock_;
}

}  // namespace sliceorch
