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

#include "sliceorch/http_api.hpp"

#include <charconv>

#include <fmt/format.h>
#include <httplib.h>

#include "sliceorch/json_io.hpp"

namespace sliceorch {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, std::string_view kind, std::string_view what) {
  reply(res, status, json{{"error", kind}, {"message", what}});
}

std::uint64_t since_param(const httplib::Request& req) {
  if (!req.has_param("since")) return 0;
  const std::string v = req.get_param_value("since");
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ScenarioError("since", fmt::format("bad value '{}'", v));
  return out;
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ScenarioError("body", e.what());
  }
}

// Maps library errors onto status codes; everything else is a 500.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const DuplicateSlice& e) {
    fail(res, 409, "DuplicateSlice", e.what());
  } catch (const UnknownSlice& e) {
    fail(res, 404, "UnknownSlice", e.what());
  } catch (const ScenarioError& e) {
    fail(res, 400, "MalformedRequest", e.what());
  } catch (const InvariantError& e) {
    fail(res, 400, "InvalidIntent", e.what());
  } catch (const std::exception& e) {
    fail(res, 500, "Internal", e.what());
  }
}

json frames_json(const std::vector<MetricsFrame>& frames) {
  json arr = json::array();
  for (const auto& f : frames) arr.push_back(to_json(f));
  return arr;
}

}  // namespace

std::pair<std::string, int> parse_listen_address(const std::string& addr) {
  std::string host = "127.0.0.1";
  std::string port = addr;
  if (auto colon = addr.rfind(':'); colon != std::string::npos) {
    if (colon > 0) host = addr.substr(0, colon);
    port = addr.substr(colon + 1);
  }
  int p = -1;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), p);
  if (ec != std::errc() || ptr != port.data() + port.size() || p < 0 || p > 65535)
    throw InvariantError(fmt::format("bad listen address '{}'", addr));
  return {host, p};
}

HttpApi::HttpApi(Session& session) : session_(session), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;

  s.Post("/slices", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const SliceIntent intent = intent_from_json(parse_body(req), "intent");
      const ReconcileRecord r = session_.submit_intent(intent);
      reply(res, r.action == ReconcileAction::Admit ? 201 : 422, to_json(r));
    });
  });

  s.Get("/slices", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      json arr = json::array();
      for (const auto& [id, slice] : session_.snapshot().slices) arr.push_back(to_json(slice.state));
      reply(res, 200, arr);
    });
  });

  s.Delete(R"(/slices/(\d+)-(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const SliceId id = SliceId::parse(fmt::format("{}-{}", req.matches[1].str(), req.matches[2].str()));
      reply(res, 200, to_json(session_.retire(id)));
    });
  });

  s.Get("/topology", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      const Scenario& sc = session_.scenario();
      json j = to_json(sc.topology);
      json budgets = json::object();
      for (const auto& p : sc.topology.pools())
        budgets[p.id] = dataplane_budget_ms(p, sc.topology, sc.profiles);
      j["dataplane_budget_ms"] = budgets;
      j["cell"] = to_json(sc.cell);
      reply(res, 200, j);
    });
  });

  s.Get("/metrics", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, frames_json(session_.frames_since(since_param(req)))); });
  });

  s.Get("/events", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      json arr = json::array();
      for (const auto& r : session_.events_since(since_param(req))) arr.push_back(to_json(r));
      reply(res, 200, arr);
    });
  });

  s.Post("/whatif/placement", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const SliceIntent intent = intent_from_json(parse_body(req), "intent");
      reply(res, 200, to_json(session_.whatif_placement(intent)));
    });
  });

  s.Post(R"(/session/(start|pause|step))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string cmd = req.matches[1].str();
      if (cmd == "step") {
        reply(res, 200, to_json(session_.step()));
        return;
      }
      if (cmd == "start") session_.start();
      else session_.pause();
      reply(res, 200, json{{"running", session_.running()}, {"t_ms", session_.now_ms()}});
    });
  });

  s.Post("/session/assurance", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.is_object() || !body.contains("enabled") || !body["enabled"].is_boolean())
        throw ScenarioError("body.enabled", "expected a boolean");
      session_.set_assurance(body["enabled"].get<bool>());
      reply(res, 200, json{{"assurance", body["enabled"]}});
    });
  });

  // Server-sent events: one `frame` event per MetricsFrame, id = seq.
  // `limit` closes the stream after that many frames.
  s.Get("/stream", [this](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t since = 0;
    std::size_t limit = 0;
    try {
      since = since_param(req);
      if (req.has_param("limit")) limit = std::stoul(req.get_param_value("limit"));
    } catch (const std::exception& e) {
      fail(res, 400, "MalformedRequest", e.what());
      return;
    }
    auto cursor = std::make_shared<std::uint64_t>(since);
    auto sent = std::make_shared<std::size_t>(0);
    res.set_chunked_content_provider(
        "text/event-stream", [this, cursor, sent, limit](std::size_t, httplib::DataSink& sink) {
          for (const auto& f : session_.wait_frames(*cursor, std::chrono::milliseconds(250))) {
            const std::string msg =
                fmt::format("id: {}\nevent: frame\ndata: {}\n\n", f.seq, to_json(f).dump());
            if (!sink.write(msg.data(), msg.size())) return false;
            *cursor = f.seq;
            if (limit && ++*sent >= limit) {
              sink.done();
              return true;
            }
          }
          return sink.is_writable();
        });
  });
}

HttpApi::~HttpApi() { stop(); }

int HttpApi::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpApi::serve() { return server_->listen_after_bind(); }

void HttpApi::stop() {
  if (server_) server_->stop();
}

}  // namespace sliceorch
