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

#ifndef SLICEORCH_HTTP_API_HPP
#define SLICEORCH_HTTP_API_HPP

#include <memory>
#include <string>

#include "sliceorch/orchestrator.hpp"

namespace httplib {
class Server;
}

namespace sliceorch {

/// JSON-over-HTTP front end of a Session.
///
///   POST   /slices                  intent -> record (201 admitted, 422 rejected)
///   GET    /slices                  active slices
///   DELETE /slices/{sst-sd}         decommission
///   GET    /topology                pools, links, cell, data-plane budgets
///   GET    /metrics?since=seq       frames after seq
///   POST   /whatif/placement        intent -> what-if answer
///   POST   /session/{start|pause|step}
///   POST   /session/assurance       {"enabled": bool}
///   GET    /events?since=seq        reconcile records after seq
///   GET    /stream?since=seq        server-sent events, one per frame
class HttpApi {
 public:
  explicit HttpApi(Session& session);
  ~HttpApi();

  /// Binds `host:port` (port 0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool serve();
  void stop();

 private:
  Session& session_;
  std::unique_ptr<httplib::Server> server_;
};

/// Splits "host:port" (or ":port", or "port"); throws InvariantError.
std::pair<std::string, int> parse_listen_address(const std::string& addr);

}  // namespace sliceorch

#endif  // SLICEORCH_HTTP_API_HPP
