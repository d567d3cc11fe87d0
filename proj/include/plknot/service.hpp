// Copyright 2026 The plknot Authors
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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "plknot/diagram.hpp"

namespace plknot::service {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";

  /// Parsed body; throws if it is not JSON.
  nlohmann::json json() const { return nlohmann::json::parse(body); }
};

/// JSON payloads shared by the HTTP service and the CLI.
nlohmann::json crossings_json(const Shadow& shadow);
nlohmann::json status_json(const Pseudodiagram& p);

struct Session;
struct Job;

struct Options {
  /// How long a query waits for its job before answering 202 with the job id.
  /// Overridable per request with ?wait_ms=.
  std::chrono::milliseconds default_wait{2000};
  /// Worker threads per WeRe-set job (0 = hardware concurrency).
  unsigned were_threads = 0;
};

/// Transport-independent request handler. Thread-safe: any number of requests
/// may be handled concurrently. Mutations of one session are serialized.
///
///   POST /api/sessions                        {"generator":{...}} | {"document":{...}} | document
///   GET  /api/sessions/{id}
///   GET  /api/sessions/{id}/document          exactly write_shadow()
///   PUT  /api/sessions/{id}/crossings/{cid}   {"value":"first_over"|"second_over"|"none","revision":k}
///   GET  /api/sessions/{id}/wereset?mode=pl|smooth
///   GET  /api/sessions/{id}/forcing-number
///   GET  /api/jobs/{jid}
class ServiceCore {
 public:
  explicit ServiceCore(Options options = {});
  ~ServiceCore();
  ServiceCore(const ServiceCore&) = delete;
  ServiceCore& operator=(const ServiceCore&) = delete;

  Response handle(const Request& request);

  std::size_t session_count() const;

 private:
  Response create_session(const Request& request);
  Response get_session(const std::string& id);
  Response get_document(const std::string& id);
  Response put_crossing(const std::string& id, const std::string& cid, const Request& request);
  Response start_wereset(const std::string& id, const Request& request);
  Response start_forcing(const std::string& id, const Request& request);
  Response get_job(const std::string& jid);

  std::shared_ptr<Session> find_session(const std::string& id) const;
  std::shared_ptr<Job> find_job(const std::string& jid) const;
  Response launch(std::shared_ptr<Job> job, const Request& request,
                  std::function<nlohmann::json(Job&)> work);
  std::string next_id(char prefix);

  Options options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  mutable std::mutex jobs_mutex_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::jthread> workers_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
};

/// HTTP front end for a ServiceCore. Files under `static_dir` (if non-empty)
/// are mounted at "/".
class HttpServer {
 public:
  HttpServer(ServiceCore& core, std::filesystem::path static_dir = {});
  ~HttpServer();

  /// Returns false if the port cannot be bound.
  bool bind(const std::string& host, int port);
  /// Binds an ephemeral port and returns it, or -1.
  int bind_any(const std::string& host);
  /// Blocks until stop() is called.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace plknot::service
