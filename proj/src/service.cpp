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

#include "plknot/service.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <condition_variable>
#include <random>

#include <httplib.h>

#include "plknot/analysis.hpp"
#include "plknot/errors.hpp"
#include "plknot/generators.hpp"
#include "plknot/realizability.hpp"
#include "plknot/shadow_io.hpp"

namespace plknot::service {

using nlohmann::json;

struct Session {
  std::string id;
  std::mutex mutex;
  Pseudodiagram diagram;
  std::uint64_t revision = 0;

  Session(std::string session_id, Pseudodiagram p) : id(std::move(session_id)), diagram(std::move(p)) {}
};

struct Job {
  std::string id;
  std::string kind;
  std::string session;
  std::uint64_t revision = 0;

  std::mutex mutex;
  std::condition_variable cv;
  std::string state = "running";
  json result;
  json error;
  std::atomic<std::uint64_t> done{0};
  std::atomic<std::uint64_t> total{0};

  json to_json() {
    std::lock_guard lock(mutex);
    return json{{"id", id},
                {"kind", kind},
                {"session", session},
                {"revision", revision},
                {"status", state},
                {"progress", {{"done", done.load()}, {"total", total.load()}}},
                {"result", result},
                {"error", error}};
  }
};

namespace {

/// Thrown inside handlers and turned into an error response.
struct HttpError {
  int status;
  std::string code;
  std::string message;
  json details = json::object();
};

Response json_response(int status, const json& body) { return Response{status, body.dump()}; }

Response error_response(int status, const std::string& code, const std::string& message,
                        json details = json::object()) {
  return json_response(status, json{{"error", {{"code", code},
                                               {"message", message},
                                               {"details", std::move(details)}}}});
}

json point_json(const PlanePoint& p) { return json::array({to_string(p.x), to_string(p.y)}); }

json heights_json(const std::vector<Rational>& heights) {
  json out = json::array();
  for (const auto& h : heights) out.push_back(to_string(h));
  return out;
}

json propagation_json(const PropagationOutcome& outcome) {
  json derived = json::array();
  for (const auto& f : outcome.derived) {
    derived.push_back(
        {{"crossing", f.crossing}, {"value", std::string(to_string(f.value))}, {"wave", f.wave}});
  }
  return json{{"status", std::string(to_string(outcome.status))},
              {"derived", std::move(derived)},
              {"remaining", outcome.remaining}};
}

json session_json(const Session& s) {
  const auto& p = s.diagram;
  json vertices = json::array();
  for (const auto& v : p.shadow().vertices()) vertices.push_back(point_json(v));
  return json{{"id", s.id},
              {"revision", s.revision},
              {"vertices", std::move(vertices)},
              {"crossings", crossings_json(p.shadow())},
              {"assignments", shadow_to_json(p)["assignments"]},
              {"precrossings", p.precrossings()},
              {"status", status_json(p)}};
}

long require_int(const json& obj, const std::string& key, std::optional<long> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw HttpError{400, "validation_error", "generator." + key + " is required",
                    {{"field", "generator." + key}}};
  }
  if (!obj[key].is_number_integer()) {
    throw HttpError{400, "validation_error", "generator." + key + " must be an integer",
                    {{"field", "generator." + key}}};
  }
  return obj[key].get<long>();
}

Pseudodiagram from_generator(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw HttpError{400, "validation_error", "generator.kind must be star, torus or random",
                    {{"field", "generator.kind"}}};
  }
  const auto kind = spec["kind"].get<std::string>();
  try {
    if (kind == "star") return Pseudodiagram(gen_star(static_cast<int>(require_int(spec, "n"))));
    if (kind == "torus") {
      return Pseudodiagram(gen_torus(static_cast<int>(require_int(spec, "n")),
                                     static_cast<int>(require_int(spec, "subdiv", 2))));
    }
    if (kind == "random") {
      const long seed = require_int(spec, "seed", 0);
      return Pseudodiagram(gen_random(static_cast<int>(require_int(spec, "vertices")),
                                      static_cast<std::uint64_t>(seed)));
    }
  } catch (const std::invalid_argument& e) {
    throw HttpError{400, "validation_error", e.what(), {{"field", "generator"}}};
  }
  throw HttpError{400, "validation_error", "unknown generator kind: " + kind,
                  {{"field", "generator.kind"}}};
}

std::optional<std::size_t> parse_index(const std::string& text) {
  if (text.empty() || text.size() > 9 ||
      !std::all_of(text.begin(), text.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(std::stoul(text));
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto end = path.find('/', start);
    const auto piece = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!piece.empty()) parts.push_back(piece);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

json crossings_json(const Shadow& shadow) {
  json out = json::array();
  const auto& crossings = shadow.crossings();
  for (std::size_t id = 0; id < crossings.size(); ++id) {
    const auto& c = crossings[id];
    out.push_back({{"id", id},
                   {"edge_a", c.edge_a},
                   {"edge_b", c.edge_b},
                   {"s", to_string(c.s)},
                   {"t", to_string(c.t)},
                   {"point", point_json(c.point)}});
  }
  return out;
}

json status_json(const Pseudodiagram& p) {
  const auto partial = is_partial_realizable(p);
  json out{{"realizable", partial.realizable}, {"witness", nullptr}, {"completion", nullptr},
           {"core", nullptr}};
  if (partial.realizable) {
    out["witness"] = heights_json(*partial.witness);
    out["completion"] = to_bits(Resolution(p.shadow_ptr(), *partial.completion));
  } else {
    out["core"] = minimal_infeasible_core(build_constraints(p));
  }
  out["propagation"] = propagation_json(propagate_forced(p));
  return out;
}

ServiceCore::ServiceCore(Options options) : options_(options) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

ServiceCore::~ServiceCore() {
  std::vector<std::jthread> workers;
  {
    std::lock_guard lock(jobs_mutex_);
    workers.swap(workers_);
  }
  workers.clear();
}

std::size_t ServiceCore::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::string ServiceCore::next_id(char prefix) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t value;
  {
    std::lock_guard lock(id_mutex_);
    value = splitmix(id_state_);
  }
  std::string id(1, prefix);
  for (int i = 0; i < 16; ++i) id.push_back(kHex[(value >> (4 * i)) & 0xF]);
  return id;
}

Response ServiceCore::handle(const Request& request) {
  const auto parts = split_path(request.path);
  const auto& m = request.method;
  try {
    if (parts.size() < 2 || parts[0] != "api") {
      return error_response(404, "not_found", "no such endpoint: " + request.path);
    }
    auto wrong_method = [&] {
      return error_response(405, "method_not_allowed", m + " not allowed on " + request.path);
    };
    if (parts[1] == "sessions") {
      if (parts.size() == 2) return m == "POST" ? create_session(request) : wrong_method();
      const auto& id = parts[2];
      if (parts.size() == 3) return m == "GET" ? get_session(id) : wrong_method();
      if (parts.size() == 4 && parts[3] == "document") {
        return m == "GET" ? get_document(id) : wrong_method();
      }
      if (parts.size() == 4 && parts[3] == "wereset") {
        return m == "GET" ? start_wereset(id, request) : wrong_method();
      }
      if (parts.size() == 4 && parts[3] == "forcing-number") {
        return m == "GET" ? start_forcing(id, request) : wrong_method();
      }
      if (parts.size() == 5 && parts[3] == "crossings") {
        return m == "PUT" ? put_crossing(id, parts[4], request) : wrong_method();
      }
    }
    if (parts[1] == "jobs" && parts.size() == 3) {
      return m == "GET" ? get_job(parts[2]) : wrong_method();
    }
    return error_response(404, "not_found", "no such endpoint: " + request.path);
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message, e.details);
  } catch (const ParseError& e) {
    return error_response(400, "parse_error", e.what(), {{"line", e.line()}, {"field", e.field()}});
  } catch (const ValidationError& e) {
    return error_response(400, "validation_error", e.what());
  } catch (const GeneralPositionError& e) {
    return error_response(400, "validation_error", e.what());
  } catch (const json::exception& e) {
    return error_response(400, "parse_error", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

std::shared_ptr<Session> ServiceCore::find_session(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw HttpError{404, "not_found", "unknown session " + id, {{"session", id}}};
  }
  return it->second;
}

std::shared_ptr<Job> ServiceCore::find_job(const std::string& jid) const {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(jid);
  if (it == jobs_.end()) throw HttpError{404, "not_found", "unknown job " + jid, {{"job", jid}}};
  return it->second;
}

Response ServiceCore::create_session(const Request& request) {
  json body;
  try {
    body = json::parse(request.body);
  } catch (const json::parse_error& e) {
    throw HttpError{400, "parse_error", e.what()};
  }
  if (!body.is_object()) throw HttpError{400, "validation_error", "expected a JSON object"};

  std::optional<Pseudodiagram> diagram;
  if (body.contains("generator")) {
    diagram = from_generator(body["generator"]);
  } else if (body.contains("document")) {
    diagram = shadow_from_json(body["document"]);
  } else if (body.contains("vertices")) {
    diagram = shadow_from_json(body);
  } else {
    throw HttpError{400, "validation_error", "expected \"generator\", \"document\" or a shadow document"};
  }

  auto session = std::make_shared<Session>(next_id('s'), std::move(*diagram));
  json payload;
  {
    std::lock_guard lock(session->mutex);
    payload = session_json(*session);
  }
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(session->id, session);
  }
  return json_response(201, payload);
}

Response ServiceCore::get_session(const std::string& id) {
  auto session = find_session(id);
  std::lock_guard lock(session->mutex);
  return json_response(200, session_json(*session));
}

Response ServiceCore::get_document(const std::string& id) {
  auto session = find_session(id);
  std::lock_guard lock(session->mutex);
  return Response{200, write_shadow(session->diagram)};
}

Response ServiceCore::put_crossing(const std::string& id, const std::string& cid,
                                   const Request& request) {
  auto session = find_session(id);
  const auto crossing = parse_index(cid);

  json body;
  try {
    body = json::parse(request.body);
  } catch (const json::parse_error& e) {
    throw HttpError{400, "parse_error", e.what()};
  }
  if (!body.is_object() || !body.contains("revision") || !body["revision"].is_number_unsigned()) {
    throw HttpError{400, "validation_error", "body needs an integer \"revision\"",
                    {{"field", "revision"}}};
  }
  std::optional<CrossingAssignment> value;
  const auto raw = body.value("value", json());
  if (raw.is_string() && raw.get<std::string>() != "none") {
    value = parse_assignment(raw.get<std::string>());
    if (!value) {
      throw HttpError{400, "validation_error",
                      "value must be \"first_over\", \"second_over\" or \"none\"",
                      {{"field", "value"}}};
    }
  } else if (!raw.is_null() && !raw.is_string()) {
    throw HttpError{400, "validation_error", "value must be a string or null", {{"field", "value"}}};
  }

  std::lock_guard lock(session->mutex);
  if (!crossing || *crossing >= session->diagram.crossing_count()) {
    throw HttpError{404, "not_found", "unknown crossing " + cid, {{"crossing", cid}}};
  }
  const auto revision = body["revision"].get<std::uint64_t>();
  if (revision != session->revision) {
    throw HttpError{409, "revision_conflict", "stale revision",
                    {{"current_revision", session->revision}, {"sent_revision", revision}}};
  }
  session->diagram.set(*crossing, value);
  ++session->revision;
  return json_response(200, session_json(*session));
}

Response ServiceCore::launch(std::shared_ptr<Job> job, const Request& request,
                             std::function<json(Job&)> work) {
  auto wait = options_.default_wait;
  if (auto it = request.query.find("wait_ms"); it != request.query.end()) {
    const auto ms = parse_index(it->second);
    if (!ms) throw HttpError{400, "validation_error", "wait_ms must be a non-negative integer"};
    wait = std::chrono::milliseconds(*ms);
  }
  {
    std::lock_guard lock(jobs_mutex_);
    jobs_.emplace(job->id, job);
    workers_.emplace_back([job, work = std::move(work)] {
      json result;
      json error;
      try {
        result = work(*job);
      } catch (const std::exception& e) {
        error = {{"code", "job_failed"}, {"message", e.what()}};
      }
      {
        std::lock_guard lock(job->mutex);
        job->result = std::move(result);
        job->error = std::move(error);
        job->state = job->error.is_null() ? "done" : "failed";
      }
      job->cv.notify_all();
    });
  }
  bool finished;
  {
    std::unique_lock lock(job->mutex);
    finished = job->cv.wait_for(lock, wait, [&] { return job->state != "running"; });
  }
  return json_response(finished ? 200 : 202, job->to_json());
}

Response ServiceCore::start_wereset(const std::string& id, const Request& request) {
  auto session = find_session(id);
  WereMode mode = WereMode::kPL;
  if (auto it = request.query.find("mode"); it != request.query.end()) {
    if (it->second == "smooth") {
      mode = WereMode::kSmooth;
    } else if (it->second != "pl") {
      throw HttpError{400, "validation_error", "mode must be pl or smooth", {{"field", "mode"}}};
    }
  }

  auto job = std::make_shared<Job>();
  job->id = next_id('j');
  job->kind = "wereset";
  job->session = id;
  std::optional<Pseudodiagram> snapshot;
  {
    std::lock_guard lock(session->mutex);
    snapshot = session->diagram;
    job->revision = session->revision;
  }
  job->total = std::uint64_t{1} << std::min<std::size_t>(snapshot->precrossings().size(), 63);

  const unsigned threads = options_.were_threads;
  return launch(job, request, [d = std::move(*snapshot), mode, threads](Job& j) {
    const auto set = were_set(d, mode, threads, [&j](std::uint64_t done, std::uint64_t) {
      // Completions finish out of order across workers; keep the maximum.
      auto seen = j.done.load();
      while (seen < done && !j.done.compare_exchange_weak(seen, done)) {
      }
    });
    json distribution = json::object();
    for (const auto& [name, p] : set.entries) distribution[name] = to_string(p);
    if (set.empty_prob != 0) distribution["empty"] = to_string(set.empty_prob);
    return json{{"mode", mode == WereMode::kPL ? "pl" : "smooth"},
                {"precrossings", set.precrossings},
                {"distribution", std::move(distribution)},
                {"counts", set.counts},
                {"empty_count", set.empty_count}};
  });
}

Response ServiceCore::start_forcing(const std::string& id, const Request& request) {
  auto session = find_session(id);
  std::optional<std::size_t> max_size;
  if (auto it = request.query.find("max_size"); it != request.query.end()) {
    max_size = parse_index(it->second);
    if (!max_size) throw HttpError{400, "validation_error", "max_size must be a non-negative integer"};
  }

  auto job = std::make_shared<Job>();
  job->id = next_id('j');
  job->kind = "forcing-number";
  job->session = id;
  std::optional<Pseudodiagram> snapshot;
  {
    std::lock_guard lock(session->mutex);
    snapshot = session->diagram;
    job->revision = session->revision;
  }
  if (snapshot->precrossings().empty()) {
    throw HttpError{422, "no_precrossings", "forcing number needs at least one precrossing"};
  }

  return launch(job, request, [d = std::move(*snapshot), max_size](Job&) {
    const auto report = forcing_number(d, max_size);
    json values = json::array();
    for (auto v : report.witness_assignment) values.push_back(std::string(to_string(v)));
    return json{{"forcing_number", report.forcing_number ? json(*report.forcing_number) : json()},
                {"precrossings", report.precrossings},
                {"searched_up_to", report.searched_up_to},
                {"vacuous", report.vacuous},
                {"witness", {{"crossings", report.witness_set}, {"values", std::move(values)}}},
                {"propagation", report.forcing_number
                                    ? propagation_json(report.propagation_trace)
                                    : json()}};
  });
}

Response ServiceCore::get_job(const std::string& jid) {
  return json_response(200, find_job(jid)->to_json());
}

struct HttpServer::Impl {
  ServiceCore& core;
  httplib::Server server;
  explicit Impl(ServiceCore& c) : core(c) {}
};

HttpServer::HttpServer(ServiceCore& core, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(core)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request request{req.method, req.path, {}, req.body};
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    const auto response = impl_->core.handle(request);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  impl_->server.Get("/api/.*", handler);
  impl_->server.Post("/api/.*", handler);
  impl_->server.Put("/api/.*", handler);
  impl_->server.Delete("/api/.*", handler);
  if (!static_dir.empty()) impl_->server.set_mount_point("/", static_dir.string());
}

HttpServer::~HttpServer() = default;

bool HttpServer::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

int HttpServer::bind_any(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace plknot::service
