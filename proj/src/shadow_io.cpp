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

#include "plknot/shadow_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "plknot/errors.hpp"

namespace plknot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("shadow document: " + field + ": " + what, 0, field);
}

Rational parse_coordinate(const json& value, const std::string& field) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (!value.is_string()) fail(field, "expected a rational string \"p/q\" or \"p\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

std::size_t parse_crossing_id(const std::string& key) {
  const std::string field = "assignments[\"" + key + "\"]";
  if (key.empty() || key.size() > 9 ||
      !std::all_of(key.begin(), key.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
    fail(field, "crossing id must be a non-negative decimal integer");
  }
  return static_cast<std::size_t>(std::stoul(key));
}

}  // namespace

json shadow_to_json(const Pseudodiagram& p) {
  json vertices = json::array();
  for (const auto& v : p.shadow().vertices()) vertices.push_back({to_string(v.x), to_string(v.y)});
  json assignments = json::object();
  for (std::size_t id = 0; id < p.crossing_count(); ++id) {
    if (auto a = p.at(id)) assignments[std::to_string(id)] = std::string(to_string(*a));
  }
  return json{{"version", 1}, {"vertices", std::move(vertices)}, {"assignments", std::move(assignments)}};
}

std::string write_shadow(const Pseudodiagram& p) { return shadow_to_json(p).dump(2) + "\n"; }

Pseudodiagram shadow_from_json(const json& doc) {
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  if (!doc.contains("version")) fail("version", "missing");
  if (!doc["version"].is_number_integer() || doc["version"].get<long>() != 1) {
    fail("version", "unsupported version (expected 1)");
  }
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    fail("vertices", "expected an array of [x, y] pairs");
  }

  std::vector<PlanePoint> vertices;
  const auto& raw = doc["vertices"];
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    if (!raw[i].is_array() || raw[i].size() != 2) fail(field, "expected [x, y]");
    vertices.push_back(PlanePoint{parse_coordinate(raw[i][0], field + "[0]"),
                                  parse_coordinate(raw[i][1], field + "[1]")});
  }

  ShadowPtr shadow;
  try {
    shadow = make_shadow(std::move(vertices));
  } catch (const GeneralPositionError& e) {
    throw ValidationError(e.what());
  }

  Pseudodiagram p(shadow);
  if (doc.contains("assignments")) {
    const auto& assignments = doc["assignments"];
    if (!assignments.is_object()) fail("assignments", "expected an object");
    for (const auto& [key, value] : assignments.items()) {
      const auto id = parse_crossing_id(key);
      const std::string field = "assignments[\"" + key + "\"]";
      if (!value.is_string()) fail(field, "expected \"first_over\" or \"second_over\"");
      const auto parsed = parse_assignment(value.get<std::string>());
      if (!parsed) fail(field, "expected \"first_over\" or \"second_over\"");
      if (id >= shadow->crossing_count()) {
        throw ValidationError("assignment names crossing " + key + " but the shadow has " +
                              std::to_string(shadow->crossing_count()) + " crossings");
      }
      p.set(id, *parsed);
    }
  }
  return p;
}

Pseudodiagram read_shadow(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError("shadow document: line " + std::to_string(line) + ": " + e.what(), line,
                     "<json>");
  }
  return shadow_from_json(doc);
}

Pseudodiagram read_shadow_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0, "<file>");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_shadow(buffer.str());
}

void write_shadow_file(const std::filesystem::path& path, const Pseudodiagram& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_shadow(p);
}

}  // namespace plknot
