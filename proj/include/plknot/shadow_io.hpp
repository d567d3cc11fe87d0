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

// Shadow documents (JSON, UTF-8):
//
//   {
//     "assignments": {"0": "first_over", "3": "second_over"},
//     "version": 1,
//     "vertices": [["0", "0"], ["4", "0"], ["0", "3/2"], ...]
//   }
//
// Coordinates are rational strings "p/q" or "p". Crossing ids are not stored;
// they are recomputed from the vertices, and an assignment that names a
// crossing the geometry does not have is a validation error.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "plknot/diagram.hpp"

namespace plknot {

/// Canonical document text (sorted keys, two-space indent, trailing newline).
std::string write_shadow(const Pseudodiagram& p);
nlohmann::json shadow_to_json(const Pseudodiagram& p);

/// Throws ParseError for malformed documents and ValidationError when the
/// geometry or the assignment is invalid.
Pseudodiagram read_shadow(std::string_view text);
Pseudodiagram shadow_from_json(const nlohmann::json& doc);

Pseudodiagram read_shadow_file(const std::filesystem::path& path);
void write_shadow_file(const std::filesystem::path& path, const Pseudodiagram& p);

}  // namespace plknot
