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

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "plknot/rational.hpp"

namespace plknot::detail {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Finds free z with row . z >= 1 for every row, or nothing if none exists.
/// Phase one of the simplex method on
///
///   A z+ - A z- - s + a = 1,   z+, z-, s, a >= 0,   minimize sum(a),
///
/// with Bland's least-index rule for both the entering and leaving variable.
std::optional<std::vector<Rational>> solve_at_least_one(std::size_t num_vars,
                                                        std::span<const SparseRow* const> rows);

struct PhaseOneResult {
  std::optional<std::vector<Rational>> heights;
  /// When infeasible, positions in `rows` of an infeasible subsystem.
  std::vector<std::size_t> certificate;
};

PhaseOneResult solve_phase_one(std::size_t num_vars, std::span<const SparseRow* const> rows);

}  // namespace plknot::detail
