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

// Realizability of (pseudo)diagrams in 3-space.
//
// The planar vertices are fixed; a lift assigns a height z_i to every vertex
// and edges stay straight. At a crossing with parameters s (edge_a) and t
// (edge_b) the two strands sit at heights
//
//   h_a = (1 - s) z[a] + s z[a+1],   h_b = (1 - t) z[b] + t z[b+1],
//
// and the assignment asks for h_over - h_under > 0. A (partial) assignment is
// realizable exactly when this homogeneous strict system has a solution.
// Homogeneity lets us replace "> 0" by ">= 1" and decide feasibility with an
// exact rational simplex.

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plknot/diagram.hpp"
#include "plknot/rational.hpp"

namespace plknot {

struct ConstraintRow {
  std::size_t crossing = 0;
  /// (variable index, coefficient); every coefficient is nonzero.
  std::vector<std::pair<std::size_t, Rational>> coeffs;
};

/// Homogeneous system: row . z > 0 for every row.
struct ConstraintSystem {
  std::size_t num_vars = 0;
  std::vector<ConstraintRow> rows;
};

/// h_over - h_under at crossing `id` under `value`, as a row over vertex heights.
ConstraintRow crossing_row(const Shadow& shadow, std::size_t id, CrossingAssignment value);

/// One row per assigned crossing, ascending crossing id.
ConstraintSystem build_constraints(const Pseudodiagram& p);

/// Rows whose crossing id is in `ids`.
ConstraintSystem restrict_rows(const ConstraintSystem& cs, std::span<const std::size_t> ids);

Rational evaluate(const ConstraintRow& row, std::span<const Rational> heights);

enum class Feasibility { kFeasible, kInfeasible };

struct FeasibilityResult {
  Feasibility status = Feasibility::kFeasible;
  /// Present iff feasible; every row evaluates to >= 1.
  std::optional<std::vector<Rational>> witness;
  /// Minimal infeasible subset of crossing ids, when requested.
  std::optional<std::vector<std::size_t>> core;

  bool feasible() const noexcept { return status == Feasibility::kFeasible; }
};

/// Decides whether some z has row . z >= 1 for every row (phase-one simplex,
/// exact arithmetic, least-index pivoting).
FeasibilityResult check_feasibility(const ConstraintSystem& cs);

/// Deletion filter over rows in ascending crossing id. The result is
/// infeasible and dropping any one of its rows makes it feasible.
/// Throws NotInfeasibleError when `cs` is feasible.
std::vector<std::size_t> minimal_infeasible_core(const ConstraintSystem& cs);

struct PartialRealization {
  bool realizable = false;
  /// Heights with every assigned margin >= 1/2 and no unassigned crossing at
  /// equal heights. Empty when not realizable.
  std::optional<std::vector<Rational>> witness;
  /// Total assignment read off the witness heights; realizable by construction.
  std::optional<Assignment> completion;
};

/// Whether some total completion of `p` is realizable; if so, one such
/// completion together with its witness heights.
PartialRealization is_partial_realizable(const Pseudodiagram& p);

/// Memoized yes/no realizability queries over the assignments of one shadow.
/// Thread-safe.
class RealizabilityOracle {
 public:
  explicit RealizabilityOracle(ShadowPtr shadow);

  const ShadowPtr& shadow() const noexcept { return shadow_; }
  bool realizable(const Assignment& assignment) const;
  bool realizable(const Pseudodiagram& p) const { return realizable(p.assignment()); }

  std::size_t cache_size() const;
  std::size_t solver_calls() const;

 private:
  ShadowPtr shadow_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, bool> cache_;
  mutable std::size_t solver_calls_ = 0;
};

enum class PropagationStatus { kCompleted, kStuck, kContradiction };

std::string_view to_string(PropagationStatus status);

struct ForcedAssignment {
  std::size_t crossing = 0;
  CrossingAssignment value = CrossingAssignment::kFirstOver;
  /// 1 if forced by the input assignment alone, k if it needs derivations
  /// from waves < k.
  std::size_t wave = 0;

  friend bool operator==(const ForcedAssignment&, const ForcedAssignment&) = default;
};

struct PropagationOutcome {
  std::vector<ForcedAssignment> derived;  // in derivation order
  PropagationStatus status = PropagationStatus::kStuck;
  std::vector<std::size_t> remaining;  // still unassigned, ascending
};

/// Repeatedly assigns any crossing that has exactly one realizable option,
/// restarting the scan from the lowest id after each derivation.
PropagationOutcome propagate_forced(const Pseudodiagram& p);
PropagationOutcome propagate_forced(const Pseudodiagram& p, const RealizabilityOracle& oracle);

/// Applies the input assignment plus every derived assignment.
Pseudodiagram apply(const Pseudodiagram& p, const PropagationOutcome& outcome);

}  // namespace plknot
