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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plknot/diagram.hpp"
#include "plknot/invariants.hpp"
#include "plknot/rational.hpp"
#include "plknot/realizability.hpp"

namespace plknot {

enum class WereMode { kPL, kSmooth };

/// Weighted resolution set: knot type -> probability of obtaining it by
/// resolving every precrossing uniformly at random, plus the probability of
/// a nonrealizable outcome (always 0 in smooth mode).
struct WeReSet {
  std::map<std::string, Rational> entries;
  Rational empty_prob = 0;
  std::size_t precrossings = 0;
  /// Number of completions in each class (parallel to `entries`), and the
  /// number of nonrealizable completions.
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t empty_count = 0;

  Rational probability(const std::string& name) const;
  Rational total() const;
  friend bool operator==(const WeReSet& a, const WeReSet& b) {
    return a.entries == b.entries && a.empty_prob == b.empty_prob;
  }
};

/// Progress hook: (completions done, completions total). Called from worker
/// threads; must be thread-safe.
using ProgressFn = std::function<void(std::uint64_t, std::uint64_t)>;

/// Enumerates all 2^k completions of the unassigned crossings. `threads == 0`
/// picks the hardware concurrency. The result does not depend on `threads`.
WeReSet were_set(const Pseudodiagram& d, WereMode mode, unsigned threads = 0,
                 const ProgressFn& progress = {});

/// Whether assigning `values` to the crossings `set` determines every other
/// precrossing of `d` (propagation completes).
/// Throws InvalidSetError if `set` hits an assigned crossing, repeats an id,
/// names an unknown crossing, or its size differs from `values`.
bool forces(const Pseudodiagram& d, std::span<const std::size_t> set,
            std::span<const CrossingAssignment> values);
bool forces(const Pseudodiagram& d, std::span<const std::size_t> set,
            std::span<const CrossingAssignment> values, const RealizabilityOracle& oracle);

struct ForcingReport {
  std::size_t precrossings = 0;
  /// Smallest forcing set size, or nothing if no set of size <= searched_up_to forces.
  std::optional<std::size_t> forcing_number;
  std::vector<std::size_t> witness_set;
  std::vector<CrossingAssignment> witness_assignment;
  /// The witness is the whole precrossing set (nothing left to force).
  bool vacuous = false;
  std::size_t searched_up_to = 0;
  PropagationOutcome propagation_trace;
};

/// Exhaustive search, ascending set size, subsets in lexicographic order,
/// assignments in bit order (bit j = 1 puts the j-th set member FIRST_OVER).
/// `max_size` caps the set sizes tried. Throws InvalidSetError when `d` has
/// no precrossings.
ForcingReport forcing_number(const Pseudodiagram& d, std::optional<std::size_t> max_size = {});

struct MaxForcedReport {
  std::size_t max_forced = 0;
  /// Partial assignment (over d's precrossings) reaching max_forced.
  Assignment maximizing_assignment;
  PropagationOutcome maximizing_trace;
  std::uint64_t states_examined = 0;
  std::uint64_t states_total = 0;
  /// True when the budget stopped the enumeration early; max_forced is then
  /// a lower bound.
  bool budget_exceeded = false;
};

inline constexpr std::uint64_t kDefaultMaxForcedBudget = 600000;

/// Largest number of crossings propagation derives, over every partial
/// assignment of d's precrossings (3^k states, in base-3 order).
MaxForcedReport max_forced(const Pseudodiagram& d,
                           std::uint64_t budget = kDefaultMaxForcedBudget);

/// A minimal infeasible set of crossing assignments.
struct SignedCore {
  std::vector<std::size_t> crossings;
  std::vector<CrossingAssignment> values;

  friend bool operator==(const SignedCore&, const SignedCore&) = default;
  friend auto operator<=>(const SignedCore&, const SignedCore&) = default;
};

struct CoreCatalog {
  /// Distinct cores over all nonrealizable completions, sorted.
  std::vector<SignedCore> cores;
  /// Distinct crossing sets among `cores` (a core and its mirror share one).
  std::size_t distinct_crossing_sets = 0;
  std::uint64_t nonrealizable_completions = 0;
};

/// Minimal infeasible cores of every nonrealizable completion of d.
CoreCatalog core_catalog(const Pseudodiagram& d);

}  // namespace plknot
