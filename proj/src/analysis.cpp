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

#include "plknot/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

#include "plknot/errors.hpp"

namespace plknot {

namespace {

constexpr std::size_t kMaxEnumeratedPrecrossings = 40;

Rational power_of_two(std::size_t k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rational(p);
}

/// Completion number `index`: bit j assigns the j-th precrossing
/// (1 = FIRST_OVER).
Assignment completion(const Assignment& base, const std::vector<std::size_t>& free,
                      std::uint64_t index) {
  Assignment a = base;
  for (std::size_t j = 0; j < free.size(); ++j) {
    a[free[j]] = ((index >> j) & 1U) != 0 ? CrossingAssignment::kFirstOver
                                          : CrossingAssignment::kSecondOver;
  }
  return a;
}

struct Tally {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t empty = 0;
};

}  // namespace

Rational WeReSet::probability(const std::string& name) const {
  auto it = entries.find(name);
  return it == entries.end() ? Rational(0) : it->second;
}

Rational WeReSet::total() const {
  Rational sum = empty_prob;
  for (const auto& [name, p] : entries) sum += p;
  return sum;
}

WeReSet were_set(const Pseudodiagram& d, WereMode mode, unsigned threads,
                 const ProgressFn& progress) {
  const auto free = d.precrossings();
  if (free.size() > kMaxEnumeratedPrecrossings) {
    throw BudgetExceededError("too many precrossings to enumerate (" +
                              std::to_string(free.size()) + ")");
  }
  const std::uint64_t total = std::uint64_t{1} << free.size();
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  std::vector<Tally> tallies(threads);
  std::atomic<std::uint64_t> done{0};
  auto work = [&](unsigned worker) {
    auto& tally = tallies[worker];
    for (std::uint64_t index = worker; index < total; index += threads) {
      Resolution r(d.shadow_ptr(), completion(d.assignment(), free, index));
      if (mode == WereMode::kPL && !check_feasibility(build_constraints(r)).feasible()) {
        ++tally.empty;
      } else {
        ++tally.counts[classify(r).name];
      }
      const auto finished = ++done;
      if (progress) progress(finished, total);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  WeReSet out;
  out.precrossings = free.size();
  for (const auto& t : tallies) {
    out.empty_count += t.empty;
    for (const auto& [name, count] : t.counts) out.counts[name] += count;
  }
  const Rational denom = power_of_two(free.size());
  for (const auto& [name, count] : out.counts) {
    out.entries[name] = Rational(mpz_class(std::to_string(count))) / denom;
  }
  out.empty_prob = Rational(mpz_class(std::to_string(out.empty_count))) / denom;
  return out;
}

bool forces(const Pseudodiagram& d, std::span<const std::size_t> set,
            std::span<const CrossingAssignment> values) {
  RealizabilityOracle oracle(d.shadow_ptr());
  return forces(d, set, values, oracle);
}

bool forces(const Pseudodiagram& d, std::span<const std::size_t> set,
            std::span<const CrossingAssignment> values, const RealizabilityOracle& oracle) {
  if (set.size() != values.size()) {
    throw InvalidSetError("forcing set and assignment differ in size");
  }
  Pseudodiagram extended = d;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto id = set[i];
    if (id >= d.crossing_count()) {
      throw InvalidSetError("crossing " + std::to_string(id) + " does not exist");
    }
    if (d.at(id)) throw InvalidSetError("crossing " + std::to_string(id) + " is already assigned");
    if (extended.at(id)) throw InvalidSetError("crossing " + std::to_string(id) + " repeated");
    extended.set(id, values[i]);
  }
  return propagate_forced(extended, oracle).status == PropagationStatus::kCompleted;
}

ForcingReport forcing_number(const Pseudodiagram& d, std::optional<std::size_t> max_size) {
  const auto free = d.precrossings();
  if (free.empty()) throw InvalidSetError("forcing number needs at least one precrossing");

  ForcingReport report;
  report.precrossings = free.size();
  const std::size_t limit = std::min(free.size(), max_size.value_or(free.size()));
  RealizabilityOracle oracle(d.shadow_ptr());

  for (std::size_t k = 1; k <= limit; ++k) {
    report.searched_up_to = k;
    // Lexicographic k-subsets of the precrossing list.
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      std::vector<std::size_t> set(k);
      for (std::size_t i = 0; i < k; ++i) set[i] = free[pick[i]];
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        std::vector<CrossingAssignment> values(k);
        for (std::size_t i = 0; i < k; ++i) {
          values[i] = ((bits >> i) & 1U) != 0 ? CrossingAssignment::kFirstOver
                                              : CrossingAssignment::kSecondOver;
        }
        if (!forces(d, set, values, oracle)) continue;
        report.forcing_number = k;
        report.witness_set = set;
        report.witness_assignment = values;
        report.vacuous = (k == free.size());
        Pseudodiagram start = d;
        for (std::size_t i = 0; i < k; ++i) start.set(set[i], values[i]);
        report.propagation_trace = propagate_forced(start, oracle);
        return report;
      }
      // Advance to the next combination.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == free.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return report;
}

MaxForcedReport max_forced(const Pseudodiagram& d, std::uint64_t budget) {
  const auto free = d.precrossings();
  MaxForcedReport report;
  report.maximizing_assignment = d.assignment();

  std::uint64_t total = 1;
  bool saturated = false;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (total > UINT64_MAX / 3) {
      saturated = true;
      break;
    }
    total *= 3;
  }
  report.states_total = saturated ? UINT64_MAX : total;

  RealizabilityOracle oracle(d.shadow_ptr());
  std::vector<int> digits(free.size(), 0);
  bool have_trace = false;
  for (std::uint64_t state = 0; state < report.states_total; ++state) {
    if (report.states_examined == budget) {
      report.budget_exceeded = true;
      break;
    }
    Assignment a = d.assignment();
    for (std::size_t j = 0; j < free.size(); ++j) {
      if (digits[j] == 1) a[free[j]] = CrossingAssignment::kFirstOver;
      if (digits[j] == 2) a[free[j]] = CrossingAssignment::kSecondOver;
    }
    Pseudodiagram p(d.shadow_ptr(), a);
    auto outcome = propagate_forced(p, oracle);
    ++report.states_examined;
    if (!have_trace || outcome.derived.size() > report.max_forced) {
      have_trace = true;
      report.max_forced = outcome.derived.size();
      report.maximizing_assignment = std::move(a);
      report.maximizing_trace = std::move(outcome);
    }
    for (std::size_t j = 0; j < digits.size(); ++j) {
      if (++digits[j] < 3) break;
      digits[j] = 0;
    }
  }
  return report;
}

CoreCatalog core_catalog(const Pseudodiagram& d) {
  const auto free = d.precrossings();
  if (free.size() > kMaxEnumeratedPrecrossings) {
    throw BudgetExceededError("too many precrossings to enumerate");
  }
  CoreCatalog catalog;
  std::set<SignedCore> cores;
  std::set<std::vector<std::size_t>> crossing_sets;
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << free.size()); ++index) {
    Resolution r(d.shadow_ptr(), completion(d.assignment(), free, index));
    const auto cs = build_constraints(r);
    if (check_feasibility(cs).feasible()) continue;
    ++catalog.nonrealizable_completions;
    SignedCore core;
    core.crossings = minimal_infeasible_core(cs);
    for (auto id : core.crossings) core.values.push_back(*r.at(id));
    crossing_sets.insert(core.crossings);
    cores.insert(std::move(core));
  }
  catalog.cores.assign(cores.begin(), cores.end());
  catalog.distinct_crossing_sets = crossing_sets.size();
  return catalog;
}

}  // namespace plknot
