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

#include "plknot/realizability.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "plknot/errors.hpp"
#include "simplex.hpp"

namespace plknot {

namespace {

/// Empty when the rows are feasible, otherwise indices into cs.rows of an
/// infeasible subset of `row_indices`.
std::vector<std::size_t> infeasibility_certificate(const ConstraintSystem& cs,
                                                   std::span<const std::size_t> row_indices) {
  std::vector<const detail::SparseRow*> rows;
  rows.reserve(row_indices.size());
  for (auto i : row_indices) rows.push_back(&cs.rows[i].coeffs);
  auto result = detail::solve_phase_one(cs.num_vars, rows);
  if (result.heights) return {};
  std::vector<std::size_t> out;
  for (auto k : result.certificate) out.push_back(row_indices[k]);
  if (out.empty()) throw std::logic_error("infeasible system without a certificate");
  return out;
}

std::string cache_key(const Assignment& a) {
  std::string key(a.size(), '-');
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) key[i] = (*a[i] == CrossingAssignment::kFirstOver) ? '1' : '0';
  }
  return key;
}

}  // namespace

ConstraintRow crossing_row(const Shadow& shadow, std::size_t id, CrossingAssignment value) {
  const auto& c = shadow.crossings().at(id);
  const std::size_t n = shadow.vertex_count();
  const Rational sign = (value == CrossingAssignment::kFirstOver) ? 1 : -1;
  ConstraintRow row;
  row.crossing = id;
  row.coeffs = {
      {c.edge_a, sign * (1 - c.s)},
      {(c.edge_a + 1) % n, sign * c.s},
      {c.edge_b, -sign * (1 - c.t)},
      {(c.edge_b + 1) % n, -sign * c.t},
  };
  return row;
}

ConstraintSystem build_constraints(const Pseudodiagram& p) {
  ConstraintSystem cs;
  cs.num_vars = p.shadow().vertex_count();
  for (std::size_t id = 0; id < p.crossing_count(); ++id) {
    if (auto a = p.at(id)) cs.rows.push_back(crossing_row(p.shadow(), id, *a));
  }
  return cs;
}

ConstraintSystem restrict_rows(const ConstraintSystem& cs, std::span<const std::size_t> ids) {
  ConstraintSystem out;
  out.num_vars = cs.num_vars;
  for (const auto& row : cs.rows) {
    if (std::find(ids.begin(), ids.end(), row.crossing) != ids.end()) out.rows.push_back(row);
  }
  return out;
}

Rational evaluate(const ConstraintRow& row, std::span<const Rational> heights) {
  Rational sum = 0;
  for (const auto& [var, coeff] : row.coeffs) sum += coeff * heights[var];
  return sum;
}

FeasibilityResult check_feasibility(const ConstraintSystem& cs) {
  std::vector<const detail::SparseRow*> rows;
  rows.reserve(cs.rows.size());
  for (const auto& r : cs.rows) rows.push_back(&r.coeffs);
  auto z = detail::solve_at_least_one(cs.num_vars, rows);
  if (!z) return FeasibilityResult{Feasibility::kInfeasible, std::nullopt, std::nullopt};
  for (const auto& r : cs.rows) {
    if (evaluate(r, *z) < 1) {
      throw std::logic_error("simplex witness violates row for crossing " +
                             std::to_string(r.crossing));
    }
  }
  return FeasibilityResult{Feasibility::kFeasible, std::move(z), std::nullopt};
}

std::vector<std::size_t> minimal_infeasible_core(const ConstraintSystem& cs) {
  std::vector<std::size_t> order(cs.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cs.rows[a].crossing < cs.rows[b].crossing;
  });
  auto support = infeasibility_certificate(cs, order);
  if (support.empty()) {
    throw NotInfeasibleError("constraint system is feasible; no infeasible core exists");
  }

  // Deletion filter. A candidate outside the support of the current
  // certificate leaves an infeasible system behind, so it goes without a solve.
  std::vector<std::size_t> kept = order;
  for (const auto candidate : order) {
    std::vector<std::size_t> trial;
    trial.reserve(kept.size());
    for (auto i : kept) {
      if (i != candidate) trial.push_back(i);
    }
    if (std::find(support.begin(), support.end(), candidate) == support.end()) {
      kept = std::move(trial);
      continue;
    }
    if (auto next = infeasibility_certificate(cs, trial); !next.empty()) {
      kept = std::move(trial);
      support = std::move(next);
    }
  }

  std::vector<std::size_t> ids;
  for (auto i : kept) ids.push_back(cs.rows[i].crossing);
  return ids;
}

PartialRealization is_partial_realizable(const Pseudodiagram& p) {
  const auto cs = build_constraints(p);
  auto result = check_feasibility(cs);
  if (!result.feasible()) return {};

  const auto& shadow = p.shadow();
  const auto unassigned = p.precrossings();
  std::vector<ConstraintRow> gaps;
  for (auto id : unassigned) gaps.push_back(crossing_row(shadow, id, CrossingAssignment::kFirstOver));

  const Rational half(1, 2);
  auto acceptable = [&](const std::vector<Rational>& z) {
    for (const auto& r : cs.rows) {
      if (evaluate(r, z) < half) return false;
    }
    for (const auto& g : gaps) {
      if (evaluate(g, z) == 0) return false;
    }
    return true;
  };

  std::vector<Rational> z = std::move(*result.witness);
  if (!acceptable(z)) {
    // Only finitely many step sizes put an unassigned crossing at equal
    // heights, so halving eventually succeeds for a generic direction.
    std::mt19937 rng(0x9e3779b9U);
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      std::vector<Rational> direction(z.size());
      for (auto& d : direction) d = static_cast<long>(rng() % 2001) - 1000;
      Rational step = 1;
      for (int halving = 0; halving < 256; ++halving, step /= 2) {
        std::vector<Rational> trial(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) trial[i] = z[i] + step * direction[i];
        if (acceptable(trial)) {
          z = std::move(trial);
          done = true;
          break;
        }
      }
    }
    if (!done) throw std::logic_error("witness perturbation failed to leave the tie hyperplanes");
  }

  Assignment completion = p.assignment();
  for (std::size_t k = 0; k < unassigned.size(); ++k) {
    completion[unassigned[k]] = evaluate(gaps[k], z) > 0 ? CrossingAssignment::kFirstOver
                                                         : CrossingAssignment::kSecondOver;
  }
  return PartialRealization{true, std::move(z), std::move(completion)};
}

RealizabilityOracle::RealizabilityOracle(ShadowPtr shadow) : shadow_(std::move(shadow)) {}

bool RealizabilityOracle::realizable(const Assignment& assignment) const {
  if (assignment.size() != shadow_->crossing_count()) {
    throw LengthMismatchError("assignment length does not match the oracle's shadow");
  }
  auto key = cache_key(assignment);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const bool ok = check_feasibility(build_constraints(Pseudodiagram(shadow_, assignment))).feasible();
  std::lock_guard lock(mutex_);
  ++solver_calls_;
  cache_.emplace(std::move(key), ok);
  return ok;
}

std::size_t RealizabilityOracle::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

std::size_t RealizabilityOracle::solver_calls() const {
  std::lock_guard lock(mutex_);
  return solver_calls_;
}

std::string_view to_string(PropagationStatus status) {
  switch (status) {
    case PropagationStatus::kCompleted: return "COMPLETED";
    case PropagationStatus::kStuck: return "STUCK";
    case PropagationStatus::kContradiction: return "CONTRADICTION";
  }
  return "UNKNOWN";
}

namespace {

enum class Options { kNone, kFirstOnly, kSecondOnly, kBoth };

Options open_options(const RealizabilityOracle& oracle, Assignment& a, std::size_t id) {
  a[id] = CrossingAssignment::kFirstOver;
  const bool first = oracle.realizable(a);
  a[id] = CrossingAssignment::kSecondOver;
  const bool second = oracle.realizable(a);
  a[id].reset();
  if (first && second) return Options::kBoth;
  if (first) return Options::kFirstOnly;
  if (second) return Options::kSecondOnly;
  return Options::kNone;
}

/// Synchronous rounds: wave k holds every crossing forced once waves < k are
/// applied. Used to label derivations with their depth.
std::map<std::size_t, std::size_t> wave_numbers(const RealizabilityOracle& oracle, Assignment a) {
  std::map<std::size_t, std::size_t> waves;
  for (std::size_t wave = 1;; ++wave) {
    std::vector<std::pair<std::size_t, CrossingAssignment>> found;
    for (std::size_t id = 0; id < a.size(); ++id) {
      if (a[id]) continue;
      const auto opts = open_options(oracle, a, id);
      if (opts == Options::kNone) return waves;
      if (opts == Options::kFirstOnly) found.emplace_back(id, CrossingAssignment::kFirstOver);
      if (opts == Options::kSecondOnly) found.emplace_back(id, CrossingAssignment::kSecondOver);
    }
    if (found.empty()) return waves;
    for (const auto& [id, value] : found) {
      a[id] = value;
      waves[id] = wave;
    }
  }
}

}  // namespace

PropagationOutcome propagate_forced(const Pseudodiagram& p) {
  RealizabilityOracle oracle(p.shadow_ptr());
  return propagate_forced(p, oracle);
}

PropagationOutcome propagate_forced(const Pseudodiagram& p, const RealizabilityOracle& oracle) {
  PropagationOutcome out;
  Assignment a = p.assignment();

  bool restart = true;
  while (restart) {
    restart = false;
    for (std::size_t id = 0; id < a.size(); ++id) {
      if (a[id]) continue;
      const auto opts = open_options(oracle, a, id);
      if (opts == Options::kNone) {
        out.status = PropagationStatus::kContradiction;
        break;
      }
      if (opts == Options::kBoth) continue;
      a[id] = (opts == Options::kFirstOnly) ? CrossingAssignment::kFirstOver
                                            : CrossingAssignment::kSecondOver;
      out.derived.push_back(ForcedAssignment{id, *a[id], 0});
      restart = true;
      break;
    }
    if (out.status == PropagationStatus::kContradiction) break;
  }

  for (std::size_t id = 0; id < a.size(); ++id) {
    if (!a[id]) out.remaining.push_back(id);
  }
  if (out.status != PropagationStatus::kContradiction) {
    if (!out.remaining.empty()) {
      out.status = PropagationStatus::kStuck;
    } else {
      out.status = oracle.realizable(a) ? PropagationStatus::kCompleted
                                        : PropagationStatus::kContradiction;
    }
  }

  if (!out.derived.empty()) {
    const auto waves = wave_numbers(oracle, p.assignment());
    for (auto& d : out.derived) {
      auto it = waves.find(d.crossing);
      d.wave = (it == waves.end()) ? 0 : it->second;
    }
  }
  return out;
}

Pseudodiagram apply(const Pseudodiagram& p, const PropagationOutcome& outcome) {
  Pseudodiagram out = p;
  for (const auto& d : outcome.derived) out.set(d.crossing, d.value);
  return out;
}

}  // namespace plknot
