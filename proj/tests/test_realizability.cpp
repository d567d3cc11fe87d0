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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "plknot/errors.hpp"
#include "plknot/generators.hpp"
#include "plknot/realizability.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace plknot;
using plknot::testing::bowtie;
using plknot::testing::small_pentagram;

namespace {

bool all_margins_at_least(const ConstraintSystem& cs, const std::vector<Rational>& z,
                          const Rational& bound) {
  for (const auto& row : cs.rows) {
    if (evaluate(row, z) < bound) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_constraints: bowtie row") {
  const auto shadow = bowtie();
  const auto& c = shadow->crossings()[0];
  const auto cs = build_constraints(resolution_from_bits(shadow, "1"));
  CHECK(cs.num_vars == 4);
  REQUIRE(cs.rows.size() == 1);
  std::map<std::size_t, Rational> coeffs(cs.rows[0].coeffs.begin(), cs.rows[0].coeffs.end());
  CHECK(coeffs.size() == 4);
  CHECK(coeffs[1] == 1 - c.s);  // over edge 1 = v1 v2
  CHECK(coeffs[2] == c.s);
  CHECK(coeffs[3] == -(1 - c.t));  // under edge 3 = v3 v0
  CHECK(coeffs[0] == -c.t);
}

TEST_CASE("build_constraints: unassigned crossings give no rows, flips negate") {
  CHECK(build_constraints(Pseudodiagram(small_pentagram())).rows.empty());

  const auto a = build_constraints(resolution_from_bits(small_pentagram(), "10110"));
  const auto b = build_constraints(resolution_from_bits(small_pentagram(), "10010"));
  REQUIRE(a.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(a.rows[i].coeffs.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(a.rows[i].coeffs[k].first == b.rows[i].coeffs[k].first);
      CHECK(a.rows[i].coeffs[k].second != 0);
      if (i == 2) {
        CHECK(a.rows[i].coeffs[k].second == -b.rows[i].coeffs[k].second);
      } else {
        CHECK(a.rows[i].coeffs[k].second == b.rows[i].coeffs[k].second);
      }
    }
  }
}

TEST_CASE("rows vanish on affine height functions") {
  // z = a x + b y + c lifts the polygon into a plane, where nothing is over
  // anything else.
  for (const auto& entry : testing::corpus()) {
    const auto& shadow = *entry.shadow;
    if (shadow.crossing_count() == 0) continue;
    std::vector<Rational> z;
    for (const auto& v : shadow.vertices()) z.push_back(3 * v.x - make_rational(2, 7) * v.y + 5);
    const auto cs = build_constraints(resolution_from_bits(entry.shadow, std::uint64_t{0}));
    for (const auto& row : cs.rows) CHECK(evaluate(row, z) == 0);
  }
}

TEST_CASE("check_feasibility basics") {
  const auto empty = check_feasibility(build_constraints(Pseudodiagram(small_pentagram())));
  CHECK(empty.feasible());
  REQUIRE(empty.witness);
  for (const auto& h : *empty.witness) CHECK(h == 0);

  for (const char* bits : {"0", "1"}) {
    const auto cs = build_constraints(resolution_from_bits(bowtie(), bits));
    const auto r = check_feasibility(cs);
    CHECK(r.feasible());
    REQUIRE(r.witness);
    CHECK(all_margins_at_least(cs, *r.witness, 1));
  }
}

TEST_CASE("pentagram: 10 of 32 resolutions are feasible") {
  // Five vertices leave a 2-dimensional space of heights modulo affine
  // lifts, and five lines through the origin cut the plane into 10 sectors.
  for (const auto& shadow : {small_pentagram(), gen_star(5)}) {
    int feasible = 0;
    for (std::uint64_t bits = 0; bits < 32; ++bits) {
      const auto cs = build_constraints(resolution_from_bits(shadow, bits));
      const auto r = check_feasibility(cs);
      CHECK(r.feasible() == testing::fm_feasible(cs));
      if (r.feasible()) {
        ++feasible;
        CHECK(all_margins_at_least(cs, *r.witness, 1));
      }
    }
    CHECK(feasible == 10);
  }
}

TEST_CASE("witness properties: mirror and scaling") {
  const auto shadow = gen_star(7);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto r = resolution_from_bits(shadow, rng() & 0x7F);
    const auto a = check_feasibility(build_constraints(r));
    const auto mcs = build_constraints(mirror(r));
    const auto b = check_feasibility(mcs);
    CHECK(a.feasible() == b.feasible());
    if (!a.feasible()) continue;
    std::vector<Rational> negated;
    for (const auto& h : *a.witness) negated.push_back(-h);
    CHECK(all_margins_at_least(mcs, negated, 1));
    std::vector<Rational> scaled;
    for (const auto& h : *a.witness) scaled.push_back(h * make_rational(3, 2));
    CHECK(all_margins_at_least(build_constraints(r), scaled, make_rational(3, 2)));
  }
}

TEST_CASE("monotonicity: sub-assignments of feasible resolutions stay feasible") {
  const auto shadow = gen_star(5);
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const auto r = resolution_from_bits(shadow, bits);
    if (!check_feasibility(build_constraints(r)).feasible()) continue;
    for (std::uint64_t keep = 0; keep < 32; ++keep) {
      Pseudodiagram sub = r;
      for (std::size_t i = 0; i < 5; ++i) {
        if (((keep >> i) & 1U) == 0) sub.set(i, std::nullopt);
      }
      CHECK(is_partial_realizable(sub).realizable);
    }
  }
}

TEST_CASE("simplex agrees with Fourier-Motzkin on random systems") {
  std::mt19937_64 rng(2026);
  int infeasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    ConstraintSystem cs;
    cs.num_vars = 3 + rng() % 5;
    const std::size_t rows = 1 + rng() % 9;
    for (std::size_t i = 0; i < rows; ++i) {
      ConstraintRow row;
      row.crossing = i;
      std::vector<std::size_t> vars(cs.num_vars);
      std::iota(vars.begin(), vars.end(), 0);
      std::shuffle(vars.begin(), vars.end(), rng);
      for (std::size_t k = 0; k < std::min<std::size_t>(4, cs.num_vars); ++k) {
        long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0) num = 1;
        row.coeffs.emplace_back(vars[k], make_rational(num, 1 + static_cast<long>(rng() % 5)));
      }
      cs.rows.push_back(std::move(row));
    }
    const auto r = check_feasibility(cs);
    CHECK(r.feasible() == testing::fm_feasible(cs));
    if (!r.feasible()) ++infeasible;
  }
  CHECK(infeasible > 10);
}

TEST_CASE("minimal_infeasible_core") {
  const auto shadow = gen_star(5);
  const auto alt = alternating_resolution(shadow);
  const auto cs = build_constraints(alt);
  REQUIRE_FALSE(check_feasibility(cs).feasible());
  const auto core = minimal_infeasible_core(cs);
  CHECK(core.size() <= 5);
  CHECK_FALSE(check_feasibility(restrict_rows(cs, core)).feasible());
  for (std::size_t drop = 0; drop < core.size(); ++drop) {
    std::vector<std::size_t> smaller;
    for (std::size_t i = 0; i < core.size(); ++i) {
      if (i != drop) smaller.push_back(core[i]);
    }
    CHECK(check_feasibility(restrict_rows(cs, smaller)).feasible());
  }
  CHECK(minimal_infeasible_core(build_constraints(mirror(alt))) == core);
  CHECK_THROWS_AS(minimal_infeasible_core(build_constraints(Pseudodiagram(shadow))),
                  NotInfeasibleError);
}

TEST_CASE("minimal cores are minimal for every infeasible pentagram resolution") {
  const auto shadow = small_pentagram();
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const auto cs = build_constraints(resolution_from_bits(shadow, bits));
    if (check_feasibility(cs).feasible()) continue;
    const auto core = minimal_infeasible_core(cs);
    CHECK_FALSE(testing::fm_feasible(restrict_rows(cs, core)));
    for (std::size_t drop = 0; drop < core.size(); ++drop) {
      auto smaller = core;
      smaller.erase(smaller.begin() + static_cast<long>(drop));
      CHECK(testing::fm_feasible(restrict_rows(cs, smaller)));
    }
  }
}

TEST_CASE("is_partial_realizable") {
  CHECK(is_partial_realizable(Pseudodiagram(gen_star(7))).realizable);

  const auto shadow = gen_star(7);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Pseudodiagram p(shadow);
    for (std::size_t i = 0; i < 7; ++i) {
      const auto roll = rng() % 3;
      if (roll == 1) p.set(i, CrossingAssignment::kFirstOver);
      if (roll == 2) p.set(i, CrossingAssignment::kSecondOver);
    }
    const auto partial = is_partial_realizable(p);
    CHECK(partial.realizable == check_feasibility(build_constraints(p)).feasible());
    if (!partial.realizable) {
      CHECK_FALSE(partial.witness);
      continue;
    }
    REQUIRE(partial.witness);
    REQUIRE(partial.completion);
    CHECK(all_margins_at_least(build_constraints(p), *partial.witness, make_rational(1, 2)));
    const Resolution completion(shadow, *partial.completion);
    for (auto id : p.assigned()) CHECK(completion.at(id) == p.at(id));
    // No unassigned crossing sits at equal heights, and the completion reads
    // the witness correctly.
    for (auto id : p.precrossings()) {
      const auto row = crossing_row(*shadow, id, CrossingAssignment::kFirstOver);
      const auto gap = evaluate(row, *partial.witness);
      CHECK(gap != 0);
      CHECK(completion.at(id) == (gap > 0 ? CrossingAssignment::kFirstOver
                                          : CrossingAssignment::kSecondOver));
    }
    CHECK(check_feasibility(build_constraints(completion)).feasible());
  }
}

TEST_CASE("propagate_forced") {
  const auto shadow = gen_star(5);
  const auto stuck = propagate_forced(Pseudodiagram(shadow));
  CHECK(stuck.status == PropagationStatus::kStuck);
  CHECK(stuck.derived.empty());
  CHECK(stuck.remaining.size() == 5);

  std::optional<Resolution> feasible, infeasible;
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    auto r = resolution_from_bits(shadow, bits);
    (check_feasibility(build_constraints(r)).feasible() ? feasible : infeasible) = r;
  }
  REQUIRE(feasible);
  REQUIRE(infeasible);
  const auto done = propagate_forced(*feasible);
  CHECK(done.status == PropagationStatus::kCompleted);
  CHECK(done.derived.empty());
  CHECK(propagate_forced(*infeasible).status == PropagationStatus::kContradiction);

  // Two assigned crossings force the other three.
  Pseudodiagram two(shadow);
  two.set(0, CrossingAssignment::kFirstOver);
  two.set(1, CrossingAssignment::kSecondOver);
  const auto cascade = propagate_forced(two);
  CHECK(cascade.status == PropagationStatus::kCompleted);
  CHECK(cascade.derived.size() == 3);
  CHECK(cascade.remaining.empty());
  const auto full = apply(two, cascade);
  CHECK(full.is_resolution());
  CHECK(check_feasibility(build_constraints(full)).feasible());
  for (std::size_t i = 1; i < cascade.derived.size(); ++i) {
    CHECK(cascade.derived[i - 1].wave <= cascade.derived[i].wave);
  }
}

TEST_CASE("propagation never changes the set of realizable completions") {
  const auto shadow = testing::three_crossing_shadow();
  const auto table = testing::resolution_feasibility(shadow);
  for (std::uint64_t state = 0; state < 27; ++state) {
    Pseudodiagram p(shadow);
    std::uint64_t s = state;
    for (std::size_t i = 0; i < 3; ++i, s /= 3) {
      if (s % 3 == 1) p.set(i, CrossingAssignment::kFirstOver);
      if (s % 3 == 2) p.set(i, CrossingAssignment::kSecondOver);
    }
    const auto outcome = propagate_forced(p);
    CHECK(testing::realizable_completions(apply(p, outcome), table) ==
          testing::realizable_completions(p, table));
  }
}

TEST_CASE("RealizabilityOracle memoizes") {
  const auto shadow = gen_star(5);
  RealizabilityOracle oracle(shadow);
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const auto r = resolution_from_bits(shadow, bits);
    CHECK(oracle.realizable(r) == check_feasibility(build_constraints(r)).feasible());
  }
  const auto calls = oracle.solver_calls();
  CHECK(oracle.cache_size() == 32);
  for (std::uint64_t bits = 0; bits < 32; ++bits) oracle.realizable(resolution_from_bits(shadow, bits));
  CHECK(oracle.solver_calls() == calls);
}

TEST_CASE("status names") {
  CHECK(to_string(PropagationStatus::kCompleted) == "COMPLETED");
  CHECK(to_string(PropagationStatus::kStuck) == "STUCK");
  CHECK(to_string(PropagationStatus::kContradiction) == "CONTRADICTION");
}
