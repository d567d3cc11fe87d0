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

#include <atomic>

#include "plknot/analysis.hpp"
#include "plknot/errors.hpp"
#include "plknot/generators.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace plknot;

namespace {

Rational r(long p, long q) { return make_rational(p, q); }

void check_well_formed(const WeReSet& set) {
  CHECK(set.total() == 1);
  const mpz_class denom = mpz_class(1) << static_cast<mp_bitcnt_t>(set.precrossings);
  for (const auto& [name, p] : set.entries) {
    CHECK(p > 0);
    CHECK(p <= 1);
    CHECK(denom % p.get_den() == 0);
  }
  CHECK(denom % set.empty_prob.get_den() == 0);
}

}  // namespace

TEST_CASE("pentagram weighted resolution sets") {
  const Pseudodiagram d(gen_star(5));
  const auto smooth = were_set(d, WereMode::kSmooth);
  check_well_formed(smooth);
  CHECK(smooth.entries.size() == 3);
  CHECK(smooth.probability("0_1") == r(20, 32));
  CHECK(smooth.probability("3_1") == r(10, 32));
  CHECK(smooth.probability("5_1") == r(2, 32));
  CHECK(smooth.empty_prob == 0);

  // PL: only the 10 sectors of the height plane are realizable (see the
  // realizability tests), and five sticks only make unknots.
  const auto pl = were_set(d, WereMode::kPL);
  check_well_formed(pl);
  CHECK(pl.entries.size() == 1);
  CHECK(pl.probability("0_1") == r(10, 32));
  CHECK(pl.empty_prob == r(22, 32));
  CHECK(pl.counts.at("0_1") == 10);
  CHECK(pl.empty_count == 22);
}

TEST_CASE("square and bundled three-crossing shadow") {
  const auto sq = were_set(Pseudodiagram(testing::square()), WereMode::kPL);
  CHECK(sq.entries.size() == 1);
  CHECK(sq.probability("0_1") == 1);
  CHECK(sq.precrossings == 0);

  const auto three = were_set(Pseudodiagram(testing::three_crossing_shadow()), WereMode::kPL);
  CHECK(three.probability("0_1") == r(6, 8));
  CHECK(three.empty_prob == r(2, 8));
}

TEST_CASE("were_set respects existing assignments") {
  Pseudodiagram d(gen_star(5));
  d.set(0, CrossingAssignment::kFirstOver);
  d.set(1, CrossingAssignment::kSecondOver);
  const auto set = were_set(d, WereMode::kPL);
  CHECK(set.precrossings == 3);
  check_well_formed(set);
  // These two choices force the rest: exactly one completion is realizable.
  CHECK(set.probability("0_1") == r(1, 8));
}

TEST_CASE("were_set is independent of the thread count and reports progress") {
  const Pseudodiagram d(gen_torus(5, 2));
  const auto one = were_set(d, WereMode::kPL, 1);
  std::atomic<std::uint64_t> calls{0};
  const auto many = were_set(d, WereMode::kPL, 7, [&](std::uint64_t, std::uint64_t total) {
    CHECK(total == 32);
    ++calls;
  });
  CHECK(one == many);
  CHECK(calls == 32);
  // Every resolution of this shadow is realizable.
  CHECK(one.empty_prob == 0);
  CHECK(one == were_set(d, WereMode::kSmooth));
  CHECK(one.probability("0_1") == r(20, 32));
  CHECK(one.probability("3_1") == r(10, 32));
  CHECK(one.probability("5_1") == r(2, 32));
}

TEST_CASE("dominance and mirror invariance on small corpus shadows") {
  for (const auto& entry : testing::corpus()) {
    if (entry.shadow->crossing_count() > 7) continue;
    CAPTURE(entry.name);
    const Pseudodiagram d(entry.shadow);
    const auto pl = were_set(d, WereMode::kPL);
    const auto smooth = were_set(d, WereMode::kSmooth);
    check_well_formed(pl);
    check_well_formed(smooth);
    Rational deficit = 0;
    for (const auto& [name, p] : smooth.entries) {
      CHECK(pl.probability(name) <= p);
      deficit += p - pl.probability(name);
    }
    CHECK(deficit == pl.empty_prob);
    CHECK(were_set(mirror(d), WereMode::kPL) == pl);
  }
}

TEST_CASE("forces: argument checks") {
  Pseudodiagram d(gen_star(5));
  d.set(4, CrossingAssignment::kFirstOver);
  const std::vector<CrossingAssignment> one{CrossingAssignment::kFirstOver};
  const std::vector<CrossingAssignment> two(2, CrossingAssignment::kFirstOver);
  CHECK_THROWS_AS(forces(d, std::vector<std::size_t>{4}, one), InvalidSetError);
  CHECK_THROWS_AS(forces(d, std::vector<std::size_t>{9}, one), InvalidSetError);
  CHECK_THROWS_AS(forces(d, std::vector<std::size_t>{1, 1}, two), InvalidSetError);
  CHECK_THROWS_AS(forces(d, std::vector<std::size_t>{1}, two), InvalidSetError);
}

TEST_CASE("forces on the pentagram") {
  const auto shadow = gen_star(5);
  const Pseudodiagram d(shadow);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4};
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const auto res = resolution_from_bits(shadow, bits);
    std::vector<CrossingAssignment> values;
    for (auto a : res.assignment()) values.push_back(*a);
    CHECK(forces(d, all, values) == check_feasibility(build_constraints(res)).feasible());
  }
  for (std::size_t id = 0; id < 5; ++id) {
    for (auto v : {CrossingAssignment::kFirstOver, CrossingAssignment::kSecondOver}) {
      CHECK_FALSE(forces(d, std::vector<std::size_t>{id}, std::vector<CrossingAssignment>{v}));
    }
  }
  CHECK(forces(d, std::vector<std::size_t>{0, 1},
               std::vector<CrossingAssignment>{CrossingAssignment::kFirstOver,
                                               CrossingAssignment::kSecondOver}));
}

TEST_CASE("forcing_number of the pentagram") {
  const auto report = forcing_number(Pseudodiagram(gen_star(5)));
  REQUIRE(report.forcing_number);
  CHECK(*report.forcing_number == 2);
  CHECK(report.witness_set.size() == 2);
  CHECK_FALSE(report.vacuous);
  CHECK(report.precrossings == 5);
  Pseudodiagram replay(gen_star(5));
  for (std::size_t i = 0; i < report.witness_set.size(); ++i) {
    replay.set(report.witness_set[i], report.witness_assignment[i]);
  }
  const auto outcome = propagate_forced(replay);
  CHECK(outcome.status == PropagationStatus::kCompleted);
  CHECK(outcome.derived == report.propagation_trace.derived);
  CHECK(outcome.derived.size() == 3);
}

TEST_CASE("vacuous forcing is flagged") {
  const auto bow = forcing_number(Pseudodiagram(testing::bowtie()));
  REQUIRE(bow.forcing_number);
  CHECK(*bow.forcing_number == 1);
  CHECK(bow.vacuous);

  // Two crossings, all four resolutions realizable: no single choice decides
  // the other, so only the whole set forces.
  bool found = false;
  for (const auto& entry : testing::corpus()) {
    if (entry.shadow->crossing_count() != 2) continue;
    const auto table = testing::resolution_feasibility(entry.shadow);
    if (std::count(table.begin(), table.end(), true) != 4) continue;
    found = true;
    const auto report = forcing_number(Pseudodiagram(entry.shadow));
    REQUIRE(report.forcing_number);
    CHECK(*report.forcing_number == 2);
    CHECK(report.vacuous);
  }
  CHECK(found);

  CHECK_THROWS_AS(forcing_number(Pseudodiagram(testing::square())), InvalidSetError);
}

TEST_CASE("forcing_number honours max_size") {
  const auto report = forcing_number(Pseudodiagram(gen_star(5)), 1);
  CHECK_FALSE(report.forcing_number);
  CHECK(report.searched_up_to == 1);
}

TEST_CASE("forces matches unique realizable completion") {
  for (const auto& entry : testing::corpus()) {
    const auto c = entry.shadow->crossing_count();
    if (c == 0 || c > 4) continue;
    CAPTURE(entry.name);
    const auto table = testing::resolution_feasibility(entry.shadow);
    const Pseudodiagram d(entry.shadow);
    RealizabilityOracle oracle(entry.shadow);
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < c; ++i) states *= 3;
    for (std::uint64_t state = 1; state < states; ++state) {
      std::vector<std::size_t> set;
      std::vector<CrossingAssignment> values;
      Pseudodiagram extended = d;
      std::uint64_t s = state;
      for (std::size_t i = 0; i < c; ++i, s /= 3) {
        if (s % 3 == 0) continue;
        set.push_back(i);
        values.push_back(s % 3 == 1 ? CrossingAssignment::kFirstOver
                                    : CrossingAssignment::kSecondOver);
        extended.set(i, values.back());
      }
      CHECK(forces(d, set, values, oracle) ==
            (testing::realizable_completions(extended, table) == 1));
    }
  }
}

TEST_CASE("max_forced") {
  const auto pent = max_forced(Pseudodiagram(gen_star(5)));
  CHECK(pent.max_forced == 3);
  CHECK_FALSE(pent.budget_exceeded);
  CHECK(pent.states_examined == 243);
  CHECK(pent.maximizing_trace.derived.size() == 3);

  const auto sq = max_forced(Pseudodiagram(testing::square()));
  CHECK(sq.max_forced == 0);
  CHECK(sq.states_total == 1);

  const auto torus = max_forced(Pseudodiagram(gen_torus(7, 2)));
  CHECK(torus.max_forced == 0);
  CHECK(torus.states_examined == 2187);

  const auto capped = max_forced(Pseudodiagram(gen_star(5)), 10);
  CHECK(capped.budget_exceeded);
  CHECK(capped.states_examined == 10);
}

TEST_CASE("core_catalog") {
  const auto catalog = core_catalog(Pseudodiagram(gen_star(5)));
  CHECK(catalog.nonrealizable_completions == 22);
  CHECK_FALSE(catalog.cores.empty());
  for (const auto& core : catalog.cores) {
    Pseudodiagram p(gen_star(5));
    for (std::size_t i = 0; i < core.crossings.size(); ++i) p.set(core.crossings[i], core.values[i]);
    CHECK_FALSE(testing::fm_feasible(build_constraints(p)));
    // Mirror cores come in pairs.
    SignedCore m = core;
    for (auto& v : m.values) v = flip(v);
    CHECK(std::find(catalog.cores.begin(), catalog.cores.end(), m) != catalog.cores.end());
  }
  CHECK(core_catalog(Pseudodiagram(gen_torus(7, 2))).cores.empty());
}
