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

#include "plknot/errors.hpp"
#include "plknot/geometry.hpp"

using namespace plknot;

namespace {

PlanePoint pt(long x, long y) { return PlanePoint{Rational(x), Rational(y)}; }

std::vector<PlanePoint> pts(std::initializer_list<std::pair<long, long>> list) {
  std::vector<PlanePoint> v;
  for (auto [x, y] : list) v.push_back(pt(x, y));
  return v;
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("intersect_segments: symmetric diagonals") {
  const auto hit = intersect_segments(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0));
  REQUIRE(hit);
  CHECK(hit->s == make_rational(1, 2));
  CHECK(hit->t == make_rational(1, 2));
  CHECK(hit->point == pt(1, 1));
}

TEST_CASE("intersect_segments: no contact") {
  CHECK_FALSE(intersect_segments(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)));
  CHECK_FALSE(intersect_segments(pt(0, 0), pt(1, 0), pt(5, 5), pt(6, 7)));
  // Shared endpoint only.
  CHECK_FALSE(intersect_segments(pt(0, 0), pt(1, 0), pt(1, 0), pt(1, 5)));
}

TEST_CASE("intersect_segments: degeneracies are errors") {
  CHECK_THROWS_AS(intersect_segments(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)), DegenerateError);
  // Endpoint of one segment on the interior of the other.
  CHECK_THROWS_AS(intersect_segments(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 3)), DegenerateError);
}

TEST_CASE("intersect_segments is symmetric") {
  const auto a = intersect_segments(pt(0, 0), pt(7, 3), pt(1, 4), pt(5, -2));
  const auto b = intersect_segments(pt(1, 4), pt(5, -2), pt(0, 0), pt(7, 3));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->s == b->t);
  CHECK(a->t == b->s);
  CHECK(a->point == b->point);
  CHECK(a->point == lerp(pt(0, 0), pt(7, 3), a->s));
  CHECK(a->point == lerp(pt(1, 4), pt(5, -2), a->t));
}

TEST_CASE("compute_crossings on small polygons") {
  CHECK(compute_crossings(pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}})).empty());

  const auto bow = compute_crossings(pts({{0, 0}, {4, 0}, {0, 3}, {4, 3}}));
  REQUIRE(bow.size() == 1);
  CHECK(bow[0].edge_a == 1);  // v1 v2
  CHECK(bow[0].edge_b == 3);  // v3 v0
  CHECK(bow[0].point == PlanePoint{Rational(2), make_rational(3, 2)});
}

TEST_CASE("pentagram crossings match exhaustive pairwise intersection") {
  const auto v = pts({{0, 4}, {3, -4}, {-4, 1}, {4, 1}, {-3, -4}});
  const auto xs = compute_crossings(v);
  CHECK(xs.size() == 5);

  // Every non-adjacent edge pair, intersected directly.
  std::size_t found = 0;
  const std::size_t n = v.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      if (auto hit = intersect_segments(v[a], v[(a + 1) % n], v[b], v[(b + 1) % n])) {
        ++found;
        const bool listed = std::any_of(xs.begin(), xs.end(), [&](const CrossingGeometry& c) {
          return c.edge_a == a && c.edge_b == b && c.s == hit->s && c.t == hit->t;
        });
        CHECK(listed);
      }
    }
  }
  CHECK(found == 5);

  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& c = xs[i];
    CHECK(c.edge_a < c.edge_b);
    CHECK(c.s > 0);
    CHECK(c.s < 1);
    CHECK(c.t > 0);
    CHECK(c.t < 1);
    CHECK(c.point == lerp(v[c.edge_a], v[(c.edge_a + 1) % n], c.s));
    CHECK(c.point == lerp(v[c.edge_b], v[(c.edge_b + 1) % n], c.t));
    if (i > 0) {
      const auto& p = xs[i - 1];
      CHECK((p.edge_a < c.edge_a || (p.edge_a == c.edge_a && p.s < c.s)));
    }
  }
}

TEST_CASE("compute_crossings is invariant under translation and scaling") {
  const auto v = pts({{0, 4}, {3, -4}, {-4, 1}, {4, 1}, {-3, -4}});
  const auto base = compute_crossings(v);
  const Rational k = make_rational(7, 3);
  const PlanePoint shift{make_rational(-5, 2), make_rational(11, 7)};
  std::vector<PlanePoint> moved;
  for (const auto& p : v) moved.push_back(PlanePoint{p.x * k + shift.x, p.y * k + shift.y});
  const auto other = compute_crossings(moved);
  REQUIRE(other.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(other[i].edge_a == base[i].edge_a);
    CHECK(other[i].edge_b == base[i].edge_b);
    CHECK(other[i].s == base[i].s);
    CHECK(other[i].t == base[i].t);
  }
}

TEST_CASE("validate_general_position") {
  CHECK(validate_general_position(pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}})).empty());

  const auto repeated = validate_general_position(pts({{0, 0}, {0, 0}, {3, 1}}));
  CHECK(has_kind(repeated, Violation::Kind::kRepeatedVertex));

  CHECK(has_kind(validate_general_position(pts({{0, 0}, {1, 1}})),
                 Violation::Kind::kTooFewVertices));

  // A vertex on a non-incident edge.
  CHECK(has_kind(validate_general_position(pts({{0, 0}, {4, 0}, {4, 4}, {2, 0}, {0, 4}})),
                 Violation::Kind::kVertexOnEdge));

  // Non-consecutive vertices coincide.
  CHECK(has_kind(validate_general_position(pts({{0, 0}, {4, 0}, {2, 2}, {4, 4}, {0, 4}, {2, 2}})),
                 Violation::Kind::kDuplicateVertex));

  // Edges 0, 2 and 4 all pass through the origin.
  const auto triple =
      validate_general_position(pts({{-2, 0}, {2, 0}, {1, 3}, {-1, -3}, {-1, 3}, {1, -3}}));
  CHECK(has_kind(triple, Violation::Kind::kTriplePoint));
  CHECK_THROWS_AS(
      compute_crossings(pts({{-2, 0}, {2, 0}, {1, 3}, {-1, -3}, {-1, 3}, {1, -3}})),
      GeneralPositionError);

  // Adjacent edges folding back onto each other.
  CHECK(has_kind(validate_general_position(pts({{0, 0}, {4, 0}, {2, 0}, {1, 5}})),
                 Violation::Kind::kAdjacentOverlap));

  // Collinear overlap of non-adjacent edges.
  CHECK(has_kind(validate_general_position(pts({{0, 0}, {4, 0}, {5, 2}, {6, 0}, {2, 0}, {1, -3}})),
                 Violation::Kind::kCollinearOverlap));
}

TEST_CASE("violations carry readable messages") {
  for (const auto& v : validate_general_position(pts({{0, 0}, {0, 0}, {3, 1}}))) {
    CHECK_FALSE(v.message.empty());
    CHECK_FALSE(to_string(v.kind).empty());
  }
}
