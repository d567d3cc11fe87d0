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
#include <string>
#include <vector>

#include "plknot/rational.hpp"

namespace plknot {

struct PlanePoint {
  Rational x;
  Rational y;

  friend bool operator==(const PlanePoint& a, const PlanePoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

/// (b - a) x (c - a); positive when a, b, c turn counterclockwise.
Rational orient(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c);

/// Cross product of the direction vectors (b1 - a1) and (b2 - a2).
Rational cross(const PlanePoint& a1, const PlanePoint& b1, const PlanePoint& a2,
               const PlanePoint& b2);

/// (1 - t) * a + t * b.
PlanePoint lerp(const PlanePoint& a, const PlanePoint& b, const Rational& t);

struct SegmentHit {
  Rational s;  // parameter along the first segment
  Rational t;  // parameter along the second segment
  PlanePoint point;
};

/// Edge k of a polygon runs from vertex k to vertex (k + 1) mod n.
/// `edge_a < edge_b`, the edges are not adjacent, and s / t are the interior
/// parameters of the crossing point along edge_a / edge_b.
struct CrossingGeometry {
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
  Rational s;
  Rational t;
  PlanePoint point;

  friend bool operator==(const CrossingGeometry& a, const CrossingGeometry& b) {
    return a.edge_a == b.edge_a && a.edge_b == b.edge_b && a.s == b.s && a.t == b.t &&
           a.point == b.point;
  }
};

/// Transversal interior intersection of segments p1p2 and q1q2.
///
/// Returns nothing when the segments are disjoint or only share an endpoint.
/// Throws DegenerateError on collinear overlap or when an endpoint of one
/// segment lies on the other (other than a shared endpoint).
std::optional<SegmentHit> intersect_segments(const PlanePoint& p1, const PlanePoint& p2,
                                             const PlanePoint& q1, const PlanePoint& q2);

struct Violation {
  enum class Kind {
    kTooFewVertices,
    kRepeatedVertex,    // consecutive vertices coincide
    kDuplicateVertex,   // two non-consecutive vertices coincide
    kAdjacentOverlap,   // adjacent edges fold back onto each other
    kVertexOnEdge,      // a vertex lies on a non-incident edge
    kCollinearOverlap,  // non-adjacent edges overlap along a segment
    kTriplePoint,       // three or more edges through one point
  };
  Kind kind;
  std::vector<std::size_t> items;  // vertex or edge indices, depending on kind
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// Checks the polygon is a valid shadow: at least three pairwise distinct
/// vertices, edges meeting only transversally at interior points, and no
/// triple points. Never throws; an empty result means the polygon is valid.
std::vector<Violation> validate_general_position(std::span<const PlanePoint> vertices);

/// All crossings of non-adjacent edge pairs, sorted by (edge_a, s). The index
/// in the returned vector is the crossing id.
/// Throws GeneralPositionError when validation fails.
std::vector<CrossingGeometry> compute_crossings(std::span<const PlanePoint> vertices);

}  // namespace plknot
