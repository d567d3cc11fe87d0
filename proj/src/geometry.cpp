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

#include "plknot/geometry.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "plknot/errors.hpp"

namespace plknot {

namespace {

enum class Contact { kNone, kCrossing, kSharedEndpoint, kEndpointOnInterior, kCollinearOverlap };

struct ContactResult {
  Contact contact = Contact::kNone;
  SegmentHit hit;
};

Rational dot(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c, const PlanePoint& d) {
  return (b.x - a.x) * (d.x - c.x) + (b.y - a.y) * (d.y - c.y);
}

ContactResult classify_contact(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& q1,
                               const PlanePoint& q2) {
  const Rational denom = cross(p1, p2, q1, q2);
  if (denom == 0) {
    if (orient(p1, p2, q1) != 0) return {};
    // Collinear: project q onto the parameter line of p.
    const Rational len2 = dot(p1, p2, p1, p2);
    Rational u0 = dot(p1, p2, p1, q1) / len2;
    Rational u1 = dot(p1, p2, p1, q2) / len2;
    if (u0 > u1) std::swap(u0, u1);
    const Rational lo = u0 > 0 ? u0 : Rational(0);
    const Rational hi = u1 < 1 ? u1 : Rational(1);
    if (lo > hi) return {};
    if (lo == hi) return {Contact::kSharedEndpoint, {}};
    return {Contact::kCollinearOverlap, {}};
  }
  const Rational s = cross(p1, q1, q1, q2) / denom;
  const Rational t = cross(p1, q1, p1, p2) / denom;
  if (s < 0 || s > 1 || t < 0 || t > 1) return {};
  const bool s_end = (s == 0 || s == 1);
  const bool t_end = (t == 0 || t == 1);
  if (s_end && t_end) return {Contact::kSharedEndpoint, {}};
  if (s_end || t_end) return {Contact::kEndpointOnInterior, {}};
  return {Contact::kCrossing, SegmentHit{s, t, lerp(p1, p2, s)}};
}

bool edges_adjacent(std::size_t i, std::size_t j, std::size_t n) {
  return (i + 1) % n == j || (j + 1) % n == i;
}

std::string describe(const PlanePoint& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

struct Scan {
  std::vector<Violation> violations;
  std::vector<CrossingGeometry> crossings;
};

Scan scan_polygon(std::span<const PlanePoint> v) {
  Scan out;
  const std::size_t n = v.size();
  auto report = [&](Violation::Kind kind, std::vector<std::size_t> items, std::string msg) {
    out.violations.push_back(Violation{kind, std::move(items), std::move(msg)});
  };

  if (n < 3) {
    report(Violation::Kind::kTooFewVertices, {}, "polygon needs at least 3 vertices, got " +
                                                     std::to_string(n));
    return out;
  }

  bool repeated = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[i] != v[j]) continue;
      repeated = true;
      if (edges_adjacent(i, j, n)) {
        report(Violation::Kind::kRepeatedVertex, {i, j},
               "consecutive vertices " + std::to_string(i) + " and " + std::to_string(j) +
                   " coincide at " + describe(v[i]));
      } else {
        report(Violation::Kind::kDuplicateVertex, {i, j},
               "vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide at " +
                   describe(v[i]));
      }
    }
  }
  // Zero-length edges make every later predicate meaningless.
  if (repeated) return out;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const auto& c = v[(i + 2) % n];
    if (orient(a, b, c) == 0 && dot(b, a, b, c) > 0) {
      report(Violation::Kind::kAdjacentOverlap, {i, (i + 1) % n},
             "edges " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                 " fold back over each other at vertex " + std::to_string((i + 1) % n));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edges_adjacent(i, j, n)) continue;
      const auto r = classify_contact(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
      switch (r.contact) {
        case Contact::kNone:
        case Contact::kSharedEndpoint:  // excluded by the duplicate-vertex check
          break;
        case Contact::kCrossing:
          out.crossings.push_back(CrossingGeometry{i, j, r.hit.s, r.hit.t, r.hit.point});
          break;
        case Contact::kEndpointOnInterior:
          report(Violation::Kind::kVertexOnEdge, {i, j},
                 "edges " + std::to_string(i) + " and " + std::to_string(j) +
                     " touch at a vertex lying on the other edge");
          break;
        case Contact::kCollinearOverlap:
          report(Violation::Kind::kCollinearOverlap, {i, j},
                 "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap collinearly");
          break;
      }
    }
  }

  for (std::size_t i = 0; i < out.crossings.size(); ++i) {
    std::vector<std::size_t> edges;
    for (std::size_t j = 0; j < out.crossings.size(); ++j) {
      if (out.crossings[j].point != out.crossings[i].point) continue;
      if (j < i) {
        edges.clear();
        break;  // reported when the first crossing at this point was visited
      }
      edges.push_back(out.crossings[j].edge_a);
      edges.push_back(out.crossings[j].edge_b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() >= 3) {
      report(Violation::Kind::kTriplePoint, edges,
             std::to_string(edges.size()) + " edges pass through " +
                 describe(out.crossings[i].point));
    }
  }

  std::sort(out.crossings.begin(), out.crossings.end(),
            [](const CrossingGeometry& a, const CrossingGeometry& b) {
              if (a.edge_a != b.edge_a) return a.edge_a < b.edge_a;
              return a.s < b.s;
            });
  return out;
}

}  // namespace

Rational orient(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

Rational cross(const PlanePoint& a1, const PlanePoint& b1, const PlanePoint& a2,
               const PlanePoint& b2) {
  return (b1.x - a1.x) * (b2.y - a2.y) - (b1.y - a1.y) * (b2.x - a2.x);
}

PlanePoint lerp(const PlanePoint& a, const PlanePoint& b, const Rational& t) {
  return PlanePoint{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

std::optional<SegmentHit> intersect_segments(const PlanePoint& p1, const PlanePoint& p2,
                                             const PlanePoint& q1, const PlanePoint& q2) {
  const auto r = classify_contact(p1, p2, q1, q2);
  switch (r.contact) {
    case Contact::kCrossing:
      return r.hit;
    case Contact::kEndpointOnInterior:
      throw DegenerateError("segment endpoint lies on the interior of the other segment");
    case Contact::kCollinearOverlap:
      throw DegenerateError("segments overlap collinearly");
    default:
      return std::nullopt;
  }
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kTooFewVertices: return "too_few_vertices";
    case Violation::Kind::kRepeatedVertex: return "repeated_vertex";
    case Violation::Kind::kDuplicateVertex: return "duplicate_vertex";
    case Violation::Kind::kAdjacentOverlap: return "adjacent_overlap";
    case Violation::Kind::kVertexOnEdge: return "vertex_on_edge";
    case Violation::Kind::kCollinearOverlap: return "collinear_overlap";
    case Violation::Kind::kTriplePoint: return "triple_point";
  }
  return "unknown";
}

std::vector<Violation> validate_general_position(std::span<const PlanePoint> vertices) {
  return scan_polygon(vertices).violations;
}

std::vector<CrossingGeometry> compute_crossings(std::span<const PlanePoint> vertices) {
  auto scan = scan_polygon(vertices);
  if (!scan.violations.empty()) {
    std::ostringstream msg;
    msg << "polygon is not in general position:";
    for (const auto& v : scan.violations) msg << "\n  " << v.message;
    throw GeneralPositionError(msg.str());
  }
  return std::move(scan.crossings);
}

}  // namespace plknot
