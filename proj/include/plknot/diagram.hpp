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

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plknot/geometry.hpp"

namespace plknot {

/// Over/under information at one crossing. "First" is the crossing's edge
/// with the smaller index (CrossingGeometry::edge_a).
enum class CrossingAssignment : std::uint8_t { kFirstOver, kSecondOver };

constexpr CrossingAssignment flip(CrossingAssignment a) noexcept {
  return a == CrossingAssignment::kFirstOver ? CrossingAssignment::kSecondOver
                                             : CrossingAssignment::kFirstOver;
}

std::string_view to_string(CrossingAssignment a);
/// Accepts "first_over" / "second_over".
std::optional<CrossingAssignment> parse_assignment(std::string_view text);

/// A closed polygon in general position together with its crossings.
/// Immutable once constructed.
class Shadow {
 public:
  /// Throws GeneralPositionError if the polygon is not a valid shadow.
  explicit Shadow(std::vector<PlanePoint> vertices);

  const std::vector<PlanePoint>& vertices() const noexcept { return vertices_; }
  const std::vector<CrossingGeometry>& crossings() const noexcept { return crossings_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return vertices_.size(); }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }

  const PlanePoint& edge_start(std::size_t edge) const { return vertices_[edge]; }
  const PlanePoint& edge_end(std::size_t edge) const {
    return vertices_[(edge + 1) % vertices_.size()];
  }

  friend bool operator==(const Shadow& a, const Shadow& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<PlanePoint> vertices_;
  std::vector<CrossingGeometry> crossings_;
};

using ShadowPtr = std::shared_ptr<const Shadow>;

ShadowPtr make_shadow(std::vector<PlanePoint> vertices);

/// Partial map crossing id -> assignment; index = crossing id.
using Assignment = std::vector<std::optional<CrossingAssignment>>;

/// A shadow plus over/under data on some of its crossings. A pseudodiagram
/// whose assignment is total is a resolution.
class Pseudodiagram {
 public:
  explicit Pseudodiagram(ShadowPtr shadow);
  /// Throws LengthMismatchError if `assignment` has the wrong length.
  Pseudodiagram(ShadowPtr shadow, Assignment assignment);

  const Shadow& shadow() const noexcept { return *shadow_; }
  const ShadowPtr& shadow_ptr() const noexcept { return shadow_; }
  const Assignment& assignment() const noexcept { return assignment_; }
  std::size_t crossing_count() const noexcept { return assignment_.size(); }

  std::optional<CrossingAssignment> at(std::size_t id) const { return assignment_.at(id); }
  /// Throws std::out_of_range on an invalid id.
  void set(std::size_t id, std::optional<CrossingAssignment> value);
  Pseudodiagram with(std::size_t id, std::optional<CrossingAssignment> value) const;

  bool is_resolution() const noexcept;
  /// Unassigned crossing ids, ascending.
  std::vector<std::size_t> precrossings() const;
  /// Assigned crossing ids, ascending.
  std::vector<std::size_t> assigned() const;

  friend bool operator==(const Pseudodiagram& a, const Pseudodiagram& b) {
    return (a.shadow_ == b.shadow_ || *a.shadow_ == *b.shadow_) &&
           a.assignment_ == b.assignment_;
  }

 private:
  ShadowPtr shadow_;
  Assignment assignment_;
};

/// A pseudodiagram with a total assignment.
using Resolution = Pseudodiagram;

/// Bit i applies to crossing id i; '1' is FIRST_OVER, '0' SECOND_OVER.
/// Throws LengthMismatchError, or std::invalid_argument on other characters.
Resolution resolution_from_bits(ShadowPtr shadow, std::string_view bits);
Resolution resolution_from_bits(ShadowPtr shadow, std::uint64_t bits);
/// Inverse of resolution_from_bits. Throws PartialAssignmentError.
std::string to_bits(const Resolution& r);

/// Flips every assigned crossing; unassigned ones stay unassigned.
Pseudodiagram mirror(const Pseudodiagram& p);

/// One visit of the traversal to a crossing.
struct Passage {
  std::size_t crossing = 0;
  std::size_t edge = 0;
  bool on_first_edge = false;  // the visit travels along edge_a

  friend bool operator==(const Passage&, const Passage&) = default;
};

/// Crossing visits in traversal order: from v_0 along edges 0, 1, ..., each
/// edge's crossings by increasing parameter. Every crossing appears twice.
std::vector<Passage> passages(const Shadow& shadow);

struct GaussEntry {
  std::size_t crossing = 0;
  bool over = false;

  friend bool operator==(const GaussEntry&, const GaussEntry&) = default;
};

/// Throws PartialAssignmentError.
std::vector<GaussEntry> gauss_sequence(const Resolution& r);

/// One 4-tuple per crossing id: (under in, next ccw, under out, next ccw).
/// Arcs are numbered 1..2c along the traversal; arc 1 leaves the first
/// passage after v_0.
using PDCode = std::vector<std::array<int, 4>>;

/// Throws PartialAssignmentError or NoCrossingsError.
PDCode pd_code(const Resolution& r);

/// +1 for a right-handed crossing, -1 for left-handed, using the traversal
/// orientation. Requires crossing `id` to be assigned.
int crossing_sign(const Pseudodiagram& p, std::size_t id);
/// Sum of crossing signs. Throws PartialAssignmentError.
int writhe(const Resolution& r);

/// The resolution whose passages alternate over/under along the traversal,
/// starting with "over" at the first passage.
Resolution alternating_resolution(ShadowPtr shadow);

}  // namespace plknot
