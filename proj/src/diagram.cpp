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

#include "plknot/diagram.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "plknot/errors.hpp"

namespace plknot {

namespace {

void require_total(const Pseudodiagram& p, const char* what) {
  if (!p.is_resolution()) {
    throw PartialAssignmentError(std::string(what) + " requires every crossing to be assigned");
  }
}

bool first_is_over(const Pseudodiagram& p, std::size_t id) {
  return *p.at(id) == CrossingAssignment::kFirstOver;
}

}  // namespace

std::string_view to_string(CrossingAssignment a) {
  return a == CrossingAssignment::kFirstOver ? "first_over" : "second_over";
}

std::optional<CrossingAssignment> parse_assignment(std::string_view text) {
  if (text == "first_over") return CrossingAssignment::kFirstOver;
  if (text == "second_over") return CrossingAssignment::kSecondOver;
  return std::nullopt;
}

Shadow::Shadow(std::vector<PlanePoint> vertices)
    : vertices_(std::move(vertices)), crossings_(compute_crossings(vertices_)) {}

ShadowPtr make_shadow(std::vector<PlanePoint> vertices) {
  return std::make_shared<const Shadow>(std::move(vertices));
}

Pseudodiagram::Pseudodiagram(ShadowPtr shadow)
    : shadow_(std::move(shadow)), assignment_(shadow_->crossing_count()) {}

Pseudodiagram::Pseudodiagram(ShadowPtr shadow, Assignment assignment)
    : shadow_(std::move(shadow)), assignment_(std::move(assignment)) {
  if (assignment_.size() != shadow_->crossing_count()) {
    throw LengthMismatchError("assignment has " + std::to_string(assignment_.size()) +
                              " entries but the shadow has " +
                              std::to_string(shadow_->crossing_count()) + " crossings");
  }
}

void Pseudodiagram::set(std::size_t id, std::optional<CrossingAssignment> value) {
  assignment_.at(id) = value;
}

Pseudodiagram Pseudodiagram::with(std::size_t id, std::optional<CrossingAssignment> value) const {
  Pseudodiagram copy = *this;
  copy.set(id, value);
  return copy;
}

bool Pseudodiagram::is_resolution() const noexcept {
  return std::all_of(assignment_.begin(), assignment_.end(),
                     [](const auto& a) { return a.has_value(); });
}

std::vector<std::size_t> Pseudodiagram::precrossings() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (!assignment_[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Pseudodiagram::assigned() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i]) out.push_back(i);
  }
  return out;
}

Resolution resolution_from_bits(ShadowPtr shadow, std::string_view bits) {
  if (bits.size() != shadow->crossing_count()) {
    throw LengthMismatchError("expected " + std::to_string(shadow->crossing_count()) +
                              " bits, got " + std::to_string(bits.size()));
  }
  Assignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      a[i] = CrossingAssignment::kFirstOver;
    } else if (bits[i] == '0') {
      a[i] = CrossingAssignment::kSecondOver;
    } else {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return Resolution(std::move(shadow), std::move(a));
}

Resolution resolution_from_bits(ShadowPtr shadow, std::uint64_t bits) {
  Assignment a(shadow->crossing_count());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = ((bits >> i) & 1U) != 0 ? CrossingAssignment::kFirstOver
                                   : CrossingAssignment::kSecondOver;
  }
  return Resolution(std::move(shadow), std::move(a));
}

std::string to_bits(const Resolution& r) {
  require_total(r, "to_bits");
  std::string out;
  for (const auto& a : r.assignment()) out += (*a == CrossingAssignment::kFirstOver) ? '1' : '0';
  return out;
}

Pseudodiagram mirror(const Pseudodiagram& p) {
  Assignment a = p.assignment();
  for (auto& entry : a) {
    if (entry) entry = flip(*entry);
  }
  return Pseudodiagram(p.shadow_ptr(), std::move(a));
}

std::vector<Passage> passages(const Shadow& shadow) {
  struct Visit {
    Rational param;
    Passage passage;
  };
  std::vector<std::vector<Visit>> per_edge(shadow.edge_count());
  const auto& crossings = shadow.crossings();
  for (std::size_t id = 0; id < crossings.size(); ++id) {
    const auto& c = crossings[id];
    per_edge[c.edge_a].push_back({c.s, Passage{id, c.edge_a, true}});
    per_edge[c.edge_b].push_back({c.t, Passage{id, c.edge_b, false}});
  }
  std::vector<Passage> out;
  out.reserve(2 * crossings.size());
  for (auto& visits : per_edge) {
    std::sort(visits.begin(), visits.end(),
              [](const Visit& a, const Visit& b) { return a.param < b.param; });
    for (const auto& v : visits) out.push_back(v.passage);
  }
  return out;
}

std::vector<GaussEntry> gauss_sequence(const Resolution& r) {
  require_total(r, "gauss_sequence");
  std::vector<GaussEntry> out;
  for (const auto& p : passages(r.shadow())) {
    out.push_back(GaussEntry{p.crossing, p.on_first_edge == first_is_over(r, p.crossing)});
  }
  return out;
}

namespace {

struct StrandDirections {
  PlanePoint over_start, over_end, under_start, under_end;
};

StrandDirections strands(const Pseudodiagram& p, std::size_t id) {
  const auto& c = p.shadow().crossings().at(id);
  const auto& s = p.shadow();
  std::size_t over = c.edge_a;
  std::size_t under = c.edge_b;
  if (!first_is_over(p, id)) std::swap(over, under);
  return {s.edge_start(over), s.edge_end(over), s.edge_start(under), s.edge_end(under)};
}

}  // namespace

int crossing_sign(const Pseudodiagram& p, std::size_t id) {
  if (!p.at(id)) throw PartialAssignmentError("crossing " + std::to_string(id) + " is unassigned");
  const auto d = strands(p, id);
  // Right-handed: turning the over direction counterclockwise reaches the
  // under direction.
  return cross(d.over_start, d.over_end, d.under_start, d.under_end) > 0 ? 1 : -1;
}

int writhe(const Resolution& r) {
  require_total(r, "writhe");
  int w = 0;
  for (std::size_t id = 0; id < r.crossing_count(); ++id) w += crossing_sign(r, id);
  return w;
}

PDCode pd_code(const Resolution& r) {
  require_total(r, "pd_code");
  const std::size_t c = r.crossing_count();
  if (c == 0) throw NoCrossingsError("pd_code needs at least one crossing");

  const auto visits = passages(r.shadow());
  const int arcs = static_cast<int>(2 * c);
  std::vector<int> under_pos(c), over_pos(c);
  for (std::size_t i = 0; i < visits.size(); ++i) {
    const auto id = visits[i].crossing;
    const bool over = visits[i].on_first_edge == first_is_over(r, id);
    (over ? over_pos : under_pos)[id] = static_cast<int>(i);
  }
  auto arc_in = [&](int pos) { return pos == 0 ? arcs : pos; };
  auto arc_out = [&](int pos) { return pos + 1; };

  PDCode code(c);
  for (std::size_t id = 0; id < c; ++id) {
    const int u_in = arc_in(under_pos[id]);
    const int u_out = arc_out(under_pos[id]);
    const int o_in = arc_in(over_pos[id]);
    const int o_out = arc_out(over_pos[id]);
    const auto d = strands(r, id);
    // Counterclockwise from the incoming under arc, the next arc is the
    // incoming over arc exactly when the over strand points to the left of
    // the under strand.
    if (cross(d.under_start, d.under_end, d.over_start, d.over_end) > 0) {
      code[id] = {u_in, o_in, u_out, o_out};
    } else {
      code[id] = {u_in, o_out, u_out, o_in};
    }
  }
  return code;
}

Resolution alternating_resolution(ShadowPtr shadow) {
  const auto visits = passages(*shadow);
  Assignment a(shadow->crossing_count());
  for (std::size_t i = 0; i < visits.size(); ++i) {
    const bool over = (i % 2 == 0);
    const auto& v = visits[i];
    const auto value = (over == v.on_first_edge) ? CrossingAssignment::kFirstOver
                                                 : CrossingAssignment::kSecondOver;
    if (a[v.crossing] && *a[v.crossing] != value) {
      throw std::logic_error("traversal parity broken at crossing " + std::to_string(v.crossing));
    }
    a[v.crossing] = value;
  }
  return Resolution(std::move(shadow), std::move(a));
}

}  // namespace plknot
