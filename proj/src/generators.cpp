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

#include "plknot/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "plknot/errors.hpp"

namespace plknot {

namespace {

constexpr int kRadiusRetries = 32;

PlanePoint circle_point(long radius, double angle) {
  return PlanePoint{Rational(std::lround(static_cast<double>(radius) * std::cos(angle))),
                    Rational(std::lround(static_cast<double>(radius) * std::sin(angle)))};
}

double star_angle(int n, int k) {
  return std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(k) / n;
}

/// Star vertices in visiting order: point 2i mod n.
std::vector<PlanePoint> star_vertices(int n, long radius) {
  std::vector<PlanePoint> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.push_back(circle_point(radius, star_angle(n, (2 * i) % n)));
  return v;
}

std::set<std::pair<std::size_t, std::size_t>> edge_pairs(const Shadow& s, std::size_t group) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : s.crossings()) out.emplace(c.edge_a / group, c.edge_b / group);
  return out;
}

}  // namespace

ShadowPtr gen_star(int n) {
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("gen_star needs an odd n >= 5");
  std::string last_error;
  for (int attempt = 0; attempt < kRadiusRetries; ++attempt) {
    try {
      auto shadow = make_shadow(star_vertices(n, kGeneratorRadius + attempt));
      if (shadow->crossing_count() == static_cast<std::size_t>(n)) return shadow;
      last_error = "expected " + std::to_string(n) + " crossings, found " +
                   std::to_string(shadow->crossing_count());
    } catch (const GeneralPositionError& e) {
      last_error = e.what();
    }
  }
  throw GeneralPositionError("gen_star(" + std::to_string(n) + ") failed: " + last_error);
}

ShadowPtr gen_torus(int n, int subdiv) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("gen_torus needs an odd n >= 3");
  if (subdiv < 2) throw std::invalid_argument("gen_torus needs subdiv >= 2");

  std::string last_error;
  for (int attempt = 0; attempt < kRadiusRetries; ++attempt) {
    const long radius = kGeneratorRadius + attempt;
    const auto outer = star_vertices(n, radius);
    std::vector<PlanePoint> v;
    v.reserve(static_cast<std::size_t>(n) * subdiv);
    for (int i = 0; i < n; ++i) {
      const auto& a = outer[i];
      const auto& b = outer[(i + 1) % n];
      v.push_back(a);
      for (int j = 1; j < subdiv; ++j) {
        if (n == 3) {
          // Samples of r = R (1 - sin(pi f) / 2) along a 240 degree sweep,
          // nudged forward by up to 1/20 of the sweep so no two sweeps share
          // a sample and the threefold symmetry is broken.
          const double f = static_cast<double>(j) / subdiv;
          const double sweep = 4 * std::numbers::pi / n;
          const double angle = star_angle(n, 2 * i) + sweep * f * (1 + 1.0 / 20);
          const double r = static_cast<double>(radius) * (1 - std::sin(std::numbers::pi * f) / 2);
          v.push_back(circle_point(std::lround(r), angle));
          continue;
        }
        const PlanePoint p = lerp(a, b, Rational(j, subdiv));
        const double px = p.x.get_d();
        const double py = p.y.get_d();
        const double len = std::hypot(px, py);
        const double push = static_cast<double>(radius) / 100.0;
        v.push_back(PlanePoint{p.x + std::lround(push * px / len),
                               p.y + std::lround(push * py / len)});
      }
    }
    try {
      auto shadow = make_shadow(std::move(v));
      if (shadow->crossing_count() != static_cast<std::size_t>(n)) {
        last_error = "expected " + std::to_string(n) + " crossings, found " +
                     std::to_string(shadow->crossing_count());
        continue;
      }
      if (n >= 5 && edge_pairs(*shadow, subdiv) != edge_pairs(*make_shadow(outer), 1)) {
        last_error = "subdivision changed which star edges cross";
        continue;
      }
      return shadow;
    } catch (const GeneralPositionError& e) {
      last_error = e.what();
    }
  }
  throw GeneralPositionError("gen_torus(" + std::to_string(n) + ", " + std::to_string(subdiv) +
                             ") failed: " + last_error);
}

ShadowPtr gen_random(int num_vertices, std::uint64_t seed) {
  if (num_vertices < 3) throw std::invalid_argument("gen_random needs at least 3 vertices");
  // mt19937_64 output is fixed by the standard; distributions are not, so
  // coordinates are reduced by hand.
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<PlanePoint> v;
    v.reserve(num_vertices);
    for (int i = 0; i < num_vertices; ++i) {
      const long x = static_cast<long>(rng() % 101) - 50;
      const long y = static_cast<long>(rng() % 101) - 50;
      v.push_back(PlanePoint{Rational(x), Rational(y)});
    }
    if (validate_general_position(v).empty()) return make_shadow(std::move(v));
  }
  throw ExhaustedRetriesError("gen_random could not find a polygon in general position");
}

}  // namespace plknot
