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

#include <cstdint>

#include "plknot/diagram.hpp"

namespace plknot {

/// Base radius of the generated star and torus shadows.
inline constexpr long kGeneratorRadius = 10000;

/// The {n/2} star polygon: n points on a circle of radius ~10^4 rounded to
/// integer coordinates, visited every second point. Exactly n crossings.
/// Throws std::invalid_argument unless n is odd and >= 5, and
/// GeneralPositionError if no radius in the retry sequence works.
ShadowPtr gen_star(int n);

/// Shadow of the (n,2)-torus knot with n * subdiv edges and n crossings.
///
/// For n >= 5 this is the {n/2} star with every edge cut into `subdiv`
/// pieces and the cut points pushed radially outward by 1/100 of the radius.
/// The {3/2} star is a triangle, so for n = 3 the cut points instead follow
/// the profile r = R (1 - sin(pi f) / 2) over the 240 degree sweep
/// of each star edge, slightly rotated forward. subdiv = 2 gives a hexagon.
/// Throws std::invalid_argument on bad parameters and GeneralPositionError
/// if the construction fails for every radius tried.
ShadowPtr gen_torus(int n, int subdiv);

/// Pseudorandom closed polygon with integer coordinates in [-50, 50],
/// resampled until it is in general position. Deterministic in `seed`.
/// Throws std::invalid_argument if num_vertices < 3 and
/// ExhaustedRetriesError after 10000 rejected samples.
ShadowPtr gen_random(int num_vertices, std::uint64_t seed);

}  // namespace plknot
