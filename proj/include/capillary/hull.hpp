// Copyright 2026 The Capillary Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <vector>

#include "capillary/geometry.hpp"

namespace capillary {

/// Oriented triangle of a convex hull. neighbor[k] is the face across the
/// directed edge (v[k], v[(k+1)%3]).
struct HullFace {
  std::array<int, 3> v;
  std::array<int, 3> neighbor;
  Vec3 normal;    // unit, outward
  double offset;  // plane equation: normal . x = offset
};

/// Convex hull of a 3D point set (incremental with conflict lists).
/// Coplanar points within tolerance are absorbed into existing faces.
/// Throws std::runtime_error when the points do not span 3-space.
std::vector<HullFace> convex_hull(const std::vector<Vec3>& points);

}  // namespace capillary
