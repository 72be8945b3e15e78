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
#include <cstdint>
#include <vector>

#include "capillary/config.hpp"
#include "capillary/geometry.hpp"

namespace capillary {

/// Geodesic triangulation of the sphere minus a union of disjoint caps.
/// Triangles are counterclockwise seen from outside; boundary vertices are
/// snapped exactly onto their cap circle.
struct SphericalMesh {
  std::vector<Vec3> vertices;  // unit length
  std::vector<std::array<int, 3>> triangles;
  /// cap_tag[v] = index of the cap circle carrying vertex v, or -1.
  std::vector<int> cap_tag;
  /// One ordered vertex cycle per cap (empty when the cap has no boundary,
  /// e.g. a zero-radius cap). Oriented with the kept region on the left.
  std::vector<std::vector<int>> boundary_loops;

  double triangle_area(std::size_t t) const {
    const auto& tri = triangles[t];
    return spherical_triangle_area(vertices[tri[0]], vertices[tri[1]],
                                   vertices[tri[2]]);
  }
  /// Total spherical area covered by the triangles (Kahan-compensated).
  double total_area() const;
};

/// Full icosphere at the given subdivision depth (12 * 4^0 ... pattern:
/// 10 * 4^level + 2 vertices).
SphericalMesh icosphere(int level);

/// Triangulation of the complement of the caps B(centers[j]; sin_radii[j]).
/// Triangles fully inside a cap are removed; straddling triangles keep their
/// outside vertices and have the inside ones snapped radially (constant
/// azimuth about the cap center) onto the circle.
SphericalMesh triangulate_sphere_minus_caps(const std::vector<UnitVector>& centers,
                                            const std::vector<double>& sin_radii,
                                            int level);

/// Complement of the config's contact caps B(p_j; sin theta_j).
SphericalMesh triangulate_delta(const CapillaryConfig& config, int level);

}  // namespace capillary
