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

#include <string>
#include <vector>

#include "capillary/geometry.hpp"

namespace capillary {

/// Support numbers over a fixed list of atom normals; the represented body
/// is L(h) = { x : <x, u_i> <= h_i }.
struct SupportVector {
  std::vector<double> values;
};

struct PolytopeFacet {
  Vec3 normal;      // atom direction
  double support;   // h_i
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  std::vector<int> vertex_cycle;  // counterclockwise from outside; empty when
                                  // the halfspace is redundant
  int atom_index = -1;
};

/// Edge between two nonempty facets. Zero-length entries (several facets
/// meeting at one vertex) are dropped.
struct PolytopeEdge {
  int facet_a = -1;
  int facet_b = -1;
  int v0 = -1;
  int v1 = -1;
  double length = 0.0;
};

struct Polytope {
  std::vector<Vec3> vertices;
  std::vector<PolytopeFacet> facets;  // one per atom, possibly empty
  std::vector<PolytopeEdge> edges;
  double volume = 0.0;       // from the tetrahedral fan decomposition
  double volume_support = 0.0;  // (1/3) sum h_i A_i, for cross-checking

  std::vector<double> areas() const;
  double total_area() const;
  Vec3 area_moment() const;  // sum A_i u_i, ~0 by Minkowski closure
  double diameter() const;

  /// Support function h(u) = max_v <v, u> evaluated on the vertex set.
  double support(const Vec3& direction) const;
  /// Index of the vertex attaining the support in the given direction,
  /// ties broken toward the lowest index.
  int support_point(const Vec3& direction) const;

  Polytope translated(const Vec3& t) const;
  Polytope scaled(double factor) const;
};

/// Halfspace intersection for positive support numbers (origin interior)
/// over at least four normals spanning 3-space, computed through the polar
/// dual hull of the points u_i / h_i. Facets meeting in more than three
/// planes are merged within tolerance.
Polytope polytope_from_support(const std::vector<Vec3>& normals,
                               const SupportVector& h);

/// Per-atom facet areas of L(h); the gradient of the volume with respect to
/// the support numbers.
std::vector<double> facet_areas(const Polytope& P);
std::vector<double> volume_gradient(const std::vector<Vec3>& normals,
                                    const SupportVector& h);

/// Area-weighted mean of the facet centroids; the translation gauge used
/// for all reported geometry.
Vec3 steiner_point(const Polytope& P);
/// Translates the body so its Steiner point sits at the origin.
Polytope steiner_align(const Polytope& P);

/// OFF-format export (vertex coordinates plus the nonempty facet cycles).
std::string to_off(const Polytope& P);

}  // namespace capillary
