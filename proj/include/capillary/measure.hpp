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

#include <memory>
#include <vector>

#include "capillary/config.hpp"
#include "capillary/sphere_mesh.hpp"

namespace capillary {

enum class AtomKind { SmoothQuadrature, FaceDirac };

struct MeasureAtom {
  Vec3 direction;  // unit
  double weight = 0.0;
  AtomKind kind = AtomKind::SmoothQuadrature;
  int face = -1;  // for FaceDirac atoms
};

/// Discrete surface-area measure on the sphere of normals: quadrature atoms
/// for the Lebesgue part off the contact caps plus one Dirac atom per face.
/// Weights are at the normalized scale H = 1/2 (face weights carry the
/// factor (2H)^2).
struct SurfaceAreaMeasure {
  std::vector<MeasureAtom> atoms;
  std::shared_ptr<const SphericalMesh> source_mesh;

  double total_weight() const;
  double smooth_weight() const;
  /// sum_i f_i u_i over all atoms; zero for a closed measure.
  Vec3 moment() const;
  Vec3 smooth_moment() const;
};

/// Vertex-lumped quadrature of the Lebesgue measure on the mesh (one third
/// of each incident triangle's spherical area per vertex) plus the Dirac
/// atoms (p_j, a_j (2H)^2).
SurfaceAreaMeasure build_measure(const CapillaryConfig& config,
                                 std::shared_ptr<const SphericalMesh> mesh);

/// Finite-n approximating measure used for convergence studies: unit density
/// outside the enlarged caps B(p_j; sin theta_j + 1/n), unit density on the
/// collar between sin-radii sin theta_j and sin theta_j + 1/n (whose exact
/// first moment is pi (1/n^2 + 2 sin theta_j / n) p_j, realized here by
/// rings that reproduce band masses and moments exactly), and one atom
/// (p_j, a_j (2H)^2) for the shrinking cap B(p_j; 1/n).
SurfaceAreaMeasure build_sequence_measure(const CapillaryConfig& config, int n,
                                          int level);

/// Least-squares projection of the smooth weights enforcing
/// sum f_i u_i = 0 at working precision. Dirac atoms are never touched.
/// Requires the incoming defect to be at most 1% of the total weight and
/// the corrected weights to stay positive.
SurfaceAreaMeasure close_measure(const SurfaceAreaMeasure& measure);

/// Conditioning pass before solving. Cap clipping can lump nearly-zero
/// sliver weights onto boundary vertices, and a Dirac direction can collide
/// with a quadrature vertex; both make the reconstruction ill-posed at the
/// atom scale. Smooth atoms below floor_fraction of the mean smooth weight
/// are merged pairwise into their nearest smooth neighbor, and smooth atoms
/// duplicating a Dirac direction are redistributed over surrounding atoms
/// with positive coefficients. Every rewrite preserves the first moment
/// exactly; Dirac atoms are never touched.
SurfaceAreaMeasure consolidate_measure(const SurfaceAreaMeasure& measure,
                                       double floor_fraction = 0.02);

}  // namespace capillary
