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
#include <optional>
#include <string>
#include <vector>

#include "capillary/config.hpp"
#include "capillary/minkowski.hpp"
#include "capillary/polytope.hpp"
#include "capillary/sphere_mesh.hpp"

namespace capillary {

/// Triangle mesh of the free surface. Every vertex produced by the parallel
/// map satisfies position = generating polytope vertex + r * gauss with
/// r = 1/(2H); vertices introduced when trimming a free-boundary plane may
/// carry generator = -1 when no single patch contains them.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> gauss;     // per-vertex unit Gauss image
  std::vector<int> generator;  // polytope vertex index
  std::vector<std::array<int, 3>> triangles;
  /// boundary_tag[v]: face index of the boundary circle or cut plane
  /// carrying v, or -1 for interior vertices.
  std::vector<int> boundary_tag;
  /// Ordered boundary cycle per face (empty for faces without a contact
  /// circle, e.g. tangential contact).
  std::vector<std::vector<int>> boundary_loops;

  double area() const;  // flat-triangle area
  TriangleMesh translated(const Vec3& t) const;
};

/// Container face plane { <x, p_j> = support }.
struct ContainerPlane {
  UnitVector normal;
  double support = 0.0;
  int face = -1;
};

/// Wetted region in the container face: the outer parallel domain of the
/// contact facet. Area and perimeter are the exact offset-domain values;
/// the polygon samples the corner arcs at the mesh resolution.
struct WettedDisk {
  int face = -1;
  std::vector<Vec3> polygon;       // gamma_j, counterclockwise about p_j
  std::vector<Vec3> base_polygon;  // facet cycle translated into the plane
  double offset_distance = 0.0;    // sin(theta_j)/(2H); 0 for a cut face
  double area = 0.0;
  double perimeter = 0.0;
};

struct PipelineStats {
  double balancing_residual = 0.0;
  double closure_defect_before = 0.0;
  double closure_defect_after = 0.0;
  int solver_iterations = 0;
  double solver_area_residual = 0.0;
  int atom_count = 0;
};

struct CapillaryOutput {
  CapillaryConfig config;
  int level = 0;
  double scale = 1.0;  // 1/(2H): parallel distance and unit of all lengths
  TriangleMesh sigma;
  std::vector<ContainerPlane> planes;  // one per face
  std::vector<WettedDisk> disks;       // one per face
  Polytope polytope;  // Steiner-aligned generating body, physical scale
  SupportVector support;
  PipelineStats stats;
};

/// Maps every mesh direction u to s_P(u) + r u, where s_P(u) is the support
/// point of P (ties broken toward the lowest vertex index). Connectivity,
/// Gauss images and boundary structure are inherited from the mesh.
TriangleMesh parallel_surface(const Polytope& P, const SphericalMesh& mesh,
                              double r);

/// Planes at distance |cos theta_j|/(2H) outside the contact facet planes.
std::vector<ContainerPlane> container_planes(const Polytope& P,
                                             const CapillaryConfig& config,
                                             double scale);

/// Outer parallel polygon of contact facet j at distance sin(theta_j)/(2H),
/// lifted into the container plane. arc_step is the angular resolution of
/// the corner arcs.
WettedDisk parallel_disk(const Polytope& P, std::size_t face,
                         const CapillaryConfig& config, double scale,
                         double arc_step);

/// Doubling of a configuration with exactly one right angle: the mirrored
/// faces replace the free-boundary one, and the returned cut normal
/// halves the symmetric solution back. Doubled face order: originals
/// (minus the right-angle face) first, then their mirror images.
struct ReflectionDoubling {
  CapillaryConfig doubled;
  UnitVector cut_normal;       // the right-angle face normal
  std::size_t original_face;   // index of that face in the input
};
ReflectionDoubling reflect_double(const CapillaryConfig& config);

/// Full construction: measure, Minkowski solve, parallel surface, container
/// planes and wetted disks, all reported at physical scale (lengths times
/// 1/(2H)). Configurations with one right angle are solved by reflection
/// doubling and trimmed at the symmetry plane.
CapillaryOutput run(const CapillaryConfig& config, int level,
                    const SolverOptions& opts = {});

/// Per-face residual of the identity
///   a_j = Area(D_j) - Length(gamma_j) sin(theta_j)/(2H)
///         + pi (sin(theta_j)/(2H))^2,
/// relative to a_j.
std::vector<double> area_identity_check(const CapillaryOutput& output);

/// Free energy Area(Sigma) - sum_j cos(theta_j) Area(D_j).
double compute_energy(const CapillaryOutput& output);

struct FaceAngleStats {
  int face = -1;
  double mean_deg = 0.0;
  double max_deviation_deg = 0.0;
  int samples = 0;
};
/// Contact angle statistics measured from the boundary Gauss images:
/// theta = pi - arccos(<u, p_j>).
std::vector<FaceAngleStats> contact_angles(const CapillaryOutput& output);

/// Wavefront OBJ exports (positions, per-vertex Gauss normals, triangles).
std::string sigma_to_obj(const CapillaryOutput& output);
std::string disks_to_obj(const CapillaryOutput& output);

}  // namespace capillary
