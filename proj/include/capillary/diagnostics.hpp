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

#include <optional>
#include <string>
#include <vector>

#include "capillary/pipeline.hpp"

namespace capillary {

struct FaceDiagnostics {
  int face = -1;
  double theta_deg = 0.0;
  double contact_angle_mean_deg = 0.0;
  double contact_angle_max_dev_deg = 0.0;
  int contact_samples = 0;
  double area_identity_residual = 0.0;
  double disk_area = 0.0;
  double disk_perimeter = 0.0;
  double plane_support = 0.0;
  double boundary_gap = 0.0;  // loop-to-wetted-boundary distance
  bool unduloid_flag = false;
};

/// Aggregated verification results for one pipeline output. Serializes
/// deterministically (fixed key order, 17 significant digits).
struct DiagnosticsReport {
  double H = 0.0;
  int level = 0;
  double scale = 0.0;
  double balancing_residual = 0.0;
  double closure_defect_before = 0.0;
  double closure_defect_after = 0.0;
  int atom_count = 0;
  int solver_iterations = 0;
  double solver_area_residual = 0.0;
  double sigma_area = 0.0;
  int sigma_vertices = 0;
  int sigma_triangles = 0;
  double energy = 0.0;
  double convexity_violation = 0.0;
  double patch_radius_max_rel_error = 0.0;
  double cotan_mean_curvature = 0.0;
  int cotan_samples = 0;
  std::vector<FaceDiagnostics> faces;
  std::optional<double> hausdorff_uniqueness;
  std::optional<double> hausdorff_symmetry;
};

/// Maximum depth of any point below the boundary of the convex hull of the
/// set (0 for points in exactly convex position).
double verify_convexity(const std::vector<Vec3>& points);
/// Composite check over the free surface and the wetted disks.
double verify_convexity(const CapillaryOutput& output);

struct MeanCurvatureCheck {
  double patch_radius_max_rel_error = 0.0;
  double cotan_mean = 0.0;  // discrete estimate, interior vertices
  int cotan_samples = 0;
};
/// The defining invariant (every patch vertex at distance exactly 1/(2H)
/// from its generating polytope vertex) plus an independent cotangent
/// Laplacian estimate of the mean curvature.
MeanCurvatureCheck verify_mean_curvature(const TriangleMesh& sigma, double H);

/// Symmetric vertex-to-triangle Hausdorff distance between two meshes.
double hausdorff_distance(const TriangleMesh& a, const TriangleMesh& b);

/// Runs the pipeline twice with independent solver initializations and
/// returns the Hausdorff distance of the aligned surfaces.
double verify_uniqueness(const CapillaryConfig& config, int level,
                         const SolverOptions& first = {},
                         std::optional<SolverOptions> second = std::nullopt);

/// Hausdorff distance between the output surface and its mirror image,
/// given a reflection plane normal and the matching face permutation.
/// Throws when the configuration is not invariant under that symmetry.
double verify_symmetry(const CapillaryConfig& config, int level,
                       const UnitVector& plane_normal,
                       const std::vector<std::size_t>& permutation,
                       const SolverOptions& opts = {});

struct ReflectionSymmetry {
  UnitVector plane_normal;
  std::vector<std::size_t> permutation;
};
/// Reflection symmetries of the configuration data, searched over the
/// normals' pairwise bisector planes and coordinate-ish candidates.
std::vector<ReflectionSymmetry> detect_symmetries(const CapillaryConfig& config);

/// Full report for one output (no cross-run fields).
DiagnosticsReport build_report(const CapillaryOutput& output);

std::string report_to_json(const DiagnosticsReport& report);

}  // namespace capillary
