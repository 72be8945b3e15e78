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

/// One container face: outward unit normal, contact angle (radians) and the
/// prescribed wetted-area weight.
struct Face {
  UnitVector normal;
  double theta = 0.0;  // radians, in (pi/2, pi); pi/2 and pi behind flags
  double area = 0.0;   // a_j > 0, in squared length units
};

struct ConfigFlags {
  bool allow_theta_pi = false;       // tangential contact, experimental
  bool allow_theta_half_pi = false;  // one free-boundary face, via doubling
};

/// Input data of the construction: mean curvature H and per-face
/// (p_j, theta_j, a_j). Angles near pi/2 or pi are detected within
/// kAngleSnapTol and treated exactly.
struct CapillaryConfig {
  double H = 0.5;
  std::vector<Face> faces;
  ConfigFlags flags;

  static constexpr double kAngleSnapTol = 1e-12;

  std::size_t size() const { return faces.size(); }

  /// Sin-radius of the spherical cap excluded around face j.
  double cap_sin_radius(std::size_t j) const { return std::sin(faces[j].theta); }
  /// Angular radius pi - theta_j of that cap.
  double cap_angular_radius(std::size_t j) const { return kPi - faces[j].theta; }

  bool has_half_pi_face() const;
  std::size_t half_pi_face_index() const;  // throws when absent
};

/// Residual of the balancing condition,
///   sum_j (a_j - pi/(4H^2) sin^2 theta_j) p_j.
/// Linear in the a_j and equivariant under global rotations.
Vec3 check_balancing(const CapillaryConfig& config);

/// Structural validation: positive H and areas, angle ranges (flags
/// permitting the closed endpoints), pairwise disjoint closed caps
/// (tangency tolerated), and the forced values of a_j when the geometry
/// determines them (m = 1, and m = 2 with non-antipodal normals).
/// Throws std::invalid_argument with a diagnostic message on failure.
void validate(const CapillaryConfig& config);

/// True when validate() accepts and the balancing residual is within tol.
bool is_balanced(const CapillaryConfig& config, double tol = 1e-9);

/// Minimum-norm correction of the a_j restoring the balancing condition.
/// Throws std::runtime_error if positivity of the areas cannot be kept.
CapillaryConfig repair_areas(const CapillaryConfig& config);

/// JSON codec. Angles are degrees on disk, radians in memory; normals are
/// renormalized on read.
CapillaryConfig config_from_json(const std::string& text);
CapillaryConfig load_config(const std::string& path);
std::string config_to_json(const CapillaryConfig& config);

/// Built-in configurations: sphere-m1, antipodal-m2, equatorial-m3,
/// tetrahedral-m4, rightangle-m2.
CapillaryConfig demo_config(const std::string& name);
std::vector<std::string> demo_names();

}  // namespace capillary
