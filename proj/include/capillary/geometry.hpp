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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capillary {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kUnitTol = 1e-12;

/// Direction on the unit sphere. Renormalized on construction; rejects
/// near-zero input.
class UnitVector {
 public:
  UnitVector() : v_(0.0, 0.0, 1.0) {}
  explicit UnitVector(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 1e-14)) {
      throw std::invalid_argument("UnitVector: zero-length direction");
    }
    v_ = v / n;
  }
  UnitVector(double x, double y, double z) : UnitVector(Vec3(x, y, z)) {}

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }

  double dot(const UnitVector& o) const { return v_.dot(o.v_); }
  double dot(const Vec3& o) const { return v_.dot(o); }

  /// Spherical angle to another direction, in [0, pi].
  double angle_to(const UnitVector& o) const {
    // atan2 form is stable for nearly parallel and nearly antipodal pairs.
    return std::atan2(v_.cross(o.v_).norm(), v_.dot(o.v_));
  }

 private:
  Vec3 v_;
};

/// Area of the spherical cap B(q; r) with sin-radius r in (0, 1]:
/// 2*pi*(1 - sqrt(1 - r^2)).
double cap_area(double r);

/// First moment of the cap B(q; r): pi * r^2 * q.
Vec3 cap_moment(const UnitVector& q, double r);

/// First moment of the geodesic annulus A(q; r, s) between sin-radii s and
/// r + s: pi * (r^2 + 2 r s) * q. Requires r > 0, s > 0, r + s < 1.
Vec3 annulus_moment(const UnitVector& q, double r, double s);

/// Solid angle (spherical area) of the geodesic triangle with unit vertices
/// a, b, c, signed by orientation (positive for counterclockwise seen from
/// outside).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Deterministic right-handed orthonormal frame (e1, e2) completing n.
void orthonormal_basis(const Vec3& n, Vec3& e1, Vec3& e2);

/// Reflection across the plane through the origin with unit normal n.
inline Vec3 reflect(const Vec3& v, const Vec3& n) {
  return v - 2.0 * v.dot(n) * n;
}

}  // namespace capillary
