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

#include "capillary/geometry.hpp"

namespace capillary {

double cap_area(double r) {
  if (!(r > 0.0) || !(r <= 1.0)) {
    throw std::domain_error("cap_area: sin-radius must lie in (0, 1]");
  }
  return 2.0 * kPi * (1.0 - std::sqrt(1.0 - r * r));
}

Vec3 cap_moment(const UnitVector& q, double r) {
  if (!(r > 0.0) || !(r <= 1.0)) {
    throw std::domain_error("cap_moment: sin-radius must lie in (0, 1]");
  }
  return kPi * r * r * q.vec();
}

Vec3 annulus_moment(const UnitVector& q, double r, double s) {
  if (!(r > 0.0) || !(s > 0.0) || !(r + s < 1.0)) {
    throw std::domain_error("annulus_moment: need r > 0, s > 0, r + s < 1");
  }
  return kPi * (r * r + 2.0 * r * s) * q.vec();
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  // Van Oosterom-Strackee solid-angle formula; exact up to rounding for
  // unit-length inputs and robust for small triangles.
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

void orthonormal_basis(const Vec3& n, Vec3& e1, Vec3& e2) {
  // Seed with the coordinate axis least aligned with n.
  int k = 0;
  if (std::abs(n.y()) < std::abs(n[k])) k = 1;
  if (std::abs(n.z()) < std::abs(n[k])) k = 2;
  Vec3 seed = Vec3::Zero();
  seed[k] = 1.0;
  e1 = (seed - seed.dot(n) * n).normalized();
  e2 = n.cross(e1);
}

}  // namespace capillary
