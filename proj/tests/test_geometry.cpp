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

#include <doctest.h>

#include <random>

using namespace capillary;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(20260810);
  return gen;
}

Vec3 random_unit() {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(normal(rng()), normal(rng()), normal(rng()));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Eigen::Matrix3d random_rotation() {
  const Vec3 axis = random_unit();
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  return Eigen::AngleAxisd(uni(rng()), axis).toRotationMatrix();
}

/// Monte-Carlo estimate of the first moment of the region
/// { p : lo < sin angle(p, q), ... } described by an indicator on the cap
/// band [sin_lo, sin_hi] about q (sin_lo = 0 gives the full cap).
Vec3 mc_band_moment(const Vec3& q, double sin_lo, double sin_hi, int samples) {
  const double cos_hi = std::sqrt(1.0 - sin_hi * sin_hi);
  const double cos_lo = sin_lo > 0.0 ? std::sqrt(1.0 - sin_lo * sin_lo) : 1.0;
  // Uniform sampling on the band via the cylindrical projection about q.
  std::uniform_real_distribution<double> u_cos(cos_hi, cos_lo);
  std::uniform_real_distribution<double> u_phi(0.0, 2.0 * kPi);
  Vec3 e1, e2;
  orthonormal_basis(q, e1, e2);
  Vec3 sum = Vec3::Zero();
  for (int i = 0; i < samples; ++i) {
    const double c = u_cos(rng());
    const double s = std::sqrt(1.0 - c * c);
    const double phi = u_phi(rng());
    sum += c * q + s * (std::cos(phi) * e1 + std::sin(phi) * e2);
  }
  const double band_area = 2.0 * kPi * (cos_lo - cos_hi);
  return sum * (band_area / samples);
}

}  // namespace

TEST_CASE("cap_area closed forms") {
  CHECK(cap_area(1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(cap_area(1e-9) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cap_area(std::sqrt(3.0) / 2.0) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK_THROWS_AS(cap_area(0.0), std::domain_error);
  CHECK_THROWS_AS(cap_area(1.5), std::domain_error);
}

TEST_CASE("cap_moment plugs and Monte-Carlo oracle") {
  const UnitVector z(0.0, 0.0, 1.0);
  const Vec3 m_half = cap_moment(z, 0.5);
  CHECK(m_half.x() == doctest::Approx(0.0));
  CHECK(m_half.z() == doctest::Approx(kPi / 4.0).epsilon(1e-14));
  CHECK((cap_moment(z, 1.0) - kPi * z.vec()).norm() < 1e-14);

  const Vec3 mc = mc_band_moment(z.vec(), 0.0, 0.8, 4'000'000);
  const Vec3 exact = cap_moment(z, 0.8);
  CHECK(exact.z() == doctest::Approx(0.64 * kPi).epsilon(1e-14));
  CHECK((mc - exact).norm() < 1e-3 * exact.norm() * 3.0);
}

TEST_CASE("annulus_moment plugs, degeneration and Monte-Carlo oracle") {
  const UnitVector z(0.0, 0.0, 1.0);
  const Vec3 plug = annulus_moment(z, 0.5, 0.2);
  CHECK(plug.z() == doctest::Approx(0.45 * kPi).epsilon(1e-14));

  // s -> 0 recovers the cap moment.
  const Vec3 tiny = annulus_moment(z, 0.5, 1e-12);
  CHECK((tiny - cap_moment(z, 0.5)).norm() < 1e-10);

  const Vec3 exact = annulus_moment(z, 0.6, 0.3);
  CHECK(exact.z() == doctest::Approx(0.72 * kPi).epsilon(1e-14));
  const Vec3 mc = mc_band_moment(z.vec(), 0.3, 0.9, 4'000'000);
  CHECK((mc - exact).norm() < 1e-3 * exact.norm() * 3.0);

  CHECK_THROWS_AS(annulus_moment(z, 0.8, 0.3), std::domain_error);
}

TEST_CASE("cap_moment is rotation equivariant") {
  for (int trial = 0; trial < 25; ++trial) {
    const Vec3 q = random_unit();
    const Eigen::Matrix3d R = random_rotation();
    const double r = 0.05 + 0.9 * (trial / 25.0);
    const Vec3 rotated_arg = cap_moment(UnitVector(Vec3(R * q)), r);
    const Vec3 arg_rotated = R * cap_moment(UnitVector(q), r);
    CHECK((rotated_arg - arg_rotated).norm() < 1e-13);
  }
}

TEST_CASE("spherical triangle area on an octant") {
  const Vec3 x(1, 0, 0), y(0, 1, 0), z(0, 0, 1);
  CHECK(spherical_triangle_area(x, y, z) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-14));
  // Orientation flip negates the solid angle.
  CHECK(spherical_triangle_area(x, z, y) ==
        doctest::Approx(-kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("unit vector renormalizes and rejects zero") {
  const UnitVector u(3.0, 4.0, 0.0);
  CHECK(u.vec().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(u.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVector(0.0, 0.0, 0.0), std::invalid_argument);
}
