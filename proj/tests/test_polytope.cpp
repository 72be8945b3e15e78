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

#include "capillary/polytope.hpp"

#include <doctest.h>

#include <random>
#include <set>

#include "capillary/sphere_mesh.hpp"

using namespace capillary;

namespace {

std::vector<Vec3> cube_normals() {
  std::vector<Vec3> n;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vec3 u = Vec3::Zero();
      u[axis] = sign;
      n.push_back(u);
    }
  }
  return n;
}

std::vector<Vec3> tetra_normals() {
  const double s = 1.0 / std::sqrt(3.0);
  return {Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)};
}

SupportVector ones(std::size_t n) {
  SupportVector h;
  h.values.assign(n, 1.0);
  return h;
}

std::vector<Vec3> random_normals(std::mt19937& gen, int count) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec3> out;
  while (static_cast<int>(out.size()) < count) {
    Vec3 v(normal(gen), normal(gen), normal(gen));
    if (v.norm() < 1e-3) continue;
    out.push_back(v.normalized());
  }
  return out;
}

}  // namespace

TEST_CASE("cube from support numbers") {
  const auto normals = cube_normals();
  const Polytope P = polytope_from_support(normals, ones(6));
  CHECK(P.vertices.size() == 8);
  for (const Vec3& v : P.vertices) {
    CHECK(std::abs(std::abs(v.x()) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(v.y()) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(v.z()) - 1.0) < 1e-12);
  }
  for (const auto& f : P.facets) {
    CHECK(f.area == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(f.vertex_cycle.size() == 4);
  }
  CHECK(P.volume == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(P.volume_support == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("octahedral normals give the cross-polytope") {
  std::vector<Vec3> normals;
  const double s = 1.0 / std::sqrt(3.0);
  for (double x : {-s, s}) {
    for (double y : {-s, s}) {
      for (double z : {-s, s}) normals.push_back(Vec3(x, y, z));
    }
  }
  const Polytope P = polytope_from_support(normals, ones(8));
  CHECK(P.vertices.size() == 6);
  CHECK(P.volume == doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-10));
  for (const auto& f : P.facets) {
    CHECK(f.vertex_cycle.size() == 3);
    CHECK(f.area == doctest::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-10));
  }
}

TEST_CASE("redundant halfspace leaves an empty facet") {
  auto normals = cube_normals();
  normals.push_back(Vec3(0, 0, 1));
  SupportVector h = ones(7);
  h.values[6] = 5.0;
  const Polytope P = polytope_from_support(normals, h);
  CHECK(P.facets[6].area == 0.0);
  CHECK(P.facets[6].vertex_cycle.empty());
  CHECK(P.volume == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("regular tetrahedron areas match the vertex-built oracle") {
  const auto normals = tetra_normals();
  // Oracle: the inradius-1 regular tetrahedron has vertices -3 u_k. Its
  // facet areas follow from the cross product, independent of the hull code.
  std::vector<Vec3> verts;
  for (const Vec3& u : normals) verts.push_back(-3.0 * u);
  const Vec3 e1 = verts[1] - verts[0];
  const Vec3 e2 = verts[2] - verts[0];
  const double oracle_area = 0.5 * e1.cross(e2).norm();

  const Polytope P = polytope_from_support(normals, ones(4));
  for (const auto& f : P.facets) {
    CHECK(f.area == doctest::Approx(oracle_area).epsilon(1e-12));
    CHECK(f.area == doctest::Approx(6.0 * std::sqrt(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("translation leaves facet areas unchanged") {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> uni(-0.15, 0.15);
  for (int trial = 0; trial < 8; ++trial) {
    const auto normals = random_normals(gen, 30);
    SupportVector h = ones(30);
    for (double& v : h.values) v += uni(gen);
    const Polytope P = polytope_from_support(normals, h);
    const Vec3 t(uni(gen), uni(gen), uni(gen));
    SupportVector shifted = h;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      shifted.values[i] += normals[i].dot(t);
    }
    const Polytope Q = polytope_from_support(normals, shifted);
    const auto a0 = P.areas();
    const auto a1 = Q.areas();
    const double scale = *std::max_element(a0.begin(), a0.end());
    for (std::size_t i = 0; i < a0.size(); ++i) {
      CHECK(std::abs(a0[i] - a1[i]) < 1e-10 * scale);
    }
  }
}

TEST_CASE("structural invariants on random bodies") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uni(0.85, 1.15);
  for (int trial = 0; trial < 10; ++trial) {
    const int count = 10 + trial * 9;
    const auto normals = random_normals(gen, count);
    SupportVector h;
    for (int i = 0; i < count; ++i) h.values.push_back(uni(gen));
    const Polytope P = polytope_from_support(normals, h);

    // Convexity: every vertex obeys every halfspace.
    double scale = 0.0;
    for (double v : h.values) scale = std::max(scale, v);
    for (const Vec3& v : P.vertices) {
      for (std::size_t i = 0; i < normals.size(); ++i) {
        CHECK(v.dot(normals[i]) <= h.values[i] + 1e-9 * scale);
      }
    }

    // Euler relation on the nonempty-facet graph.
    std::size_t F = 0;
    std::set<std::pair<int, int>> edge_set;
    std::set<int> vertex_set;
    for (const auto& f : P.facets) {
      if (f.vertex_cycle.empty()) continue;
      ++F;
      for (std::size_t k = 0; k < f.vertex_cycle.size(); ++k) {
        const int a = f.vertex_cycle[k];
        const int b = f.vertex_cycle[(k + 1) % f.vertex_cycle.size()];
        edge_set.insert(std::minmax(a, b));
        vertex_set.insert(a);
      }
    }
    CHECK(static_cast<long>(vertex_set.size()) -
              static_cast<long>(edge_set.size()) + static_cast<long>(F) ==
          2);

    // Volume identity and Minkowski closure.
    CHECK(std::abs(P.volume - P.volume_support) <=
          1e-9 * std::abs(P.volume_support));
    CHECK(P.area_moment().norm() <= 1e-9 * P.total_area());
  }
}

TEST_CASE("volume gradient equals facet areas (finite differences)") {
  SUBCASE("cube, single coordinate") {
    const auto normals = cube_normals();
    const double delta = 1e-5;
    SupportVector hp = ones(6), hm = ones(6);
    hp.values[0] += delta;
    hm.values[0] -= delta;
    const double fd = (polytope_from_support(normals, hp).volume -
                       polytope_from_support(normals, hm).volume) /
                      (2.0 * delta);
    CHECK(std::abs(fd - 4.0) < 1e-4);
  }

  SUBCASE("random 20-normal body, full gradient") {
    std::mt19937 gen(11);
    const auto normals = random_normals(gen, 20);
    std::uniform_real_distribution<double> uni(0.9, 1.1);
    SupportVector h;
    for (int i = 0; i < 20; ++i) h.values.push_back(uni(gen));
    const auto grad = volume_gradient(normals, h);
    const double delta = 1e-5;
    const double scale = *std::max_element(grad.begin(), grad.end());
    for (int i = 0; i < 20; ++i) {
      SupportVector hp = h, hm = h;
      hp.values[i] += delta;
      hm.values[i] -= delta;
      const double fd = (polytope_from_support(normals, hp).volume -
                         polytope_from_support(normals, hm).volume) /
                        (2.0 * delta);
      CHECK(std::abs(fd - grad[i]) < 1e-5 * scale);
    }
  }

  SUBCASE("empty facet has zero gradient") {
    auto normals = cube_normals();
    normals.push_back(Vec3(0, 0, 1));
    SupportVector h = ones(7);
    h.values[6] = 3.0;
    CHECK(volume_gradient(normals, h)[6] == 0.0);
  }
}

TEST_CASE("steiner alignment") {
  const auto normals = cube_normals();
  const Polytope cube = polytope_from_support(normals, ones(6));
  CHECK(steiner_point(cube).norm() < 1e-13);
  const Polytope shifted = cube.translated(Vec3(1, 2, 3));
  const Polytope back = steiner_align(shifted);
  CHECK(steiner_point(back).norm() < 1e-12);
  for (std::size_t v = 0; v < cube.vertices.size(); ++v) {
    CHECK((back.vertices[v] - cube.vertices[v]).norm() < 1e-12);
  }
  const Polytope twice = steiner_align(back);
  for (std::size_t v = 0; v < back.vertices.size(); ++v) {
    CHECK((twice.vertices[v] - back.vertices[v]).norm() < 1e-13);
  }
  // Areas and volume are translation invariant.
  CHECK(back.volume == doctest::Approx(cube.volume));
}

TEST_CASE("degenerate inputs are rejected") {
  // Normals in a plane leave the intersection unbounded.
  std::vector<Vec3> planar = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0),
                              Vec3(0, -1, 0)};
  CHECK_THROWS_AS(polytope_from_support(planar, ones(4)), std::runtime_error);

  SupportVector bad = ones(6);
  bad.values[2] = -0.5;
  CHECK_THROWS_AS(polytope_from_support(cube_normals(), bad),
                  std::runtime_error);
}

TEST_CASE("OFF export lists vertices and cycles") {
  const Polytope cube = polytope_from_support(cube_normals(), ones(6));
  const std::string off = to_off(cube);
  CHECK(off.substr(0, 4) == "OFF\n");
  CHECK(off.find("8 6 12") != std::string::npos);
}
