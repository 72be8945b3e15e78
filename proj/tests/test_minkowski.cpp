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

#include "capillary/minkowski.hpp"

#include <doctest.h>

#include <random>

using namespace capillary;

namespace {

std::pair<std::vector<Vec3>, std::vector<double>> cube_measure() {
  std::vector<Vec3> normals;
  std::vector<double> weights;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vec3 u = Vec3::Zero();
      u[axis] = sign;
      normals.push_back(u);
      weights.push_back(4.0);
    }
  }
  return {normals, weights};
}

double hausdorff_vertices(const Polytope& A, const Polytope& B) {
  auto one_sided = [](const Polytope& from, const Polytope& to) {
    double worst = 0.0;
    for (const Vec3& v : from.vertices) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec3& w : to.vertices) best = std::min(best, (v - w).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(A, B), one_sided(B, A));
}

}  // namespace

TEST_CASE("cube measure recovers the unit support vector") {
  const auto [normals, weights] = cube_measure();
  const MinkowskiSolution sol = solve_minkowski(normals, weights);
  CHECK(sol.area_residual < 1e-10);
  for (double h : sol.h.values) CHECK(h == doctest::Approx(1.0).epsilon(1e-9));
  const Polytope aligned = steiner_align(sol.polytope);
  for (const Vec3& v : aligned.vertices) {
    CHECK(std::abs(std::abs(v.x()) - 1.0) < 1e-8);
    CHECK(std::abs(std::abs(v.y()) - 1.0) < 1e-8);
    CHECK(std::abs(std::abs(v.z()) - 1.0) < 1e-8);
  }
}

TEST_CASE("tetrahedron measure recovers the inradius-1 body") {
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec3> normals = {Vec3(s, s, s), Vec3(s, -s, -s),
                                     Vec3(-s, s, -s), Vec3(-s, -s, s)};
  const std::vector<double> weights(4, 6.0 * std::sqrt(3.0));
  const MinkowskiSolution sol = solve_minkowski(normals, weights);
  CHECK(sol.area_residual < 1e-10);
  for (double h : sol.h.values) CHECK(h == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform icosphere measure approximates the unit ball") {
  CapillaryConfig empty;
  empty.H = 0.5;
  double previous = 1.0;
  for (int level : {3, 4}) {
    auto mesh = std::make_shared<SphericalMesh>(icosphere(level));
    const SurfaceAreaMeasure measure =
        close_measure(build_measure(empty, mesh));
    const MinkowskiSolution sol = solve_minkowski(measure);
    double worst = 0.0;
    for (double h : sol.h.values) worst = std::max(worst, std::abs(h - 1.0));
    CHECK(worst <= 0.02);
    CHECK(worst < previous);
    previous = worst;
  }
}

TEST_CASE("solver fixed point on a random polytope") {
  std::mt19937 gen(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec3> normals;
  while (normals.size() < 40) {
    Vec3 v(normal(gen), normal(gen), normal(gen));
    if (v.norm() > 1e-3) normals.push_back(v.normalized());
  }
  std::uniform_real_distribution<double> uni(0.9, 1.1);
  SupportVector h;
  for (int i = 0; i < 40; ++i) h.values.push_back(uni(gen));
  const Polytope P = polytope_from_support(normals, h);

  // Feed the realized areas back through the solver; some facets may be
  // empty, so keep only the active ones (their closure is inherited).
  std::vector<Vec3> active_normals;
  std::vector<double> active_weights;
  for (const auto& f : P.facets) {
    if (f.area > 0.0) {
      active_normals.push_back(f.normal);
      active_weights.push_back(f.area);
    }
  }
  const MinkowskiSolution sol = solve_minkowski(active_normals, active_weights);
  const Polytope A = steiner_align(P);
  const Polytope B = steiner_align(sol.polytope);
  CHECK(hausdorff_vertices(A, B) < 1e-6 * A.diameter());
}

TEST_CASE("solutions from different initializations coincide") {
  const auto [normals, weights] = cube_measure();
  SolverOptions opts_a;
  const MinkowskiSolution a = solve_minkowski(normals, weights, opts_a);

  SolverOptions opts_b;
  opts_b.damping = 0.7;
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> uni(0.7, 1.3);
  std::vector<double> init(6);
  for (double& v : init) v = uni(gen);
  opts_b.initial_h = init;
  const MinkowskiSolution b = solve_minkowski(normals, weights, opts_b);

  const Polytope A = steiner_align(a.polytope);
  const Polytope B = steiner_align(b.polytope);
  CHECK(hausdorff_vertices(A, B) < 1e-6 * A.diameter());
}

TEST_CASE("solver preconditions") {
  auto [normals, weights] = cube_measure();
  weights[0] = 5.0;  // breaks closure
  CHECK_THROWS_AS(solve_minkowski(normals, weights), std::invalid_argument);
  weights[0] = -4.0;
  CHECK_THROWS_AS(solve_minkowski(normals, weights), std::invalid_argument);
}
