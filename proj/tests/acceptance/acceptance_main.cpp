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

// End-to-end verification of the analytic cases and structural guarantees.
// Each numbered criterion prints one PASS/FAIL line; the exit code is the
// number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

#include "capillary/diagnostics.hpp"
#include "capillary/pipeline.hpp"

using namespace capillary;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, bool ok,
               const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const CapillaryOutput& cached_run(const std::string& demo, int level) {
  static std::map<std::pair<std::string, int>, CapillaryOutput> cache;
  const auto key = std::make_pair(demo, level);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, run(demo_config(demo), level)).first;
  }
  return it->second;
}

double mesh_diameter(const TriangleMesh& mesh) {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Vec3& v : mesh.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

char buffer[512];

void criterion_1_sphere_case() {
  const auto start = Clock::now();
  const CapillaryOutput out = run(demo_config("sphere-m1"), 5);
  const double elapsed = seconds_since(start);

  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const Vec3& v : out.sigma.vertices) {
    rmin = std::min(rmin, v.norm());
    rmax = std::max(rmax, v.norm());
  }
  const double support = out.planes[0].support;
  const double area = out.disks[0].area;
  const double perimeter = out.disks[0].perimeter;
  const bool ok = rmin >= 1.96 && rmax <= 2.04 && std::abs(support - 1.0) <=
                      0.02 &&
                  std::abs(area - 3.0 * kPi) <= 0.01 * 3.0 * kPi &&
                  std::abs(perimeter - 2.0 * kPi * std::sqrt(3.0)) <=
                      0.01 * 2.0 * kPi * std::sqrt(3.0) &&
                  elapsed < 60.0;
  std::snprintf(buffer, sizeof(buffer),
                "radius [%.4f, %.4f], plane %.4f, disk area %.6f vs %.6f, "
                "perimeter %.6f vs %.6f, %.1f s",
                rmin, rmax, support, area, 3.0 * kPi, perimeter,
                2.0 * kPi * std::sqrt(3.0), elapsed);
  criterion(1, "truncated-ball demo at level 5", ok, buffer);
}

void criterion_2_area_identity() {
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const std::string& demo : demo_names()) {
    double previous = std::numeric_limits<double>::infinity();
    for (int level : {3, 4, 5}) {
      const auto residuals = area_identity_check(cached_run(demo, level));
      const double level_worst =
          *std::max_element(residuals.begin(), residuals.end());
      if (level_worst >= previous) ok = false;  // monotone decrease
      previous = level_worst;
      if (level == 5) {
        worst = std::max(worst, level_worst);
        if (level_worst >= 0.01) ok = false;
      }
    }
  }
  std::snprintf(buffer, sizeof(buffer),
                "max level-5 residual %.2e, monotone over levels 3-5", worst);
  criterion(2, "wetted-area identity on all demos", ok, buffer);
}

void criterion_3_contact_angles() {
  bool ok = true;
  double worst_mean = 0.0, worst_dev = 0.0;
  for (const std::string& demo : demo_names()) {
    const CapillaryOutput& out = cached_run(demo, 5);
    const auto angles = contact_angles(out);
    for (const FaceAngleStats& s : angles) {
      if (s.samples == 0) continue;
      const double target =
          out.config.faces[s.face].theta * 180.0 / kPi;
      worst_mean = std::max(worst_mean, std::abs(s.mean_deg - target));
      worst_dev = std::max(worst_dev, s.max_deviation_deg);
    }
  }
  ok = worst_mean <= 0.5 && worst_dev < 1.0;
  std::snprintf(buffer, sizeof(buffer),
                "worst mean offset %.4f deg, worst deviation %.4f deg",
                worst_mean, worst_dev);
  criterion(3, "contact angles on all demos at level 5", ok, buffer);
}

void criterion_4_solver_exactness() {
  const auto start = Clock::now();
  std::vector<Vec3> cube_n;
  std::vector<double> cube_f;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vec3 u = Vec3::Zero();
      u[axis] = sign;
      cube_n.push_back(u);
      cube_f.push_back(4.0);
    }
  }
  const MinkowskiSolution cube = solve_minkowski(cube_n, cube_f);
  double cube_vertex_err = 0.0;
  const Polytope aligned = steiner_align(cube.polytope);
  for (const Vec3& v : aligned.vertices) {
    cube_vertex_err = std::max(
        cube_vertex_err, (v.cwiseAbs() - Vec3(1, 1, 1)).cwiseAbs().maxCoeff());
  }

  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Vec3> tetra_n = {Vec3(s, s, s), Vec3(s, -s, -s),
                                     Vec3(-s, s, -s), Vec3(-s, -s, s)};
  const std::vector<double> tetra_f(4, 6.0 * std::sqrt(3.0));
  const MinkowskiSolution tetra = solve_minkowski(tetra_n, tetra_f);
  double tetra_vertex_err = 0.0;
  const Polytope tetra_aligned = steiner_align(tetra.polytope);
  // The inradius-1 regular tetrahedron has vertices -3 u_k.
  for (const Vec3& u : tetra_n) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& v : tetra_aligned.vertices) {
      best = std::min(best, (v + 3.0 * u).norm());
    }
    tetra_vertex_err = std::max(tetra_vertex_err, best);
  }
  double h_err = 0.0;
  for (double h : cube.h.values) h_err = std::max(h_err, std::abs(h - 1.0));
  for (double h : tetra.h.values) h_err = std::max(h_err, std::abs(h - 1.0));

  const double elapsed = seconds_since(start);
  const bool ok = cube.area_residual < 1e-10 && tetra.area_residual < 1e-10 &&
                  cube_vertex_err < 1e-8 && tetra_vertex_err < 1e-8 &&
                  elapsed < 1.0;
  std::snprintf(buffer, sizeof(buffer),
                "residuals %.1e / %.1e, vertex errors %.1e / %.1e, max |h-1| "
                "%.1e, %.2f s",
                cube.area_residual, tetra.area_residual, cube_vertex_err,
                tetra_vertex_err, h_err, elapsed);
  criterion(4, "cube and tetrahedron recovered exactly", ok, buffer);
}

void criterion_5_gradient_oracle() {
  const auto start = Clock::now();
  std::mt19937 gen(20260810);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.9, 1.1);
  std::uniform_int_distribution<int> count_dist(10, 100);
  double worst = 0.0;
  for (int body = 0; body < 50; ++body) {
    const int count = count_dist(gen);
    std::vector<Vec3> normals;
    while (static_cast<int>(normals.size()) < count) {
      Vec3 v(gauss(gen), gauss(gen), gauss(gen));
      if (v.norm() > 1e-3) normals.push_back(v.normalized());
    }
    SupportVector h;
    for (int i = 0; i < count; ++i) h.values.push_back(uni(gen));
    const auto grad = volume_gradient(normals, h);
    const double scale = *std::max_element(grad.begin(), grad.end());
    const double delta = 1e-5;
    for (int i = 0; i < count; ++i) {
      SupportVector hp = h, hm = h;
      hp.values[i] += delta;
      hm.values[i] -= delta;
      const double fd = (polytope_from_support(normals, hp).volume -
                         polytope_from_support(normals, hm).volume) /
                        (2.0 * delta);
      worst = std::max(worst, std::abs(fd - grad[i]) / scale);
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst < 1e-5 && elapsed < 30.0;
  std::snprintf(buffer, sizeof(buffer),
                "max relative mismatch %.2e over 50 bodies, %.1f s", worst,
                elapsed);
  criterion(5, "volume gradient vs finite differences", ok, buffer);
}

void criterion_6_quadrature_convergence() {
  const CapillaryConfig demo = demo_config("equatorial-m3");
  Vec3 target = Vec3::Zero();
  for (const Face& f : demo.faces) {
    const double sin_t = std::sin(f.theta);
    target -= kPi * sin_t * sin_t * f.normal.vec();
  }
  double errors[3];
  int idx = 0;
  for (int level : {3, 4, 5}) {
    auto mesh =
        std::make_shared<SphericalMesh>(triangulate_delta(demo, level));
    const SurfaceAreaMeasure measure = build_measure(demo, mesh);
    errors[idx++] = (measure.smooth_moment() - target).norm();
  }
  const bool ok = errors[1] <= 0.5 * errors[0] && errors[2] <= 0.5 * errors[1];
  std::snprintf(buffer, sizeof(buffer), "moment errors %.3e -> %.3e -> %.3e",
                errors[0], errors[1], errors[2]);
  criterion(6, "smooth-moment error halves per level", ok, buffer);
}

void criterion_7_uniqueness() {
  bool ok = true;
  std::string detail;
  for (const std::string& demo : demo_names()) {
    const double d = verify_uniqueness(demo_config(demo), 4);
    const double diameter = mesh_diameter(cached_run(demo, 4).sigma);
    if (!(d < 1e-3 * diameter)) ok = false;
    std::snprintf(buffer, sizeof(buffer), "%s %.1e/%.1f ", demo.c_str(), d,
                  diameter);
    detail += buffer;
  }
  criterion(7, "uniqueness across solver initializations", ok, detail);
}

void criterion_8_symmetry() {
  const CapillaryOutput& m3 = cached_run("equatorial-m3", 5);
  TriangleMesh mirrored = m3.sigma;
  for (Vec3& v : mirrored.vertices) v.z() = -v.z();
  for (auto& tri : mirrored.triangles) std::swap(tri[1], tri[2]);
  const double d = hausdorff_distance(m3.sigma, mirrored);
  const double diameter = mesh_diameter(m3.sigma);

  const CapillaryOutput& right = cached_run("rightangle-m2", 5);
  const auto angles = contact_angles(right);
  const double right_angle = angles[1].mean_deg;
  const double right_dev = angles[1].max_deviation_deg;

  const bool ok = d < 1e-3 * diameter && std::abs(right_angle - 90.0) <= 1.0 &&
                  right_dev <= 1.0;
  std::snprintf(buffer, sizeof(buffer),
                "mirror hausdorff %.2e (diameter %.2f), right angle %.3f deg "
                "(max dev %.3f)",
                d, diameter, right_angle, right_dev);
  criterion(8, "symmetry induction and the right-angle demo", ok, buffer);
}

void criterion_9_patch_radii() {
  bool ok = true;
  double worst = 0.0;
  int trimmed = 0;
  for (const std::string& demo : demo_names()) {
    const CapillaryOutput& out = cached_run(demo, 5);
    const MeanCurvatureCheck check =
        verify_mean_curvature(out.sigma, out.config.H);
    worst = std::max(worst, check.patch_radius_max_rel_error);
    for (int g : out.sigma.generator) {
      if (g < 0) ++trimmed;
    }
  }
  ok = worst <= 1e-12;
  std::snprintf(buffer, sizeof(buffer),
                "max relative radius error %.2e (%d seam vertices excluded)",
                worst, trimmed);
  criterion(9, "parallel patches lie on exact spheres", ok, buffer);
}

int run_cli(const std::string& arguments) {
  const std::string command =
      std::string(CAPILLARY_CLI_PATH) + " " + arguments + " > /dev/null 2>&1";
  return WEXITSTATUS(std::system(command.c_str()));
}

void criterion_10_check_gate() {
  const std::string dir = "/tmp/capillary_acceptance";
  std::system(("mkdir -p " + dir).c_str());
  auto write = [&](const std::string& name, const std::string& content) {
    FILE* f = std::fopen((dir + "/" + name).c_str(), "w");
    std::fputs(content.c_str(), f);
    std::fclose(f);
    return dir + "/" + name;
  };
  const std::string pair = write("pair.json",
                                 R"({"H": 0.5, "faces": [
        {"p": [0, 0, 1], "theta_deg": 135, "a": 1.0},
        {"p": [1, 0, 0], "theta_deg": 135, "a": 1.0}]})");
  const std::string overlap = write("overlap.json",
                                    R"({"H": 0.5, "faces": [
        {"p": [0, 0, 1], "theta_deg": 120, "a": 2.356194490192345},
        {"p": [0.7071067811865476, 0, 0.7071067811865476], "theta_deg": 120,
         "a": 2.356194490192345}]})");
  const std::string unbalanced = write("unbalanced.json",
                                       R"({"H": 0.5, "faces": [
        {"p": [0, 0, 1], "theta_deg": 120, "a": 2.0}]})");
  const int a = run_cli("check --config " + pair);
  const int b = run_cli("check --config " + overlap);
  const int c = run_cli("check --config " + unbalanced);
  const int good = run_cli("check --demo sphere-m1");
  const bool ok = a == 1 && b == 1 && c == 1 && good == 0;
  std::snprintf(buffer, sizeof(buffer),
                "exit codes: forced-pair %d, overlap %d, unbalanced %d, "
                "valid %d",
                a, b, c, good);
  criterion(10, "necessary-condition gate in the checker", ok, buffer);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1_sphere_case();
  criterion_2_area_identity();
  criterion_3_contact_angles();
  criterion_4_solver_exactness();
  criterion_5_gradient_oracle();
  criterion_6_quadrature_convergence();
  criterion_7_uniqueness();
  criterion_8_symmetry();
  criterion_9_patch_radii();
  criterion_10_check_gate();
  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
