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

#include "capillary/sphere_mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace capillary {

namespace {

constexpr double kDegenerateArea = 1e-14;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

double SphericalMesh::total_area() const {
  double sum = 0.0, comp = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const double y = triangle_area(t) - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

SphericalMesh icosphere(int level) {
  if (level < 0) throw std::invalid_argument("icosphere: level must be >= 0");

  SphericalMesh mesh;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double raw[12][3] = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (const auto& v : raw) {
    mesh.vertices.push_back(Vec3(v[0], v[1], v[2]).normalized());
  }
  int faces[20][3] = {{0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10},
                      {0, 10, 11}, {1, 5, 9},  {5, 11, 4},  {11, 10, 2},
                      {10, 7, 6},  {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                      {3, 2, 6},   {3, 6, 8},  {3, 8, 9},   {4, 9, 5},
                      {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (auto& f : faces) {
    // Enforce outward counterclockwise orientation.
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    if (a.dot((b - a).cross(c - a)) < 0.0) std::swap(f[1], f[2]);
    mesh.triangles.push_back({f[0], f[1], f[2]});
  }

  for (int step = 0; step < level; ++step) {
    std::unordered_map<std::uint64_t, int> midpoint;
    midpoint.reserve(mesh.triangles.size() * 2);
    auto mid = [&](int a, int b) {
      const std::uint64_t key = edge_key(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(
          (mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(mesh.triangles.size() * 4);
    for (const auto& tri : mesh.triangles) {
      const int ab = mid(tri[0], tri[1]);
      const int bc = mid(tri[1], tri[2]);
      const int ca = mid(tri[2], tri[0]);
      refined.push_back({tri[0], ab, ca});
      refined.push_back({tri[1], bc, ab});
      refined.push_back({tri[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(refined);
  }

  mesh.cap_tag.assign(mesh.vertices.size(), -1);
  return mesh;
}

namespace {

/// Moves v onto the circle of angular radius alpha about center, keeping its
/// azimuth. The fallback direction handles vertices at the cap center.
Vec3 snap_to_circle(const Vec3& v, const Vec3& center, double alpha,
                    const Vec3& fallback) {
  Vec3 tangential = v - v.dot(center) * center;
  double norm = tangential.norm();
  if (norm < 1e-12) {
    tangential = fallback - fallback.dot(center) * center;
    norm = tangential.norm();
    if (norm < 1e-12) {
      Vec3 e1, e2;
      orthonormal_basis(center, e1, e2);
      tangential = e1;
      norm = 1.0;
    }
  }
  return std::cos(alpha) * center + std::sin(alpha) * (tangential / norm);
}

std::vector<std::vector<int>> extract_boundary_loops(
    const SphericalMesh& mesh, std::size_t cap_count) {
  // Directed boundary edges: edges used by exactly one triangle, traversed
  // in triangle order so the kept region stays on the left.
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      edge_use[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  std::map<int, int> next;  // directed boundary edge a -> b
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      if (edge_use[{std::min(a, b), std::max(a, b)}] == 1) {
        next[a] = b;
      }
    }
  }

  std::vector<std::vector<int>> loops(cap_count);
  std::vector<std::vector<int>> raw_loops;
  std::map<int, bool> visited;
  for (const auto& [start, unused] : next) {
    if (visited[start]) continue;
    std::vector<int> loop;
    int v = start;
    while (!visited[v]) {
      visited[v] = true;
      loop.push_back(v);
      auto it = next.find(v);
      if (it == next.end()) break;  // open chain, should not happen
      v = it->second;
    }
    raw_loops.push_back(std::move(loop));
  }
  for (auto& loop : raw_loops) {
    // Classify by majority vertex tag; at cap tangencies a stray vertex of
    // the other circle cannot flip the majority.
    std::vector<int> votes(cap_count, 0);
    for (int v : loop) {
      if (mesh.cap_tag[v] >= 0) votes[mesh.cap_tag[v]]++;
    }
    const int cap = static_cast<int>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    // Deterministic start: smallest vertex index.
    const auto smallest = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), smallest, loop.end());
    if (loops[cap].empty() || loop.size() > loops[cap].size()) {
      loops[cap] = std::move(loop);
    }
  }
  return loops;
}

}  // namespace

SphericalMesh triangulate_sphere_minus_caps(
    const std::vector<UnitVector>& centers, const std::vector<double>& sin_radii,
    int level) {
  if (centers.size() != sin_radii.size()) {
    throw std::invalid_argument("triangulate: centers/radii size mismatch");
  }
  SphericalMesh full = icosphere(level);
  const std::size_t m = centers.size();

  std::vector<double> cos_alpha(m);
  std::vector<double> alpha(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (sin_radii[j] < 0.0 || sin_radii[j] >= 1.0) {
      throw std::invalid_argument("triangulate: sin-radius must lie in [0, 1)");
    }
    alpha[j] = std::asin(sin_radii[j]);
    cos_alpha[j] = std::sqrt(1.0 - sin_radii[j] * sin_radii[j]);
  }

  // A vertex lies in at most one open cap since the closed caps are disjoint.
  std::vector<int> inside(full.vertices.size(), -1);
  for (std::size_t v = 0; v < full.vertices.size(); ++v) {
    for (std::size_t j = 0; j < m; ++j) {
      if (sin_radii[j] <= 0.0) continue;
      if (full.vertices[v].dot(centers[j].vec()) > cos_alpha[j]) {
        inside[v] = static_cast<int>(j);
        break;
      }
    }
  }

  std::vector<char> keep(full.triangles.size(), 1);
  for (std::size_t t = 0; t < full.triangles.size(); ++t) {
    const auto& tri = full.triangles[t];
    if (inside[tri[0]] >= 0 && inside[tri[1]] >= 0 && inside[tri[2]] >= 0) {
      keep[t] = 0;
    }
  }

  // Snap interior vertices of kept triangles onto their cap circle.
  std::vector<char> used(full.vertices.size(), 0);
  for (std::size_t t = 0; t < full.triangles.size(); ++t) {
    if (!keep[t]) continue;
    for (int k = 0; k < 3; ++k) used[full.triangles[t][k]] = 1;
  }
  std::vector<int> tag(full.vertices.size(), -1);
  for (std::size_t v = 0; v < full.vertices.size(); ++v) {
    if (!used[v]) continue;
    const int j = inside[v];
    if (j < 0) continue;
    // Fallback azimuth from the cap center's frame only matters for a vertex
    // sitting exactly on the center, which a kept triangle cannot contain at
    // sane levels.
    full.vertices[v] = snap_to_circle(full.vertices[v], centers[j].vec(),
                                      alpha[j], full.vertices[(v + 1) % full.vertices.size()]);
    tag[v] = j;
  }

  // Drop triangles that became degenerate or whose interior fell inside a cap.
  for (std::size_t t = 0; t < full.triangles.size(); ++t) {
    if (!keep[t]) continue;
    const auto& tri = full.triangles[t];
    const double area = spherical_triangle_area(
        full.vertices[tri[0]], full.vertices[tri[1]], full.vertices[tri[2]]);
    if (area <= kDegenerateArea) {
      keep[t] = 0;
      continue;
    }
    const Vec3 centroid = (full.vertices[tri[0]] + full.vertices[tri[1]] +
                           full.vertices[tri[2]])
                              .normalized();
    for (std::size_t j = 0; j < m; ++j) {
      if (sin_radii[j] <= 0.0) continue;
      if (centroid.dot(centers[j].vec()) > cos_alpha[j] + 1e-12) {
        keep[t] = 0;
        break;
      }
    }
  }

  // Compact to the used vertex set.
  SphericalMesh mesh;
  std::vector<int> remap(full.vertices.size(), -1);
  for (std::size_t t = 0; t < full.triangles.size(); ++t) {
    if (!keep[t]) continue;
    std::array<int, 3> tri;
    for (int k = 0; k < 3; ++k) {
      const int v = full.triangles[t][k];
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(full.vertices[v]);
        mesh.cap_tag.push_back(tag[v]);
      }
      tri[k] = remap[v];
    }
    mesh.triangles.push_back(tri);
  }
  if (mesh.triangles.empty()) {
    throw std::invalid_argument(
        "triangulate: caps swallow the whole mesh at this level");
  }
  mesh.boundary_loops = extract_boundary_loops(mesh, m);
  return mesh;
}

SphericalMesh triangulate_delta(const CapillaryConfig& config, int level) {
  std::vector<UnitVector> centers;
  std::vector<double> radii;
  for (std::size_t j = 0; j < config.size(); ++j) {
    centers.push_back(config.faces[j].normal);
    const double alpha = config.cap_angular_radius(j);
    radii.push_back(alpha <= 0.0 ? 0.0 : std::sin(alpha));
  }
  return triangulate_sphere_minus_caps(centers, radii, level);
}

}  // namespace capillary
