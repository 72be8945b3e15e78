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

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "capillary/hull.hpp"

namespace capillary {

std::vector<double> Polytope::areas() const {
  std::vector<double> a(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) a[i] = facets[i].area;
  return a;
}

double Polytope::total_area() const {
  double sum = 0.0;
  for (const auto& f : facets) sum += f.area;
  return sum;
}

Vec3 Polytope::area_moment() const {
  Vec3 sum = Vec3::Zero();
  for (const auto& f : facets) sum += f.area * f.normal;
  return sum;
}

double Polytope::diameter() const {
  // Bounding-box diagonal; adequate for tolerance scales.
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Vec3& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return vertices.empty() ? 0.0 : (hi - lo).norm();
}

double Polytope::support(const Vec3& direction) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec3& v : vertices) best = std::max(best, v.dot(direction));
  return best;
}

int Polytope::support_point(const Vec3& direction) const {
  int best = -1;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double val = vertices[i].dot(direction);
    if (val > best_val) {
      best_val = val;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Polytope Polytope::translated(const Vec3& t) const {
  Polytope out = *this;
  for (Vec3& v : out.vertices) v += t;
  for (PolytopeFacet& f : out.facets) {
    f.support += f.normal.dot(t);
    if (!f.vertex_cycle.empty()) f.centroid += t;
  }
  return out;
}

Polytope Polytope::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be > 0");
  Polytope out = *this;
  for (Vec3& v : out.vertices) v *= factor;
  for (PolytopeFacet& f : out.facets) {
    f.support *= factor;
    f.area *= factor * factor;
    f.centroid *= factor;
  }
  for (PolytopeEdge& e : out.edges) e.length *= factor;
  out.volume *= factor * factor * factor;
  out.volume_support *= factor * factor * factor;
  return out;
}

namespace {

struct VertexMerger {
  double tol;
  std::vector<Vec3> positions;
  std::unordered_map<std::uint64_t, std::vector<int>> grid;

  explicit VertexMerger(double tolerance) : tol(tolerance) {}

  std::uint64_t cell_key(long long x, long long y, long long z) const {
    std::uint64_t h = 1469598103934665603ull;
    for (long long c : {x, y, z}) {
      h ^= static_cast<std::uint64_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }

  int insert(const Vec3& p) {
    const double cell = 4.0 * tol;
    const long long cx = static_cast<long long>(std::floor(p.x() / cell));
    const long long cy = static_cast<long long>(std::floor(p.y() / cell));
    const long long cz = static_cast<long long>(std::floor(p.z() / cell));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dz = -1; dz <= 1; ++dz) {
          auto it = grid.find(cell_key(cx + dx, cy + dy, cz + dz));
          if (it == grid.end()) continue;
          for (int idx : it->second) {
            if ((positions[idx] - p).norm() <= tol) return idx;
          }
        }
      }
    }
    const int idx = static_cast<int>(positions.size());
    positions.push_back(p);
    grid[cell_key(cx, cy, cz)].push_back(idx);
    return idx;
  }
};

}  // namespace

Polytope polytope_from_support(const std::vector<Vec3>& normals,
                               const SupportVector& h) {
  const std::size_t n = normals.size();
  if (h.values.size() != n) {
    throw std::invalid_argument("polytope_from_support: size mismatch");
  }
  if (n < 4) {
    throw std::runtime_error("polytope_from_support: need at least 4 normals");
  }
  for (double hv : h.values) {
    if (!(hv > 0.0)) {
      throw std::runtime_error(
          "polytope_from_support: origin-interior gauge requires h_i > 0");
    }
  }
  Eigen::Matrix3d span = Eigen::Matrix3d::Zero();
  for (const Vec3& u : normals) span += u * u.transpose();
  if (span.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() < 1e-9 *
          static_cast<double>(n)) {
    throw std::runtime_error(
        "polytope_from_support: normals do not span 3-space, intersection "
        "unbounded");
  }

  std::vector<Vec3> dual(n);
  for (std::size_t i = 0; i < n; ++i) dual[i] = normals[i] / h.values[i];
  const std::vector<HullFace> dual_hull = convex_hull(dual);

  // Each dual-hull triangle is a primal vertex: the intersection of the
  // three facet planes.
  double scale = 0.0;
  for (double hv : h.values) scale = std::max(scale, hv);
  const double merge_tol = 1e-8 * scale;

  VertexMerger merger(merge_tol);
  std::vector<int> face_vertex(dual_hull.size());
  for (std::size_t t = 0; t < dual_hull.size(); ++t) {
    const auto& tri = dual_hull[t].v;
    Eigen::Matrix3d M;
    Vec3 rhs;
    for (int k = 0; k < 3; ++k) {
      M.row(k) = normals[tri[k]].transpose();
      rhs[k] = h.values[tri[k]];
    }
    const Vec3 vertex = M.partialPivLu().solve(rhs);
    face_vertex[t] = merger.insert(vertex);
  }

  Polytope P;
  P.vertices = merger.positions;
  P.facets.resize(n);

  // Incidence: atom -> dual triangles around it.
  std::vector<std::vector<int>> incident(n);
  for (std::size_t t = 0; t < dual_hull.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      incident[dual_hull[t].v[k]].push_back(static_cast<int>(t));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    PolytopeFacet& facet = P.facets[i];
    facet.normal = normals[i];
    facet.support = h.values[i];
    facet.atom_index = static_cast<int>(i);
    if (incident[i].empty()) continue;  // redundant halfspace

    std::vector<int> cycle;
    for (int t : incident[i]) cycle.push_back(face_vertex[t]);
    std::sort(cycle.begin(), cycle.end());
    cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
    if (cycle.size() < 3) continue;  // facet collapsed to an edge or vertex

    // Order counterclockwise around the outward normal.
    Vec3 e1, e2;
    orthonormal_basis(normals[i], e1, e2);
    Vec3 anchor = Vec3::Zero();
    for (int v : cycle) anchor += P.vertices[v];
    anchor /= static_cast<double>(cycle.size());
    std::sort(cycle.begin(), cycle.end(), [&](int a, int b) {
      const Vec3 da = P.vertices[a] - anchor;
      const Vec3 db = P.vertices[b] - anchor;
      return std::atan2(da.dot(e2), da.dot(e1)) <
             std::atan2(db.dot(e2), db.dot(e1));
    });

    // Area and centroid by the fan about the anchor.
    double area = 0.0;
    Vec3 centroid = Vec3::Zero();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Vec3& a = P.vertices[cycle[k]];
      const Vec3& b = P.vertices[cycle[(k + 1) % cycle.size()]];
      const double tri_area =
          0.5 * normals[i].dot((a - anchor).cross(b - anchor));
      area += tri_area;
      centroid += tri_area * (anchor + a + b) / 3.0;
    }
    if (area <= 0.0) continue;  // numerically empty
    facet.vertex_cycle = std::move(cycle);
    facet.area = area;
    facet.centroid = centroid / area;
  }

  // Primal edges from dual-hull adjacency; merged endpoints mean the edge
  // degenerated to a point and carries no mixed-area weight.
  std::set<std::pair<int, int>> seen_pairs;
  for (std::size_t t = 0; t < dual_hull.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = dual_hull[t].v[k];
      const int b = dual_hull[t].v[(k + 1) % 3];
      const auto key = std::minmax(a, b);
      if (!seen_pairs.insert(key).second) continue;
      const int g = dual_hull[t].neighbor[k];
      const int va = face_vertex[t];
      const int vb = face_vertex[g];
      if (va == vb) continue;
      PolytopeEdge e;
      e.facet_a = key.first;
      e.facet_b = key.second;
      e.v0 = va;
      e.v1 = vb;
      e.length = (P.vertices[va] - P.vertices[vb]).norm();
      P.edges.push_back(e);
    }
  }

  // Volume two ways: support decomposition and a tetrahedral fan from the
  // origin over the facet triangulations.
  double vol_support = 0.0;
  double vol_fan = 0.0;
  for (const PolytopeFacet& f : P.facets) {
    vol_support += f.support * f.area / 3.0;
    if (f.vertex_cycle.empty()) continue;
    const Vec3& v0 = P.vertices[f.vertex_cycle[0]];
    for (std::size_t k = 1; k + 1 < f.vertex_cycle.size(); ++k) {
      const Vec3& a = P.vertices[f.vertex_cycle[k]];
      const Vec3& b = P.vertices[f.vertex_cycle[k + 1]];
      vol_fan += v0.dot(a.cross(b)) / 6.0;
    }
  }
  P.volume = vol_fan;
  P.volume_support = vol_support;
  return P;
}

std::vector<double> facet_areas(const Polytope& P) { return P.areas(); }

std::vector<double> volume_gradient(const std::vector<Vec3>& normals,
                                    const SupportVector& h) {
  return facet_areas(polytope_from_support(normals, h));
}

Vec3 steiner_point(const Polytope& P) {
  double total = 0.0;
  Vec3 weighted = Vec3::Zero();
  for (const PolytopeFacet& f : P.facets) {
    total += f.area;
    weighted += f.area * f.centroid;
  }
  if (!(total > 0.0)) throw std::runtime_error("steiner_point: empty body");
  return weighted / total;
}

Polytope steiner_align(const Polytope& P) {
  return P.translated(-steiner_point(P));
}

std::string to_off(const Polytope& P) {
  std::string out;
  char buf[128];
  std::size_t facet_count = 0;
  for (const auto& f : P.facets) {
    if (!f.vertex_cycle.empty()) ++facet_count;
  }
  out += "OFF\n";
  std::snprintf(buf, sizeof(buf), "%zu %zu %zu\n", P.vertices.size(),
                facet_count, P.edges.size());
  out += buf;
  for (const Vec3& v : P.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x(), v.y(),
                  v.z());
    out += buf;
  }
  for (const auto& f : P.facets) {
    if (f.vertex_cycle.empty()) continue;
    std::snprintf(buf, sizeof(buf), "%zu", f.vertex_cycle.size());
    out += buf;
    for (int v : f.vertex_cycle) {
      std::snprintf(buf, sizeof(buf), " %d", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace capillary
