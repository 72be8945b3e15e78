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

#include "capillary/hull.hpp"

#include <limits>
#include <stdexcept>

namespace capillary {

namespace {

struct Face {
  std::array<int, 3> v{};
  std::array<int, 3> neighbor{};  // across edge (v[k], v[k+1])
  Vec3 normal = Vec3::Zero();
  double offset = 0.0;
  bool alive = true;
  std::vector<int> conflicts;
};

struct Builder {
  const std::vector<Vec3>& pts;
  double eps = 0.0;
  Vec3 interior = Vec3::Zero();
  std::vector<Face> faces;
  std::vector<int> pending;  // face indices that may carry conflicts

  explicit Builder(const std::vector<Vec3>& points) : pts(points) {}

  double dist(int f, int p) const {
    return faces[f].normal.dot(pts[p]) - faces[f].offset;
  }

  void set_plane(Face& f) {
    const Vec3& a = pts[f.v[0]];
    Vec3 n = (pts[f.v[1]] - a).cross(pts[f.v[2]] - a);
    const double len = n.norm();
    if (len <= 0.0) {
      throw std::runtime_error("convex_hull: degenerate face");
    }
    f.normal = n / len;
    f.offset = f.normal.dot(a);
  }

  int edge_slot(const Face& f, int a, int b) const {
    for (int k = 0; k < 3; ++k) {
      if (f.v[k] == a && f.v[(k + 1) % 3] == b) return k;
    }
    throw std::logic_error("convex_hull: broken adjacency");
  }

  void init_simplex() {
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw std::runtime_error("convex_hull: need at least 4 points");

    double scale = 0.0;
    for (const Vec3& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    eps = std::max(scale, 1.0) * 1e-12;

    int i0 = 0, i1 = 0;
    for (int i = 1; i < n; ++i) {
      if (pts[i].x() < pts[i0].x()) i0 = i;
      if (pts[i].x() > pts[i1].x()) i1 = i;
    }
    if ((pts[i1] - pts[i0]).norm() <= eps) {
      // x-extent collapsed, fall back to the overall farthest pair.
      for (int i = 0; i < n && (pts[i1] - pts[i0]).norm() <= eps; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if ((pts[j] - pts[i]).norm() > (pts[i1] - pts[i0]).norm()) {
            i0 = i;
            i1 = j;
          }
        }
      }
      if ((pts[i1] - pts[i0]).norm() <= eps) {
        throw std::runtime_error("convex_hull: all points coincide");
      }
    }
    const Vec3 dir = (pts[i1] - pts[i0]).normalized();
    int i2 = -1;
    double best = eps;
    for (int i = 0; i < n; ++i) {
      const Vec3 d = pts[i] - pts[i0];
      const double off = (d - d.dot(dir) * dir).norm();
      if (off > best) {
        best = off;
        i2 = i;
      }
    }
    if (i2 < 0) throw std::runtime_error("convex_hull: points are collinear");
    const Vec3 plane_n =
        (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
    int i3 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
      const double off = std::abs(plane_n.dot(pts[i] - pts[i0]));
      if (off > best) {
        best = off;
        i3 = i;
      }
    }
    if (i3 < 0) throw std::runtime_error("convex_hull: points are coplanar");

    interior = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);

    auto add_face = [&](int a, int b, int c) {
      Face f;
      f.v = {a, b, c};
      set_plane(f);
      if (f.normal.dot(interior) - f.offset > 0.0) {
        std::swap(f.v[1], f.v[2]);
        set_plane(f);
      }
      faces.push_back(f);
      return static_cast<int>(faces.size() - 1);
    };
    const int f0 = add_face(i0, i1, i2);
    const int f1 = add_face(i0, i1, i3);
    const int f2 = add_face(i0, i2, i3);
    const int f3 = add_face(i1, i2, i3);
    const std::array<int, 4> ids = {f0, f1, f2, f3};
    // Wire adjacency by matching directed edges.
    for (int fi : ids) {
      for (int k = 0; k < 3; ++k) {
        const int a = faces[fi].v[k];
        const int b = faces[fi].v[(k + 1) % 3];
        for (int gj : ids) {
          if (gj == fi) continue;
          bool found = false;
          for (int l = 0; l < 3; ++l) {
            if (faces[gj].v[l] == b && faces[gj].v[(l + 1) % 3] == a) {
              faces[fi].neighbor[k] = gj;
              found = true;
              break;
            }
          }
          if (found) break;
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (int fi : ids) {
        if (dist(fi, i) > eps) {
          faces[fi].conflicts.push_back(i);
          break;
        }
      }
    }
    for (int fi : ids) {
      if (!faces[fi].conflicts.empty()) pending.push_back(fi);
    }
  }

  struct HorizonEdge {
    int a, b;     // directed as seen from the visible side
    int outside;  // the hidden face across (a, b)
  };

  // Ordered horizon walk: visits the visible region depth-first, emitting
  // horizon edges as a single counterclockwise loop.
  void collect_horizon(int p, int f, int entry_edge, std::vector<int>& visible,
                       std::vector<HorizonEdge>& horizon,
                       std::vector<char>& seen) {
    seen[f] = 1;
    visible.push_back(f);
    for (int step = 0; step < 3; ++step) {
      const int k = (entry_edge + 1 + step) % 3;
      const int g = faces[f].neighbor[k];
      if (seen[g]) continue;
      const int a = faces[f].v[k];
      const int b = faces[f].v[(k + 1) % 3];
      if (dist(g, p) > eps) {
        collect_horizon(p, g, edge_slot(faces[g], b, a), visible, horizon,
                        seen);
      } else {
        horizon.push_back({a, b, g});
      }
    }
  }

  void run() {
    init_simplex();
    std::vector<char> seen;
    while (!pending.empty()) {
      const int f = pending.back();
      if (!faces[f].alive || faces[f].conflicts.empty()) {
        pending.pop_back();
        continue;
      }
      // Farthest conflict point first keeps the hull growth well conditioned.
      int p = -1;
      double best = -std::numeric_limits<double>::infinity();
      for (int c : faces[f].conflicts) {
        const double d = dist(f, c);
        if (d > best) {
          best = d;
          p = c;
        }
      }
      if (best <= eps) {
        faces[f].conflicts.clear();
        pending.pop_back();
        continue;
      }

      seen.assign(faces.size(), 0);
      std::vector<int> visible;
      std::vector<HorizonEdge> horizon;
      collect_horizon(p, f, -1, visible, horizon, seen);
      const int count = static_cast<int>(horizon.size());
      if (count < 3) {
        throw std::logic_error("convex_hull: degenerate horizon");
      }
      for (int i = 0; i < count; ++i) {
        if (horizon[i].b != horizon[(i + 1) % count].a) {
          throw std::logic_error("convex_hull: horizon is not a single loop");
        }
      }

      std::vector<int> orphans;
      for (int vf : visible) {
        faces[vf].alive = false;
        for (int c : faces[vf].conflicts) {
          if (c != p) orphans.push_back(c);
        }
        faces[vf].conflicts.clear();
      }

      // One new face per horizon edge; consecutive edges share the apex.
      std::vector<int> created;
      created.reserve(horizon.size());
      for (const HorizonEdge& e : horizon) {
        Face nf;
        nf.v = {e.a, e.b, p};
        set_plane(nf);
        faces.push_back(nf);
        created.push_back(static_cast<int>(faces.size() - 1));
      }
      for (int i = 0; i < count; ++i) {
        const int fi = created[i];
        const HorizonEdge& e = horizon[i];
        faces[fi].neighbor[0] = e.outside;
        faces[e.outside].neighbor[edge_slot(faces[e.outside], e.b, e.a)] = fi;
        faces[fi].neighbor[1] = created[(i + 1) % count];           // (b, p)
        faces[fi].neighbor[2] = created[(i - 1 + count) % count];   // (p, a)
      }

      for (int c : orphans) {
        for (int fi : created) {
          if (dist(fi, c) > eps) {
            faces[fi].conflicts.push_back(c);
            break;
          }
        }
      }
      for (int fi : created) {
        if (!faces[fi].conflicts.empty()) pending.push_back(fi);
      }
    }
  }
};

}  // namespace

std::vector<HullFace> convex_hull(const std::vector<Vec3>& points) {
  Builder builder(points);
  builder.run();

  std::vector<int> remap(builder.faces.size(), -1);
  std::vector<HullFace> out;
  for (std::size_t i = 0; i < builder.faces.size(); ++i) {
    if (!builder.faces[i].alive) continue;
    remap[i] = static_cast<int>(out.size());
    HullFace hf;
    hf.v = builder.faces[i].v;
    hf.normal = builder.faces[i].normal;
    hf.offset = builder.faces[i].offset;
    hf.neighbor = builder.faces[i].neighbor;
    out.push_back(hf);
  }
  for (HullFace& hf : out) {
    for (int k = 0; k < 3; ++k) {
      hf.neighbor[k] = remap[hf.neighbor[k]];
      if (hf.neighbor[k] < 0) {
        throw std::logic_error("convex_hull: dangling adjacency");
      }
    }
  }
  return out;
}

}  // namespace capillary
