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

#include "capillary/pipeline.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "capillary/measure.hpp"

namespace capillary {

double TriangleMesh::area() const {
  double sum = 0.0;
  for (const auto& tri : triangles) {
    sum += 0.5 * (vertices[tri[1]] - vertices[tri[0]])
                     .cross(vertices[tri[2]] - vertices[tri[0]])
                     .norm();
  }
  return sum;
}

TriangleMesh TriangleMesh::translated(const Vec3& t) const {
  TriangleMesh out = *this;
  for (Vec3& v : out.vertices) v += t;
  return out;
}

TriangleMesh parallel_surface(const Polytope& P, const SphericalMesh& mesh,
                              double r) {
  if (!(r > 0.0)) throw std::invalid_argument("parallel_surface: r must be > 0");
  TriangleMesh out;
  out.vertices.reserve(mesh.vertices.size());
  out.gauss = mesh.vertices;
  out.generator.reserve(mesh.vertices.size());
  for (const Vec3& u : mesh.vertices) {
    const int s = P.support_point(u);
    out.generator.push_back(s);
    out.vertices.push_back(P.vertices[s] + r * u);
  }
  out.triangles = mesh.triangles;
  out.boundary_tag = mesh.cap_tag;
  out.boundary_loops = mesh.boundary_loops;
  return out;
}

namespace {

/// Facet of the polytope realizing the Dirac atom of face j: the one whose
/// normal coincides with p_j.
const PolytopeFacet& dirac_facet(const Polytope& P,
                                 const CapillaryConfig& config,
                                 std::size_t face) {
  const Vec3 p = config.faces[face].normal.vec();
  for (const PolytopeFacet& f : P.facets) {
    if ((f.normal - p).norm() < 1e-12) return f;
  }
  throw std::runtime_error("no facet matches the normal of face " +
                           std::to_string(face));
}

}  // namespace

std::vector<ContainerPlane> container_planes(const Polytope& P,
                                             const CapillaryConfig& config,
                                             double scale) {
  std::vector<ContainerPlane> planes;
  for (std::size_t j = 0; j < config.size(); ++j) {
    const PolytopeFacet& f = dirac_facet(P, config, j);
    if (f.vertex_cycle.empty()) {
      throw std::runtime_error("contact facet of face " + std::to_string(j) +
                               " degenerated; the weight a_j is too small "
                               "for this resolution");
    }
    const double sin_theta = std::sin(config.faces[j].theta);
    const double r_star = std::sqrt(std::max(0.0, 1.0 - sin_theta * sin_theta));
    ContainerPlane plane;
    plane.normal = config.faces[j].normal;
    plane.support = f.support + scale * r_star;
    plane.face = static_cast<int>(j);
    planes.push_back(plane);
  }
  return planes;
}

namespace {

struct OffsetResult {
  std::vector<Vec3> polygon;
  double area = 0.0;
  double perimeter = 0.0;
};

double polygon_area(const std::vector<Vec3>& poly, const Vec3& n) {
  Vec3 anchor = Vec3::Zero();
  for (const Vec3& v : poly) anchor += v;
  anchor /= static_cast<double>(poly.size());
  double area = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Vec3& a = poly[k];
    const Vec3& b = poly[(k + 1) % poly.size()];
    area += 0.5 * n.dot((a - anchor).cross(b - anchor));
  }
  return area;
}

double polygon_perimeter(const std::vector<Vec3>& poly) {
  double len = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    len += (poly[(k + 1) % poly.size()] - poly[k]).norm();
  }
  return len;
}

/// Outer parallel domain of a convex polygon in the plane with normal n.
/// The polygon samples corner arcs at arc_step; area and perimeter are the
/// exact values of the offset domain (planar Steiner formula).
OffsetResult offset_convex_polygon(const std::vector<Vec3>& base,
                                   const Vec3& n, double r, double arc_step) {
  OffsetResult out;
  const std::size_t k = base.size();
  if (r <= 0.0) {
    out.polygon = base;
    out.area = polygon_area(base, n);
    out.perimeter = polygon_perimeter(base);
    return out;
  }
  std::vector<Vec3> edge_normal(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3 d = base[(i + 1) % k] - base[i];
    const double len = d.norm();
    if (len < 1e-15) {
      edge_normal[i] = Vec3::Zero();
      continue;
    }
    edge_normal[i] = (d / len).cross(n).normalized() * -1.0;
  }
  // Drop zero-length edges up front.
  std::vector<Vec3> verts;
  std::vector<Vec3> normals;
  for (std::size_t i = 0; i < k; ++i) {
    if (edge_normal[i].squaredNorm() > 0.0) {
      verts.push_back(base[i]);
      normals.push_back(edge_normal[i]);
    }
  }
  const std::size_t kk = verts.size();
  if (kk < 3) throw std::runtime_error("offset: degenerate polygon");

  double turning = 0.0;
  for (std::size_t i = 0; i < kk; ++i) {
    const Vec3& a = verts[i];
    const Vec3& b = verts[(i + 1) % kk];
    const Vec3& ne = normals[i];
    out.polygon.push_back(a + r * ne);
    out.polygon.push_back(b + r * ne);
    // Corner arc at b, from this edge normal to the next one.
    const Vec3& nf = normals[(i + 1) % kk];
    double phi = std::atan2(n.dot(ne.cross(nf)), ne.dot(nf));
    phi = std::max(phi, 0.0);  // convex polygon, up to rounding
    turning += phi;
    const int segments = static_cast<int>(std::ceil(phi / arc_step));
    for (int sgm = 1; sgm < segments; ++sgm) {
      const double t = phi * sgm / segments;
      const Vec3 dir = std::cos(t) * ne + std::sin(t) * n.cross(ne);
      out.polygon.push_back(b + r * dir);
    }
  }
  const double base_area = polygon_area(verts, n);
  const double base_perimeter = polygon_perimeter(verts);
  out.area = base_area + r * base_perimeter + 0.5 * turning * r * r;
  out.perimeter = base_perimeter + turning * r;
  return out;
}

}  // namespace

WettedDisk parallel_disk(const Polytope& P, std::size_t face,
                         const CapillaryConfig& config, double scale,
                         double arc_step) {
  const PolytopeFacet& f = dirac_facet(P, config, face);
  if (f.vertex_cycle.size() < 3) {
    throw std::runtime_error("contact facet of face " + std::to_string(face) +
                             " degenerated");
  }
  const double sin_theta = std::sin(config.faces[face].theta);
  const double r_star = std::sqrt(std::max(0.0, 1.0 - sin_theta * sin_theta));
  const Vec3 lift = scale * r_star * f.normal;

  WettedDisk disk;
  disk.face = static_cast<int>(face);
  for (int v : f.vertex_cycle) disk.base_polygon.push_back(P.vertices[v] + lift);
  disk.offset_distance = scale * sin_theta;
  const OffsetResult offset = offset_convex_polygon(
      disk.base_polygon, f.normal, disk.offset_distance, arc_step);
  disk.polygon = offset.polygon;
  disk.area = offset.area;
  disk.perimeter = offset.perimeter;
  return disk;
}

ReflectionDoubling reflect_double(const CapillaryConfig& config) {
  validate(config);
  if (!config.has_half_pi_face()) {
    throw std::invalid_argument("reflect_double: no right-angle face");
  }
  ReflectionDoubling result;
  result.original_face = config.half_pi_face_index();
  result.cut_normal = config.faces[result.original_face].normal;
  const Vec3 p = result.cut_normal.vec();

  result.doubled.H = config.H;
  result.doubled.flags.allow_theta_pi = config.flags.allow_theta_pi;
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == result.original_face) continue;
    result.doubled.faces.push_back(config.faces[j]);
  }
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == result.original_face) continue;
    Face mirrored = config.faces[j];
    mirrored.normal = UnitVector(reflect(config.faces[j].normal.vec(), p));
    result.doubled.faces.push_back(mirrored);
  }
  validate(result.doubled);  // disjointness of the mirrored caps
  return result;
}

namespace {

double icosa_edge_angle() {
  // Central angle of an icosahedron edge, atan(2).
  return std::atan(2.0);
}

std::vector<std::vector<int>> mesh_boundary_loops(const TriangleMesh& mesh,
                                                  std::size_t face_count) {
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      edge_use[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  std::map<int, int> next;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      if (edge_use[{std::min(a, b), std::max(a, b)}] == 1) next[a] = b;
    }
  }
  std::vector<std::vector<int>> loops(face_count);
  std::map<int, bool> visited;
  for (const auto& [start, unused] : next) {
    if (visited[start]) continue;
    std::vector<int> loop;
    int v = start;
    while (!visited[v]) {
      visited[v] = true;
      loop.push_back(v);
      auto it = next.find(v);
      if (it == next.end()) break;
      v = it->second;
    }
    std::vector<int> votes(face_count, 0);
    for (int lv : loop) {
      if (mesh.boundary_tag[lv] >= 0 &&
          mesh.boundary_tag[lv] < static_cast<int>(face_count)) {
        votes[mesh.boundary_tag[lv]]++;
      }
    }
    if (votes.empty()) continue;
    const int face = static_cast<int>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    const auto smallest = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), smallest, loop.end());
    if (loops[face].empty() || loop.size() > loops[face].size()) {
      loops[face] = std::move(loop);
    }
  }
  return loops;
}

struct CoreResult {
  TriangleMesh sigma;
  Polytope polytope;
  SupportVector support;
  PipelineStats stats;
  std::vector<ContainerPlane> planes;
  std::vector<WettedDisk> disks;
};

CoreResult run_core(const CapillaryConfig& config, int level,
                    const SolverOptions& opts, double balancing_residual) {
  const double scale = 1.0 / (2.0 * config.H);
  auto mesh =
      std::make_shared<SphericalMesh>(triangulate_delta(config, level));
  const SurfaceAreaMeasure raw =
      consolidate_measure(build_measure(config, mesh));
  CoreResult out;
  out.stats.balancing_residual = balancing_residual;
  out.stats.closure_defect_before = raw.moment().norm();
  const SurfaceAreaMeasure closed = close_measure(raw);
  out.stats.closure_defect_after = closed.moment().norm();
  out.stats.atom_count = static_cast<int>(closed.atoms.size());

  const MinkowskiSolution sol = solve_minkowski(closed, opts);
  out.stats.solver_iterations = sol.iterations;
  out.stats.solver_area_residual = sol.area_residual;

  out.polytope = steiner_align(sol.polytope).scaled(scale);
  out.support.values.resize(out.polytope.facets.size());
  for (std::size_t i = 0; i < out.polytope.facets.size(); ++i) {
    out.support.values[i] = out.polytope.facets[i].support;
  }

  out.sigma = parallel_surface(out.polytope, *mesh, scale);
  out.planes = container_planes(out.polytope, config, scale);
  const double arc_step = icosa_edge_angle() / (1 << level);
  for (std::size_t j = 0; j < config.size(); ++j) {
    out.disks.push_back(parallel_disk(out.polytope, j, config, scale, arc_step));
  }
  return out;
}

/// Point of the parallel surface with direction u: support point plus r u.
struct SurfacePoint {
  Vec3 x;
  Vec3 u;
  int generator;
};

SurfacePoint surface_point(const Polytope& P, double r, const Vec3& u) {
  const int s = P.support_point(u);
  return {P.vertices[s] + r * u, u, s};
}

/// Intersection of the parallel-surface arc between directions u_a, u_b
/// with the plane <x, p> = 0. Where the crossing lands on a cylindrical
/// seam between two patches the point is interpolated along the seam edge
/// (generator -1).
SurfacePoint cut_on_surface(const Polytope& P, double r, const Vec3& u_a,
                            const Vec3& u_b, const Vec3& p, double scale_hint) {
  auto dir = [&](double t) {
    return ((1.0 - t) * u_a + t * u_b).normalized();
  };
  double lo = 0.0, hi = 1.0;
  SurfacePoint at_lo = surface_point(P, r, u_a);
  SurfacePoint at_hi = surface_point(P, r, u_b);
  double f_lo = at_lo.x.dot(p);
  double f_hi = at_hi.x.dot(p);
  if (f_lo > 0.0 || f_hi <= 0.0) {
    throw std::logic_error("cut_on_surface: endpoints do not straddle");
  }
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const SurfacePoint sp = surface_point(P, r, dir(mid));
    const double f = sp.x.dot(p);
    if (f <= 0.0) {
      lo = mid;
      at_lo = sp;
      f_lo = f;
    } else {
      hi = mid;
      at_hi = sp;
      f_hi = f;
    }
    if (std::abs(f_lo) < 1e-14 * scale_hint) break;
  }
  if (std::abs(f_lo) < 1e-13 * scale_hint) return at_lo;
  // Seam crossing: the two bracketing patches share an edge; the plane
  // cuts the cylinder strip over it.
  const Vec3 u = at_lo.u;
  const Vec3& va = P.vertices[at_lo.generator];
  const Vec3& vb = P.vertices[at_hi.generator];
  const double denom = (vb - va).dot(p);
  if (std::abs(denom) < 1e-300) return at_lo;
  const double lambda = std::clamp(-(va + r * u).dot(p) / denom, 0.0, 1.0);
  return {va + lambda * (vb - va) + r * u, u, -1};
}

CapillaryOutput trim_at_plane(CoreResult&& inner,
                              const CapillaryConfig& original,
                              const ReflectionDoubling& doubling,
                              int level) {
  const Vec3 p = doubling.cut_normal.vec();
  const std::size_t m = original.size();
  const std::size_t cut_face = doubling.original_face;
  const double scale = 1.0 / (2.0 * original.H);

  // Doubled face j < m-1 corresponds to the j-th original face skipping the
  // right-angle one.
  std::vector<int> orig_of_doubled(inner.planes.size(), -1);
  {
    std::size_t d = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == cut_face) continue;
      orig_of_doubled[d++] = static_cast<int>(j);
    }
  }

  const TriangleMesh& M = inner.sigma;
  const double size_hint = std::max(1.0, inner.polytope.diameter());
  TriangleMesh cut;
  std::vector<int> remap(M.vertices.size(), -1);
  auto keep_vertex = [&](int v) {
    if (remap[v] >= 0) return remap[v];
    remap[v] = static_cast<int>(cut.vertices.size());
    cut.vertices.push_back(M.vertices[v]);
    cut.gauss.push_back(M.gauss[v]);
    cut.generator.push_back(M.generator[v]);
    const int tag = M.boundary_tag[v];
    cut.boundary_tag.push_back(tag >= 0 ? orig_of_doubled[tag] : -1);
    return remap[v];
  };
  std::map<std::pair<int, int>, int> cut_point;
  auto cut_vertex = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = cut_point.find(key);
    if (it != cut_point.end()) return it->second;
    const bool a_keeps = M.vertices[a].dot(p) <= 0.0;
    const Vec3& u_in = a_keeps ? M.gauss[a] : M.gauss[b];
    const Vec3& u_out = a_keeps ? M.gauss[b] : M.gauss[a];
    const SurfacePoint sp =
        cut_on_surface(inner.polytope, scale, u_in, u_out, p, size_hint);
    const int idx = static_cast<int>(cut.vertices.size());
    cut.vertices.push_back(sp.x);
    cut.gauss.push_back(sp.u);
    cut.generator.push_back(sp.generator);
    cut.boundary_tag.push_back(static_cast<int>(cut_face));
    cut_point.emplace(key, idx);
    return idx;
  };

  for (const auto& tri : M.triangles) {
    std::array<bool, 3> keep{};
    int kept = 0;
    for (int k = 0; k < 3; ++k) {
      keep[k] = M.vertices[tri[k]].dot(p) <= 0.0;
      kept += keep[k] ? 1 : 0;
    }
    if (kept == 0) continue;
    if (kept == 3) {
      cut.triangles.push_back(
          {keep_vertex(tri[0]), keep_vertex(tri[1]), keep_vertex(tri[2])});
      continue;
    }
    // Rotate so the pattern starts at a kept vertex (kept vertices first).
    int rot = 0;
    if (kept == 1) {
      while (!keep[rot]) ++rot;
    } else {
      while (!(keep[rot] && keep[(rot + 1) % 3])) ++rot;
    }
    const int a = tri[rot], b = tri[(rot + 1) % 3], c = tri[(rot + 2) % 3];
    if (kept == 1) {
      const int qab = cut_vertex(a, b);
      const int qac = cut_vertex(a, c);
      cut.triangles.push_back({keep_vertex(a), qab, qac});
    } else {
      const int qbc = cut_vertex(b, c);
      const int qac = cut_vertex(a, c);
      cut.triangles.push_back({keep_vertex(a), keep_vertex(b), qbc});
      cut.triangles.push_back({keep_vertex(a), qbc, qac});
    }
  }
  cut.boundary_loops = mesh_boundary_loops(cut, m);

  CapillaryOutput out;
  out.config = original;
  out.level = level;
  out.scale = scale;
  out.sigma = std::move(cut);
  out.polytope = std::move(inner.polytope);
  out.support = std::move(inner.support);
  out.stats = inner.stats;

  // Originals occupy the first m-1 doubled slots; the mirrored copies are
  // discarded with the dropped half.
  out.planes.resize(m);
  out.disks.resize(m);
  for (std::size_t d = 0; d + 1 < m; ++d) {
    const int j = orig_of_doubled[d];
    out.planes[j] = inner.planes[d];
    out.planes[j].face = j;
    out.disks[j] = inner.disks[d];
    out.disks[j].face = j;
  }

  // The right-angle face: plane through the origin, wetted region bounded
  // by the cut loop.
  ContainerPlane waist;
  waist.normal = doubling.cut_normal;
  waist.support = 0.0;
  waist.face = static_cast<int>(cut_face);
  out.planes[cut_face] = waist;

  WettedDisk flat;
  flat.face = static_cast<int>(cut_face);
  const auto& loop = out.sigma.boundary_loops[cut_face];
  if (loop.size() < 3) {
    throw std::runtime_error("trim: cut loop is degenerate");
  }
  for (int v : loop) flat.polygon.push_back(out.sigma.vertices[v]);
  // Orient counterclockwise about the outward face normal.
  if (polygon_area(flat.polygon, p) < 0.0) {
    std::reverse(flat.polygon.begin(), flat.polygon.end());
  }
  flat.base_polygon = flat.polygon;
  flat.offset_distance = 0.0;
  flat.area = polygon_area(flat.polygon, p);
  flat.perimeter = polygon_perimeter(flat.polygon);
  out.disks[cut_face] = std::move(flat);
  return out;
}

}  // namespace

CapillaryOutput run(const CapillaryConfig& config, int level,
                    const SolverOptions& opts) {
  if (level < 0 || level > 7) {
    throw std::invalid_argument("run: level must lie in [0, 7]");
  }
  validate(config);
  const double balancing = check_balancing(config).norm();
  if (balancing > 1e-9) {
    throw std::runtime_error(
        "run: configuration is not balanced (residual " +
        std::to_string(balancing) + "); repair the areas first");
  }

  if (config.has_half_pi_face()) {
    const ReflectionDoubling doubling = reflect_double(config);
    CoreResult inner = run_core(doubling.doubled, level, opts, balancing);
    return trim_at_plane(std::move(inner), config, doubling, level);
  }

  CoreResult core = run_core(config, level, opts, balancing);
  CapillaryOutput out;
  out.config = config;
  out.level = level;
  out.scale = 1.0 / (2.0 * config.H);
  out.sigma = std::move(core.sigma);
  out.planes = std::move(core.planes);
  out.disks = std::move(core.disks);
  out.polytope = std::move(core.polytope);
  out.support = std::move(core.support);
  out.stats = core.stats;
  return out;
}

std::vector<double> area_identity_check(const CapillaryOutput& output) {
  std::vector<double> residuals;
  const double scale = output.scale;
  for (std::size_t j = 0; j < output.config.size(); ++j) {
    const double a = output.config.faces[j].area;
    const double rj = std::sin(output.config.faces[j].theta) * scale;
    const WettedDisk& d = output.disks[j];
    const double reconstructed =
        d.area - d.perimeter * rj + kPi * rj * rj;
    residuals.push_back(std::abs(reconstructed - a) / a);
  }
  return residuals;
}

double compute_energy(const CapillaryOutput& output) {
  double energy = output.sigma.area();
  for (std::size_t j = 0; j < output.config.size(); ++j) {
    energy -=
        std::cos(output.config.faces[j].theta) * output.disks[j].area;
  }
  return energy;
}

std::vector<FaceAngleStats> contact_angles(const CapillaryOutput& output) {
  std::vector<FaceAngleStats> stats;
  for (std::size_t j = 0; j < output.config.size(); ++j) {
    FaceAngleStats s;
    s.face = static_cast<int>(j);
    const Vec3 p = output.config.faces[j].normal.vec();
    const double theta = output.config.faces[j].theta;
    const auto& loop = output.sigma.boundary_loops[j];
    double sum = 0.0;
    double worst = 0.0;
    for (int v : loop) {
      const double c = std::clamp(output.sigma.gauss[v].dot(p), -1.0, 1.0);
      const double measured = kPi - std::acos(c);
      sum += measured;
      worst = std::max(worst, std::abs(measured - theta));
    }
    s.samples = static_cast<int>(loop.size());
    if (s.samples > 0) {
      s.mean_deg = (sum / s.samples) * 180.0 / kPi;
      s.max_deviation_deg = worst * 180.0 / kPi;
    }
    stats.push_back(s);
  }
  return stats;
}

namespace {

void append(std::string& out, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

std::string sigma_to_obj(const CapillaryOutput& output) {
  std::string out;
  out += "o sigma\n";
  for (const Vec3& v : output.sigma.vertices) {
    append(out, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
  }
  for (const Vec3& u : output.sigma.gauss) {
    append(out, "vn %.17g %.17g %.17g\n", u.x(), u.y(), u.z());
  }
  for (const auto& tri : output.sigma.triangles) {
    append(out, "f %d//%d %d//%d %d//%d\n", tri[0] + 1, tri[0] + 1,
           tri[1] + 1, tri[1] + 1, tri[2] + 1, tri[2] + 1);
  }
  return out;
}

std::string disks_to_obj(const CapillaryOutput& output) {
  std::string out;
  int base = 1;  // OBJ indices are global and 1-based
  int normal_index = 0;
  for (const WettedDisk& disk : output.disks) {
    append(out, "o disk_%d\n", disk.face);
    const Vec3 n = output.config.faces[disk.face].normal.vec();
    Vec3 center = Vec3::Zero();
    for (const Vec3& v : disk.polygon) center += v;
    center /= static_cast<double>(disk.polygon.size());
    append(out, "v %.17g %.17g %.17g\n", center.x(), center.y(), center.z());
    for (const Vec3& v : disk.polygon) {
      append(out, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    }
    append(out, "vn %.17g %.17g %.17g\n", n.x(), n.y(), n.z());
    ++normal_index;
    const int k = static_cast<int>(disk.polygon.size());
    for (int i = 0; i < k; ++i) {
      append(out, "f %d//%d %d//%d %d//%d\n", base, normal_index,
             base + 1 + i, normal_index, base + 1 + (i + 1) % k, normal_index);
    }
    base += k + 1;
  }
  return out;
}

}  // namespace capillary
