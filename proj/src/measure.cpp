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

#include "capillary/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace capillary {

namespace {

double kahan_sum(const std::vector<MeasureAtom>& atoms, bool smooth_only) {
  double sum = 0.0, comp = 0.0;
  for (const MeasureAtom& a : atoms) {
    if (smooth_only && a.kind != AtomKind::SmoothQuadrature) continue;
    const double y = a.weight - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

Vec3 moment_sum(const std::vector<MeasureAtom>& atoms, bool smooth_only) {
  Vec3 sum = Vec3::Zero();
  Vec3 comp = Vec3::Zero();
  for (const MeasureAtom& a : atoms) {
    if (smooth_only && a.kind != AtomKind::SmoothQuadrature) continue;
    const Vec3 y = a.weight * a.direction - comp;
    const Vec3 s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

}  // namespace

double SurfaceAreaMeasure::total_weight() const {
  return kahan_sum(atoms, false);
}
double SurfaceAreaMeasure::smooth_weight() const {
  return kahan_sum(atoms, true);
}
Vec3 SurfaceAreaMeasure::moment() const { return moment_sum(atoms, false); }
Vec3 SurfaceAreaMeasure::smooth_moment() const {
  return moment_sum(atoms, true);
}

SurfaceAreaMeasure build_measure(const CapillaryConfig& config,
                                 std::shared_ptr<const SphericalMesh> mesh) {
  SurfaceAreaMeasure measure;
  measure.source_mesh = mesh;
  const SphericalMesh& m = *mesh;

  std::vector<double> lumped(m.vertices.size(), 0.0);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const double share = m.triangle_area(t) / 3.0;
    for (int k = 0; k < 3; ++k) lumped[m.triangles[t][k]] += share;
  }
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (lumped[v] <= 0.0) continue;
    measure.atoms.push_back(
        {m.vertices[v], lumped[v], AtomKind::SmoothQuadrature, -1});
  }
  const double scale2 = (2.0 * config.H) * (2.0 * config.H);
  for (std::size_t j = 0; j < config.size(); ++j) {
    measure.atoms.push_back({config.faces[j].normal.vec(),
                             config.faces[j].area * scale2,
                             AtomKind::FaceDirac, static_cast<int>(j)});
  }
  return measure;
}

SurfaceAreaMeasure build_sequence_measure(const CapillaryConfig& config, int n,
                                          int level) {
  const std::size_t m = config.size();
  // n0 requirement: the enlarged closed caps stay pairwise disjoint and
  // sin theta_j + 1/n < 1.
  const double inv_n = 1.0 / n;
  for (std::size_t j = 0; j < m; ++j) {
    if (config.cap_sin_radius(j) + inv_n >= 1.0) {
      throw std::invalid_argument(
          "sequence measure: n too small, sin theta + 1/n >= 1");
    }
  }
  std::vector<double> outer_alpha(m);
  for (std::size_t j = 0; j < m; ++j) {
    outer_alpha[j] = std::asin(config.cap_sin_radius(j) + inv_n);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double sep =
          config.faces[i].normal.angle_to(config.faces[j].normal);
      if (sep < outer_alpha[i] + outer_alpha[j] - 1e-12) {
        throw std::invalid_argument(
            "sequence measure: n too small, enlarged caps overlap");
      }
    }
  }

  std::vector<UnitVector> centers;
  std::vector<double> radii;
  for (std::size_t j = 0; j < m; ++j) {
    centers.push_back(config.faces[j].normal);
    radii.push_back(config.cap_sin_radius(j) + inv_n);
  }
  auto mesh = std::make_shared<SphericalMesh>(
      triangulate_sphere_minus_caps(centers, radii, level));

  SurfaceAreaMeasure measure;
  measure.source_mesh = mesh;
  std::vector<double> lumped(mesh->vertices.size(), 0.0);
  for (std::size_t t = 0; t < mesh->triangles.size(); ++t) {
    const double share = mesh->triangle_area(t) / 3.0;
    for (int k = 0; k < 3; ++k) lumped[mesh->triangles[t][k]] += share;
  }
  for (std::size_t v = 0; v < mesh->vertices.size(); ++v) {
    if (lumped[v] <= 0.0) continue;
    measure.atoms.push_back(
        {mesh->vertices[v], lumped[v], AtomKind::SmoothQuadrature, -1});
  }

  // Collar bands between sin-radii r_j and r_j + 1/n. Placing each band's
  // mass on a ring at cos(alpha) = (cos(alpha_in) + cos(alpha_out))/2
  // reproduces the band's Lebesgue mass and first moment exactly, so the
  // collar moment equals pi (1/n^2 + 2 r_j / n) p_j up to rounding.
  const int azimuthal = 24 << level;
  const int bands = std::max(2, 1 << std::max(0, level - 2));
  for (std::size_t j = 0; j < m; ++j) {
    const double alpha_in = std::asin(config.cap_sin_radius(j));
    const double alpha_out = outer_alpha[j];
    Vec3 e1, e2;
    orthonormal_basis(centers[j].vec(), e1, e2);
    for (int b = 0; b < bands; ++b) {
      const double a0 = alpha_in + (alpha_out - alpha_in) * b / bands;
      const double a1 = alpha_in + (alpha_out - alpha_in) * (b + 1) / bands;
      const double band_mass = 2.0 * kPi * (std::cos(a0) - std::cos(a1));
      const double cos_bar = 0.5 * (std::cos(a0) + std::cos(a1));
      const double sin_bar = std::sqrt(1.0 - cos_bar * cos_bar);
      for (int k = 0; k < azimuthal; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / azimuthal;
        const Vec3 u = cos_bar * centers[j].vec() +
                       sin_bar * (std::cos(phi) * e1 + std::sin(phi) * e2);
        measure.atoms.push_back({u, band_mass / azimuthal,
                                 AtomKind::SmoothQuadrature, -1});
      }
    }
  }

  // The shrinking cap B(p_j; 1/n) collapses to a single atom carrying
  // exactly the weight a_j (2H)^2; its first moment a_j (2H)^2 p_j matches
  // the continuous one.
  const double scale2 = (2.0 * config.H) * (2.0 * config.H);
  for (std::size_t j = 0; j < m; ++j) {
    measure.atoms.push_back({centers[j].vec(), config.faces[j].area * scale2,
                             AtomKind::FaceDirac, static_cast<int>(j)});
  }
  return measure;
}

SurfaceAreaMeasure consolidate_measure(const SurfaceAreaMeasure& measure,
                                       double floor_fraction) {
  std::vector<MeasureAtom> smooth;
  std::vector<MeasureAtom> dirac;
  for (const MeasureAtom& a : measure.atoms) {
    (a.kind == AtomKind::FaceDirac ? dirac : smooth).push_back(a);
  }

  // Atoms duplicating a Dirac direction: spread them over nearby smooth
  // atoms. A positive 3-term representation f u = sum c_k u_k exists as
  // soon as u lies inside the spherical hull of the candidates.
  for (std::size_t i = 0; i < smooth.size();) {
    bool duplicate = false;
    for (const MeasureAtom& d : dirac) {
      if ((smooth[i].direction - d.direction).norm() < 1e-9) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      ++i;
      continue;
    }
    const MeasureAtom atom = smooth[i];
    smooth.erase(smooth.begin() + static_cast<std::ptrdiff_t>(i));
    // Nearest candidates by angle.
    std::vector<std::size_t> order(smooth.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::partial_sort(order.begin(),
                      order.begin() + std::min<std::size_t>(9, order.size()),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        return (smooth[a].direction - atom.direction).norm() <
                               (smooth[b].direction - atom.direction).norm();
                      });
    const std::size_t pool = std::min<std::size_t>(9, order.size());
    bool done = false;
    for (std::size_t a = 0; a < pool && !done; ++a) {
      for (std::size_t b = a + 1; b < pool && !done; ++b) {
        for (std::size_t c = b + 1; c < pool && !done; ++c) {
          Eigen::Matrix3d M;
          M.col(0) = smooth[order[a]].direction;
          M.col(1) = smooth[order[b]].direction;
          M.col(2) = smooth[order[c]].direction;
          if (std::abs(M.determinant()) < 1e-12) continue;
          const Vec3 coeff =
              M.partialPivLu().solve(atom.weight * atom.direction);
          if (coeff.minCoeff() < 0.0) continue;
          smooth[order[a]].weight += coeff[0];
          smooth[order[b]].weight += coeff[1];
          smooth[order[c]].weight += coeff[2];
          done = true;
        }
      }
    }
    if (!done) {
      throw std::runtime_error(
          "consolidate_measure: cannot redistribute a duplicate atom");
    }
  }

  // Pairwise merges of under-floor atoms; the combined atom keeps the exact
  // moment f_i u_i + f_k u_k.
  auto mean_weight = [&]() {
    double sum = 0.0;
    for (const MeasureAtom& a : smooth) sum += a.weight;
    return sum / std::max<std::size_t>(1, smooth.size());
  };
  double floor = floor_fraction * mean_weight();
  for (int guard = 0; guard < 1024; ++guard) {
    std::size_t tiny = smooth.size();
    double smallest = floor;
    for (std::size_t i = 0; i < smooth.size(); ++i) {
      if (smooth[i].weight < smallest) {
        smallest = smooth[i].weight;
        tiny = i;
      }
    }
    if (tiny == smooth.size()) break;
    std::size_t nearest = smooth.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < smooth.size(); ++k) {
      if (k == tiny) continue;
      const double d = (smooth[k].direction - smooth[tiny].direction).norm();
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    if (nearest == smooth.size()) break;
    const Vec3 moment = smooth[tiny].weight * smooth[tiny].direction +
                        smooth[nearest].weight * smooth[nearest].direction;
    smooth[nearest].direction = moment.normalized();
    smooth[nearest].weight = moment.norm();
    smooth.erase(smooth.begin() + static_cast<std::ptrdiff_t>(tiny));
  }

  SurfaceAreaMeasure out;
  out.source_mesh = measure.source_mesh;
  out.atoms = std::move(smooth);
  out.atoms.insert(out.atoms.end(), dirac.begin(), dirac.end());
  return out;
}

SurfaceAreaMeasure close_measure(const SurfaceAreaMeasure& measure) {
  const Vec3 defect = measure.moment();
  const double total = measure.total_weight();
  if (!(total > 0.0)) {
    throw std::runtime_error("close_measure: empty measure");
  }
  if (defect.norm() > 0.01 * total) {
    throw std::runtime_error(
        "close_measure: defect exceeds 1% of the total weight; refine the "
        "mesh or balance the configuration first");
  }

  // Weight-relative least squares: minimize sum delta_i^2 / f_i subject to
  // sum delta_i u_i = -defect, giving delta_i = f_i <u_i, lambda>. The
  // relative change |delta_i / f_i| <= |lambda| stays uniformly small, so
  // tiny sliver atoms keep their sign.
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  for (const MeasureAtom& a : measure.atoms) {
    if (a.kind != AtomKind::SmoothQuadrature) continue;
    gram += a.weight * a.direction * a.direction.transpose();
  }
  const Vec3 lambda = gram.ldlt().solve(-defect);

  SurfaceAreaMeasure closed = measure;
  for (MeasureAtom& a : closed.atoms) {
    if (a.kind != AtomKind::SmoothQuadrature) continue;
    a.weight *= 1.0 + a.direction.dot(lambda);
    if (!(a.weight > 0.0)) {
      throw std::runtime_error(
          "close_measure: correction drove a quadrature weight non-positive");
    }
  }
  return closed;
}

}  // namespace capillary
