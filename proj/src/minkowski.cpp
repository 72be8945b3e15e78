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

#include <Eigen/Sparse>
#include <random>
#include <stdexcept>

namespace capillary {

namespace {

/// Mixed-area matrix DA(h): dA_i/dh_j = len(e_ij)/sin(angle(u_i,u_j)) for
/// adjacent facets and dA_i/dh_i = -sum_j len(e_ij) cot(angle(u_i,u_j)).
/// Symmetric, kernel spanned by the three translation modes <t, u_i>.
Eigen::SparseMatrix<double> mixed_area_matrix(const Polytope& P,
                                              const std::vector<Vec3>& normals) {
  const int n = static_cast<int>(normals.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(P.edges.size() * 4);
  for (const PolytopeEdge& e : P.edges) {
    const Vec3& ua = normals[e.facet_a];
    const Vec3& ub = normals[e.facet_b];
    const double sin_ab = ua.cross(ub).norm();
    if (sin_ab < 1e-14) continue;
    const double cos_ab = ua.dot(ub);
    const double off = e.length / sin_ab;
    triplets.emplace_back(e.facet_a, e.facet_b, off);
    triplets.emplace_back(e.facet_b, e.facet_a, off);
    triplets.emplace_back(e.facet_a, e.facet_a, -off * cos_ab);
    triplets.emplace_back(e.facet_b, e.facet_b, -off * cos_ab);
  }
  Eigen::SparseMatrix<double> DA(n, n);
  DA.setFromTriplets(triplets.begin(), triplets.end());
  return DA;
}

/// Removes the component of x lying in the span of the translation modes
/// tau_t(i) = <t, u_i>.
void project_out_translations(const std::vector<Vec3>& normals,
                              Eigen::VectorXd& x) {
  const int n = static_cast<int>(normals.size());
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  Vec3 rhs = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    gram += normals[i] * normals[i].transpose();
    rhs += x[i] * normals[i];
  }
  const Vec3 t = gram.ldlt().solve(rhs);
  for (int i = 0; i < n; ++i) x[i] -= normals[i].dot(t);
}

}  // namespace

MinkowskiSolution solve_minkowski(const std::vector<Vec3>& normals,
                                  const std::vector<double>& weights,
                                  const SolverOptions& opts) {
  const int n = static_cast<int>(normals.size());
  if (static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("solve_minkowski: size mismatch");
  }
  if (n < 4) {
    throw std::invalid_argument("solve_minkowski: need at least 4 atoms");
  }
  Eigen::VectorXd f(n);
  double f_norm = 0.0;
  double f_sum = 0.0;
  Vec3 closure = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0)) {
      throw std::invalid_argument("solve_minkowski: weights must be positive");
    }
    f[i] = weights[i];
    f_norm = std::max(f_norm, weights[i]);
    f_sum += weights[i];
    closure += weights[i] * normals[i];
  }
  if (closure.norm() > 1e-9 * f_sum) {
    throw std::invalid_argument(
        "solve_minkowski: measure is not closed (sum f_i u_i != 0); call "
        "close_measure first");
  }

  Eigen::VectorXd h(n);
  if (opts.initial_h) {
    if (static_cast<int>(opts.initial_h->size()) != n) {
      throw std::invalid_argument("solve_minkowski: initial_h size mismatch");
    }
    for (int i = 0; i < n; ++i) {
      h[i] = (*opts.initial_h)[i];
      if (!(h[i] > 0.0)) {
        throw std::invalid_argument(
            "solve_minkowski: initial_h must be positive");
      }
    }
  } else if (opts.init_perturbation > 0.0) {
    std::mt19937 gen(opts.init_seed);
    std::uniform_real_distribution<double> uni(-opts.init_perturbation,
                                               opts.init_perturbation);
    for (int i = 0; i < n; ++i) h[i] = 1.0 + uni(gen);
  } else {
    h.setOnes();
  }

  auto build = [&](const Eigen::VectorXd& hv) {
    SupportVector sv;
    sv.values.assign(hv.data(), hv.data() + n);
    return polytope_from_support(normals, sv);
  };

  Polytope P = build(h);
  if (!(P.volume > 0.0)) {
    throw std::runtime_error("solve_minkowski: initial body has no volume");
  }
  // Match the total area scale up front; homogeneity does the rest.
  h *= std::sqrt(f_sum / std::max(P.total_area(), 1e-300));
  P = build(h);

  // Damped Newton on the stationarity system A(h) = f. The Jacobian DA is
  // symmetric with the translation kernel; since the residual stays in its
  // range, the exact Newton direction descends the residual 2-norm, which
  // the line search exploits.
  Eigen::VectorXd areas(n);
  auto fill_areas = [&](const Polytope& body) {
    for (int i = 0; i < n; ++i) areas[i] = body.facets[i].area;
  };
  fill_areas(P);
  auto inf_residual = [&](const Eigen::VectorXd& a) {
    return (a - f).cwiseAbs().maxCoeff() / f_norm;
  };
  double merit2 = (f - areas).norm();
  double residual = inf_residual(areas);
  int iter = 0;
  for (; iter < opts.max_iterations && residual > opts.area_tolerance; ++iter) {
    const Eigen::SparseMatrix<double> DA = mixed_area_matrix(P, normals);

    double diag_scale = 0.0;
    for (const PolytopeEdge& e : P.edges) diag_scale += 2.0 * e.length;
    diag_scale = std::max(diag_scale / n, 1e-30);
    const double eps =
        diag_scale *
        std::clamp(opts.regularization * merit2 / f_norm, 1e-14, 1e-3);

    // DA - eps I keeps the translation kernel and the one positive
    // eigenvalue away from zero without disturbing the bulk spectrum.
    Eigen::SparseMatrix<double> K = DA;
    for (int i = 0; i < n; ++i) K.coeffRef(i, i) -= eps;
    K.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success) {
      throw std::runtime_error(
          "solve_minkowski: Newton system factorization failed");
    }
    Eigen::VectorXd dh = lu.solve(Eigen::VectorXd(f - areas));
    project_out_translations(normals, dh);

    // Transient empty facets can blow the step up through the regularizer;
    // rescale uniformly so the Newton direction itself is preserved.
    const double cap = 0.5 * h.cwiseAbs().maxCoeff();
    const double dh_max = dh.cwiseAbs().maxCoeff();
    if (dh_max > cap) dh *= cap / dh_max;

    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt, step *= opts.damping) {
      const Eigen::VectorXd trial = h + step * dh;
      if (trial.minCoeff() <= 0.0) continue;  // keep the origin interior
      Polytope trial_body = build(trial);
      if (!(trial_body.volume > 0.0)) continue;
      fill_areas(trial_body);
      const double trial_merit2 = (f - areas).norm();
      if (trial_merit2 < merit2) {
        h = trial;
        P = std::move(trial_body);
        merit2 = trial_merit2;
        residual = inf_residual(areas);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stagnation; report the residual we reached
  }

  if (residual > opts.area_tolerance) {
    throw std::runtime_error(
        "solve_minkowski: no convergence after " + std::to_string(iter) +
        " iterations, residual " + std::to_string(residual));
  }

  MinkowskiSolution result;
  result.h.values.assign(h.data(), h.data() + n);
  result.polytope = build(h);
  result.iterations = iter;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(result.polytope.facets[i].area - f[i]));
  }
  result.area_residual = worst / f_norm;
  return result;
}

MinkowskiSolution solve_minkowski(const SurfaceAreaMeasure& measure,
                                  const SolverOptions& opts) {
  std::vector<Vec3> normals;
  std::vector<double> weights;
  normals.reserve(measure.atoms.size());
  weights.reserve(measure.atoms.size());
  for (const MeasureAtom& a : measure.atoms) {
    normals.push_back(a.direction);
    weights.push_back(a.weight);
  }
  return solve_minkowski(normals, weights, opts);
}

}  // namespace capillary
