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

#pragma once

#include <optional>
#include <vector>

#include "capillary/measure.hpp"
#include "capillary/polytope.hpp"

namespace capillary {

struct SolverOptions {
  int max_iterations = 120;
  /// Convergence target for ||A(h) - f||_inf / ||f||_inf.
  double area_tolerance = 1e-11;
  /// Step shrink factor of the backtracking line search.
  double damping = 0.5;
  int max_backtracks = 30;
  /// Relative Hessian regularization; scaled by the residual so late
  /// iterations converge superlinearly.
  double regularization = 1e-3;
  /// Starting support numbers (defaults to the unit ball h = 1).
  std::optional<std::vector<double>> initial_h;
  /// When initial_h is absent, start from h_i = 1 +- init_perturbation drawn
  /// deterministically from init_seed. Used to probe uniqueness.
  double init_perturbation = 0.0;
  unsigned init_seed = 1;
};

struct MinkowskiSolution {
  SupportVector h;
  Polytope polytope;
  int iterations = 0;
  double area_residual = 0.0;  // relative infinity norm
};

/// Reconstructs the convex body whose per-atom facet areas equal the
/// measure weights: minimizes sum f_i h_i over { V(h) >= 1 } by a damped
/// projected Newton method in the translation-orthogonal complement, then
/// rescales so the areas match. Requires a closed measure with positive
/// weights whose directions span 3-space.
MinkowskiSolution solve_minkowski(const SurfaceAreaMeasure& measure,
                                  const SolverOptions& opts = {});

/// Variant over raw atoms (directions and weights).
MinkowskiSolution solve_minkowski(const std::vector<Vec3>& normals,
                                  const std::vector<double>& weights,
                                  const SolverOptions& opts = {});

}  // namespace capillary
