// Copyright 2026 The specdeblur Authors
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

#ifndef SPECDEBLUR_SIMPLEX_QP_HPP_
#define SPECDEBLUR_SIMPLEX_QP_HPP_

#include <optional>

#include "specdeblur/image.hpp"

namespace specdeblur {

// minimize x^T Q x + c^T x  subject to  x >= 0, sum(x) = 1.
struct QpProblem {
  Matrix q;
  Vector c;

  int dimension() const { return static_cast<int>(q.rows()); }
  double Objective(const Vector& x) const;
  Vector Gradient(const Vector& x) const;
};

struct QpOptions {
  double tol = 1e-8;
  int max_iter = 10000;
  int power_iterations = 50;
  double power_tol = 1e-6;
  // Finish with primal active-set steps on the support found by the
  // gradient iterations. Needed whenever Q is badly conditioned.
  bool refine = true;
  int max_refine_steps = 2000;
  // Gradient iterations spent locating the support before refinement; the
  // rest of max_iter is used only if refinement falls short of tol.
  int warmup_iter = 300;
};

struct QpSolution {
  Vector x;
  double objective = 0.0;
  int iterations = 0;      // accelerated gradient iterations
  int refine_steps = 0;    // active-set steps
  double kkt_residual = 0.0;
  bool converged = false;
};

// Euclidean projection onto the probability simplex.
Vector ProjectSimplex(const Vector& v);

// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double PowerMethodLambdaMax(const Matrix& q, int iterations, double rel_tol);

// Fixed-point residual of projected gradient with step 1/L, L = 2 lambda_max:
//   || x - P(x - grad f(x) / L) ||_2.
// Zero exactly at KKT points; measured in the units of x.
double KktResidual(const QpProblem& p, const Vector& x, double lipschitz);

// Accelerated projected gradient (function-value adaptive restart, step
// 1/L from a power-method estimate with backtracking) started at `start` or
// the uniform point, interleaved with active-set refinement. On max_iter the
// best iterate is returned with converged = false.
QpSolution SolveQp(const QpProblem& p, const QpOptions& options = {},
                   const std::optional<Vector>& start = std::nullopt);

}  // namespace specdeblur

#endif  // SPECDEBLUR_SIMPLEX_QP_HPP_
