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

#include "specdeblur/simplex_qp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "specdeblur/errors.hpp"

namespace specdeblur {
namespace {

void ValidateProblem(const QpProblem& p) {
  const Eigen::Index d = p.q.rows();
  if (d < 1 || p.q.cols() != d) ThrowInvalid("qp: Q must be square and nonempty");
  if (p.c.size() != d) ThrowInvalid("qp: linear term has the wrong size");
  if (!p.q.allFinite() || !p.c.allFinite()) ThrowInvalid("qp: non-finite problem data");
  const double scale = std::max(1.0, p.q.cwiseAbs().maxCoeff());
  if ((p.q - p.q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    ThrowInvalid("qp: Q is not symmetric");
  }
}

// Primal active-set iterations on the face {x_W = 0, sum x = 1}, started
// from a feasible point. Returns the number of steps taken.
int RefineActiveSet(const QpProblem& p, Vector& x, int max_steps) {
  const int d = p.dimension();
  std::vector<char> free(d);
  for (int i = 0; i < d; ++i) free[i] = x(i) > 0.0;
  double fx = p.Objective(x);
  const double grad_scale = std::max(1.0, (2.0 * p.q * x + p.c).cwiseAbs().maxCoeff());

  int steps = 0;
  while (steps < max_steps) {
    ++steps;
    std::vector<int> f_idx;
    for (int i = 0; i < d; ++i) {
      if (free[i]) f_idx.push_back(i);
    }
    const int nf = static_cast<int>(f_idx.size());
    const Vector g = 2.0 * p.q * x + p.c;

    // Equality-constrained step: [2 Q_FF 1; 1^T 0] [p; nu] = [-g_F; 0],
    // solved as p = -(2 Q_FF)^-1 (g_F + nu 1) with nu fixing sum(p) = 0.
    Matrix qff(nf, nf);
    Vector gf(nf);
    for (int a = 0; a < nf; ++a) {
      for (int b = 0; b < nf; ++b) qff(a, b) = 2.0 * p.q(f_idx[a], f_idx[b]);
      gf(a) = g(f_idx[a]);
    }
    Vector sol;
    Eigen::LLT<Matrix> llt(qff);
    if (llt.info() == Eigen::Success) {
      const Vector qg = llt.solve(gf);
      const Vector q1 = llt.solve(Vector::Ones(nf));
      sol = -(qg - (qg.sum() / q1.sum()) * q1);
    } else {
      Matrix kkt = Matrix::Zero(nf + 1, nf + 1);
      kkt.topLeftCorner(nf, nf) = qff;
      kkt.col(nf).head(nf).setOnes();
      kkt.row(nf).head(nf).setOnes();
      Vector rhs = Vector::Zero(nf + 1);
      rhs.head(nf) = -gf;
      Eigen::FullPivLU<Matrix> lu(kkt);
      sol = lu.solve(rhs).head(nf);
      if ((kkt.topLeftCorner(nf, nf) * sol + rhs.head(nf)).cwiseAbs().maxCoeff() >
          1e-6 * std::max(1.0, gf.cwiseAbs().maxCoeff())) {
        sol.resize(0);
      }
    }
    const bool newton_ok = sol.size() == nf && sol.allFinite() && gf.dot(sol) <= 0.0;

    Vector dir = Vector::Zero(d);
    if (newton_ok) {
      for (int a = 0; a < nf; ++a) dir(f_idx[a]) = sol(a);
    } else {
      // Singular face (zero curvature): projected steepest descent instead.
      double mean = 0.0;
      for (int i : f_idx) mean += g(i);
      mean /= nf;
      for (int i : f_idx) dir(i) = -(g(i) - mean);
    }

    const double dir_norm = dir.cwiseAbs().maxCoeff();
    if (dir_norm <= 1e-15) {
      // Stationary on the face; check the bound multipliers.
      double nu = 0.0;
      for (int i : f_idx) nu -= g(i);
      nu /= nf;
      int worst = -1;
      double worst_val = -1e-12 * grad_scale;
      for (int i = 0; i < d; ++i) {
        if (free[i]) continue;
        const double lambda = g(i) + nu;
        if (lambda < worst_val) {
          worst_val = lambda;
          worst = i;
        }
      }
      if (worst < 0) break;
      free[worst] = 1;
      continue;
    }

    double step = 1.0;
    if (!newton_ok) {
      const double curvature = dir.dot(p.q * dir);
      const double slope = g.dot(dir);
      step = curvature > 0.0 ? -slope / (2.0 * curvature) : std::numeric_limits<double>::infinity();
    }
    int blocking = -1;
    for (int i : f_idx) {
      if (dir(i) < 0.0) {
        const double ratio = -x(i) / dir(i);
        if (ratio < step) {
          step = ratio;
          blocking = i;
        }
      }
    }
    if (!std::isfinite(step)) break;

    Vector trial = x + step * dir;
    if (blocking >= 0) {
      trial(blocking) = 0.0;
      free[blocking] = 0;
    }
    for (int i = 0; i < d; ++i) {
      if (!free[i] || trial(i) < 0.0) trial(i) = 0.0;
    }
    trial /= trial.sum();
    const double ft = p.Objective(trial);
    if (ft > fx + 1e-13 * std::max(1.0, std::abs(fx))) break;  // round-off floor
    x = trial;
    fx = ft;
    if (blocking < 0 && newton_ok) {
      // Full Newton step: x minimizes the face; multipliers decide next.
      const Vector g2 = 2.0 * p.q * x + p.c;
      double nu = 0.0;
      int nfree = 0;
      for (int i = 0; i < d; ++i) {
        if (free[i]) {
          nu -= g2(i);
          ++nfree;
        }
      }
      nu /= nfree;
      int worst = -1;
      double worst_val = -1e-12 * grad_scale;
      for (int i = 0; i < d; ++i) {
        if (free[i]) continue;
        const double lambda = g2(i) + nu;
        if (lambda < worst_val) {
          worst_val = lambda;
          worst = i;
        }
      }
      if (worst < 0) break;
      free[worst] = 1;
    }
  }
  return steps;
}

}  // namespace

double QpProblem::Objective(const Vector& x) const { return x.dot(q * x) + c.dot(x); }

Vector QpProblem::Gradient(const Vector& x) const { return 2.0 * (q * x) + c; }

Vector ProjectSimplex(const Vector& v) {
  const Eigen::Index d = v.size();
  if (d == 0) ThrowInvalid("project_simplex: empty vector");
  if (!v.allFinite()) ThrowInvalid("project_simplex: non-finite input");
  std::vector<double> u(v.data(), v.data() + d);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vector x = (v.array() - theta).max(0.0);
  const double s = x.sum();
  if (s > 0.0) x /= s;
  return x;
}

double PowerMethodLambdaMax(const Matrix& q, int iterations, double rel_tol) {
  const Eigen::Index d = q.rows();
  Vector x = Vector::Ones(d) / std::sqrt(static_cast<double>(d));
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector y = q * x;
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    const double next = x.dot(y);
    x = y / norm;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::max(lambda, (q * x).norm());
}

double KktResidual(const QpProblem& p, const Vector& x, double lipschitz) {
  return (x - ProjectSimplex(x - p.Gradient(x) / lipschitz)).norm();
}

QpSolution SolveQp(const QpProblem& p, const QpOptions& options,
                   const std::optional<Vector>& start) {
  ValidateProblem(p);
  if (!(options.tol > 0.0)) ThrowInvalid("qp: tol must be positive");
  if (options.max_iter < 0) ThrowInvalid("qp: max_iter must be nonnegative");
  const int d = p.dimension();

  // Lipschitz constant of grad f = 2 Q x + c restricted to {sum s = 0}; the
  // simplex projection ignores gradient components along the ones vector.
  Matrix centered = p.q.rowwise() - p.q.colwise().mean();
  centered = (centered.colwise() - centered.rowwise().mean()).eval();
  double lip = 2.0 * PowerMethodLambdaMax(centered, options.power_iterations, options.power_tol);
  if (!(lip > 0.0)) lip = 1.0;

  Vector x = Vector::Constant(d, 1.0 / d);
  if (start) {
    if (start->size() != d) ThrowInvalid("qp: start point has the wrong size");
    x = ProjectSimplex(*start);
  }
  double fx = p.Objective(x);
  double residual = KktResidual(p, x, lip);
  QpSolution sol;

  auto accelerated = [&](int budget) {
    Vector y = x;
    double t = 1.0;
    for (int it = 0; it < budget && residual > options.tol; ++it) {
      ++sol.iterations;
      const Vector g = p.Gradient(y);
      Vector xn;
      for (;;) {
        xn = ProjectSimplex(y - g / lip);
        const Vector step = xn - y;
        // f is quadratic: f(y + s) = f(y) + g.s + s^T Q s exactly.
        if (step.dot(p.q * step) <= 0.5 * lip * step.squaredNorm() * (1.0 + 1e-12)) break;
        lip *= 2.0;
      }
      const double fn = p.Objective(xn);
      if (fn > fx) {
        // Adaptive restart: drop momentum and retry from the last iterate.
        y = x;
        t = 1.0;
        continue;
      }
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = xn + ((t - 1.0) / tn) * (xn - x);
      x = std::move(xn);
      fx = fn;
      t = tn;
      residual = KktResidual(p, x, lip);
    }
  };
  auto refine = [&] {
    if (residual <= 0.0) return;
    Vector refined = x;
    sol.refine_steps += RefineActiveSet(p, refined, options.max_refine_steps);
    const double fr = p.Objective(refined);
    if (fr <= fx) {
      x = std::move(refined);
      fx = fr;
      residual = KktResidual(p, x, lip);
    }
  };

  if (options.refine) {
    const int warmup = std::min(options.max_iter, options.warmup_iter);
    accelerated(warmup);
    refine();
    if (residual > options.tol) {
      accelerated(options.max_iter - warmup);
      refine();
    }
  } else {
    accelerated(options.max_iter);
  }

  sol.x = std::move(x);
  sol.objective = fx;
  sol.kkt_residual = residual;
  sol.converged = residual <= options.tol;
  return sol;
}

}  // namespace specdeblur
