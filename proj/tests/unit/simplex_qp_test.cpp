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

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "specdeblur/errors.hpp"
#include "specdeblur/simplex_qp.hpp"

namespace specdeblur {
namespace {

QpProblem RandomPsdProblem(int d, std::mt19937_64& rng, double ridge) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(d + 2, d);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = n(rng);
  QpProblem p;
  p.q = g.transpose() * g + ridge * Matrix::Identity(d, d);
  p.c = Vector(d);
  for (int i = 0; i < d; ++i) p.c(i) = 3.0 * n(rng);
  return p;
}

// Minimum of the objective over the simplex grid with the given step.
double GridMinimum(const QpProblem& p, double step) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = std::numeric_limits<double>::infinity();
  Vector x(p.dimension());
  if (p.dimension() == 1) {
    x << 1.0;
    return p.Objective(x);
  }
  for (int i = 0; i <= n; ++i) {
    if (p.dimension() == 2) {
      x << i * step, 1.0 - i * step;
      best = std::min(best, p.Objective(x));
      continue;
    }
    for (int j = 0; j <= n - i; ++j) {
      x << i * step, j * step, 1.0 - (i + j) * step;
      best = std::min(best, p.Objective(x));
    }
  }
  return best;
}

TEST(ProjectSimplex, HandComputed) {
  Vector v(3);
  v << 0.9, -0.1, 0.3;
  const Vector x = ProjectSimplex(v);
  EXPECT_NEAR(x(0), 0.8, 1e-15);
  EXPECT_EQ(x(1), 0.0);
  EXPECT_NEAR(x(2), 0.2, 1e-15);
}

TEST(ProjectSimplex, IsIdempotentAndFeasible) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vector v(1 + trial % 12);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = n(rng);
    const Vector x = ProjectSimplex(v);
    EXPECT_NEAR(x.sum(), 1.0, 1e-12);
    EXPECT_GE(x.minCoeff(), 0.0);
    EXPECT_LT((ProjectSimplex(x) - x).cwiseAbs().maxCoeff(), 1e-14);
    // Variational inequality: (v - x).(y - x) <= 0 for every vertex y.
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      Vector y = Vector::Zero(v.size());
      y(j) = 1.0;
      EXPECT_LE((v - x).dot(y - x), 1e-12);
    }
  }
}

TEST(PowerMethod, LargestEigenvalue) {
  Matrix q = Matrix::Zero(3, 3);
  q.diagonal() << 1.0, 5.0, 2.0;
  EXPECT_NEAR(PowerMethodLambdaMax(q, 500, 1e-14), 5.0, 1e-8);
}

TEST(SolveQp, DiagonalCase) {
  QpProblem p;
  p.q = Matrix::Zero(2, 2);
  p.q.diagonal() << 1.0, 10.0;
  p.c = Vector::Zero(2);
  const QpSolution s = SolveQp(p);
  EXPECT_TRUE(s.converged);
  EXPECT_NEAR(s.x(0), 10.0 / 11.0, 1e-6);
  EXPECT_NEAR(s.x(1), 1.0 / 11.0, 1e-6);
  EXPECT_LE(s.kkt_residual, 1e-6);
}

TEST(SolveQp, MatchesGridSearchUpToThreeDimensions) {
  std::mt19937_64 rng(52);
  for (int d = 1; d <= 3; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const QpProblem p = RandomPsdProblem(d, rng, 0.0);
      const QpSolution s = SolveQp(p);
      EXPECT_LE(s.kkt_residual, 1e-6);
      EXPECT_NEAR(s.x.sum(), 1.0, 1e-12);
      EXPECT_GE(s.x.minCoeff(), 0.0);
      const double grid = GridMinimum(p, 1e-3);
      EXPECT_LE(s.objective, grid + 1e-9);
      EXPECT_NEAR(s.objective, grid, 1e-3 * std::max(1.0, std::abs(grid)));
    }
  }
}

TEST(SolveQp, IllConditionedProblemReachesKkt) {
  std::mt19937_64 rng(53);
  const int d = 40;
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix basis(d, d);
  for (Eigen::Index i = 0; i < basis.size(); ++i) basis.data()[i] = n(rng);
  const Matrix u = Eigen::HouseholderQR<Matrix>(basis).householderQ();
  Vector spectrum(d);
  for (int i = 0; i < d; ++i) spectrum(i) = std::pow(10.0, 7.0 * i / (d - 1));
  QpProblem p;
  p.q = u * spectrum.asDiagonal() * u.transpose();
  p.q = 0.5 * (p.q + p.q.transpose()).eval();
  p.c = Vector(d);
  for (int i = 0; i < d; ++i) p.c(i) = 1e3 * n(rng);
  const QpSolution s = SolveQp(p);
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.kkt_residual, 1e-6);
  // Optimality: no vertex direction decreases the objective to first order.
  const Vector g = p.Gradient(s.x);
  double gx = g.dot(s.x);
  EXPECT_GE(g.minCoeff() - gx, -1e-6 * g.cwiseAbs().maxCoeff());
}

TEST(SolveQp, WarmStartIsProjected) {
  std::mt19937_64 rng(54);
  const QpProblem p = RandomPsdProblem(6, rng, 0.1);
  Vector start = Vector::Constant(6, 2.0);
  const QpSolution warm = SolveQp(p, {}, start);
  const QpSolution cold = SolveQp(p);
  EXPECT_NEAR(warm.objective, cold.objective, 1e-9 * std::max(1.0, std::abs(cold.objective)));
}

TEST(SolveQp, ReportsNonConvergenceOnTinyBudget) {
  std::mt19937_64 rng(55);
  const QpProblem p = RandomPsdProblem(8, rng, 0.1);
  QpOptions o;
  o.max_iter = 1;
  o.refine = false;
  const QpSolution s = SolveQp(p, o);
  EXPECT_FALSE(s.converged);
  EXPECT_NEAR(s.x.sum(), 1.0, 1e-12);
}

TEST(SolveQp, ValidatesInput) {
  QpProblem p;
  p.q = Matrix::Identity(2, 2);
  p.c = Vector::Zero(3);
  EXPECT_THROW(SolveQp(p), Error);
  p.c = Vector::Zero(2);
  p.q(0, 1) = 1.0;
  EXPECT_THROW(SolveQp(p), Error);
}

}  // namespace
}  // namespace specdeblur
