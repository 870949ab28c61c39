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

#include <random>

#include "specdeblur/blind.hpp"
#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/spectral.hpp"
#include "specdeblur/synthetic.hpp"
#include "test_support.hpp"

namespace specdeblur {
namespace {

struct SmallCase {
  Image sharp;
  Kernel truth = Kernel::Delta(1, 1);
  Image blurred;
};

SmallCase MakeSmallCase(const std::string& kernel, int size, int m) {
  SmallCase c;
  c.sharp = MakeTestImage(TestPattern::kPolygons, size, size, 4);
  c.truth = MakeKernel(ParseKernelSpec(kernel, m));
  c.blurred = Conv2dFull(c.sharp, c.truth.weights());
  return c;
}

DeblurConfig SmallConfig(int m) {
  DeblurConfig cfg;
  cfg.m1 = cfg.m2 = m;
  return cfg;
}

TEST(KStepProblem, MatchesDenseOperator) {
  std::mt19937_64 rng(71);
  const Image b = testing::RandomImage(10, 9, rng, 0.0, 1.0);
  const Image latent = testing::RandomImage(10, 9, rng, 0.0, 1.0);
  const DeblurConfig cfg = SmallConfig(3);
  const RegularizerHessian h = ObservationHessian(b, cfg);
  const double alpha = 2.5;
  const QpProblem p = KStepProblem(b, latent, h, alpha);
  Matrix a(90, 9);
  for (int j = 0; j < 9; ++j) {
    Image e = Image::Zero(3, 3);
    e(j / 3, j % 3) = 1.0;
    a.col(j) = Vectorize(Conv2dPeriodic(latent, e));
  }
  const Matrix q = a.transpose() * a + alpha * h.h;
  const Vector c = -2.0 * a.transpose() * Vectorize(b);
  EXPECT_LT((p.q - q).cwiseAbs().maxCoeff(), 1e-10 * q.cwiseAbs().maxCoeff());
  EXPECT_LT((p.c - c).cwiseAbs().maxCoeff(), 1e-10 * c.cwiseAbs().maxCoeff());
}

TEST(KStep, OracleImageRecoversTheKernel) {
  const SmallCase c = MakeSmallCase("motion-line:length=5,angle=40", 40, 7);
  const DeblurConfig cfg = SmallConfig(7);
  const RegularizerHessian h = ObservationHessian(c.blurred, cfg);
  const KStepResult r = KStep(c.blurred, c.sharp, h, 0.0);
  EXPECT_LT((r.kernel.weights() - c.truth.weights()).norm(), 1e-4);
  EXPECT_LE(r.solution.kkt_residual, 1e-6);
}

TEST(KStep, LargeAlphaApproachesTheRegularizerMinimizer) {
  const SmallCase c = MakeSmallCase("gaussian:sigma=1", 40, 5);
  const DeblurConfig cfg = SmallConfig(5);
  const RegularizerHessian h = ObservationHessian(c.blurred, cfg);
  const KStepResult limit = EstimateKernel(h);
  const KStepResult r = KStep(c.blurred, c.blurred, h, 1e12);
  EXPECT_LT((r.kernel.weights() - limit.kernel.weights()).norm(), 1e-3);
}

TEST(KStep, IntermediateAlphaBeatsBothEndpoints) {
  const SmallCase c = MakeSmallCase("curve:length=8,seed=2", 40, 7);
  const DeblurConfig cfg = SmallConfig(7);
  const RegularizerHessian h = ObservationHessian(c.blurred, cfg);
  const Image latent = c.sharp;
  const double alpha = 10.0;
  const QpProblem p = KStepProblem(c.blurred, latent, h, alpha);
  const Vector k_mid = Vectorize(KStep(c.blurred, latent, h, alpha).kernel.weights());
  const Vector k_zero = Vectorize(KStep(c.blurred, latent, h, 0.0).kernel.weights());
  const Vector k_inf = Vectorize(EstimateKernel(h).kernel.weights());
  EXPECT_LE(p.Objective(k_mid), p.Objective(k_zero) + 1e-9);
  EXPECT_LE(p.Objective(k_mid), p.Objective(k_inf) + 1e-9);
}

TEST(KStep, RejectsMismatchedWarmStart) {
  const SmallCase c = MakeSmallCase("gaussian:sigma=1", 24, 3);
  const RegularizerHessian h = ObservationHessian(c.blurred, SmallConfig(3));
  EXPECT_THROW(KStep(c.blurred, c.blurred, h, 1.0, {}, Kernel::Delta(5, 5)), Error);
}

TEST(BlindDeblur, ZeroAlphaGivesTheNoBlurExplanation) {
  const SmallCase c = MakeSmallCase("gaussian:sigma=1.2", 48, 7);
  DeblurConfig cfg = SmallConfig(7);
  cfg.alpha = 0.0;
  cfg.max_outer = 20;
  const DeblurResult r = BlindDeblur(c.blurred, cfg);
  EXPECT_LT(KernelError(r.kernel.weights(), Kernel::Delta(7, 7).weights()), 0.05);
}

TEST(BlindDeblur, ObjectiveTraceIsNonincreasing) {
  const SmallCase c = MakeSmallCase("motion-line:length=5,angle=0", 48, 7);
  DeblurConfig cfg = SmallConfig(7);
  cfg.alpha = 30.0;
  cfg.max_outer = 25;
  const DeblurResult r = BlindDeblur(c.blurred, cfg);
  ASSERT_EQ(static_cast<int>(r.objective_trace.size()), r.iterations);
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] + 1e-6);
  }
  EXPECT_NEAR(r.kernel.weights().sum(), 1.0, 1e-9);
  EXPECT_GE(r.kernel.weights().minCoeff(), 0.0);
  EXPECT_EQ(r.restored.rows(), 48);
  EXPECT_NEAR(r.objective_trace.back(),
              BlindObjective(c.blurred, r.latent, r.kernel, ObservationHessian(c.blurred, cfg),
                             cfg.alpha, cfg.lambda),
              1e-9 * r.objective_trace.back());
}

TEST(AlphaSweep, KeepsInputOrderAndIsDeterministic) {
  const SmallCase c = MakeSmallCase("gaussian:sigma=1", 32, 5);
  DeblurConfig cfg = SmallConfig(5);
  cfg.max_outer = 5;
  const std::vector<double> alphas{100.0, 0.0, 10.0};
  const auto first = AlphaSweep(c.blurred, cfg, alphas);
  const auto second = AlphaSweep(c.blurred, cfg, alphas);
  ASSERT_EQ(first.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(first[i].alpha, alphas[i]);
    EXPECT_EQ(first[i].distance_to_delta, second[i].distance_to_delta);
    EXPECT_EQ(first[i].kernel.weights(), second[i].kernel.weights());
  }
  EXPECT_THROW(AlphaSweep(c.blurred, cfg, std::vector<double>{}), Error);
  EXPECT_THROW(AlphaSweep(c.blurred, cfg, std::vector<double>{-1.0}), Error);
}

TEST(DeblurConfig, Validation) {
  DeblurConfig cfg;
  EXPECT_EQ(cfg.sampling_rows(), 20);
  cfg.alpha = -1.0;
  EXPECT_THROW(ValidateDeblurConfig(cfg), Error);
  cfg = {};
  cfg.m1 = 0;
  EXPECT_THROW(ValidateDeblurConfig(cfg), Error);
  cfg = {};
  cfg.lambda = -0.1;
  EXPECT_THROW(ValidateDeblurConfig(cfg), Error);
}

TEST(FindAlphaThreshold, BracketsTheDeparture) {
  const Image sharp = MakeTestImage(TestPattern::kPolygons, 64, 64, 5);
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=0.7", 5));
  const Image b = SynthBlur(sharp, k, 0.005 * 68.0, 1, MakeDelta()).blurred;
  DeblurConfig cfg;
  cfg.m1 = cfg.m2 = 7;
  cfg.max_outer = 40;
  const ThresholdSearch t = FindAlphaThreshold(b, cfg, 1e-10, 1e-2, 0.15, 10);
  ASSERT_TRUE(t.bracketed);
  EXPECT_GT(t.alpha_star, 1e-10);
  EXPECT_LT(t.alpha_star, 1e-2);
  for (const SweepEntry& e : t.probes) {
    if (e.alpha >= t.alpha_star) EXPECT_GT(e.distance_to_delta, 0.15) << e.alpha;
  }
}

TEST(FindAlphaThreshold, ReportsAMissingBracket) {
  const Image sharp = MakeTestImage(TestPattern::kPolygons, 48, 48, 5);
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=0.7", 5));
  const Image b = SynthBlur(sharp, k, 0.005 * 52.0, 1, MakeDelta()).blurred;
  DeblurConfig cfg;
  cfg.m1 = cfg.m2 = 7;
  cfg.max_outer = 20;
  const ThresholdSearch t = FindAlphaThreshold(b, cfg, 1e3, 1e4, 0.15, 4);
  EXPECT_FALSE(t.bracketed);
  EXPECT_EQ(t.alpha_star, 1e3);
}

}  // namespace
}  // namespace specdeblur
