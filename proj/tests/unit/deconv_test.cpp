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

#include "specdeblur/convolution.hpp"
#include "specdeblur/deconv.hpp"
#include "specdeblur/errors.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/synthetic.hpp"
#include "test_support.hpp"

namespace specdeblur {
namespace {

using testing::RandomImage;
using testing::RandomKernel;

double Dot(const Image& a, const Image& b) { return a.cwiseProduct(b).sum(); }

TEST(TotalVariation, Checkerboard) {
  Image x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_DOUBLE_EQ(TotalVariation(x), 8.0);
  EXPECT_EQ(TotalVariation(Image::Constant(5, 4, 0.3)), 0.0);
}

TEST(TotalVariation, BlurNeverIncreasesIt) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const Image sharp = RandomImage(10 + trial % 7, 12, rng, 0.0, 1.0);
    const Kernel k = RandomKernel(1 + trial % 5, 1 + trial % 4, rng);
    const Image b = Conv2dFull(sharp, k.weights());
    const Image embedded = Embed(sharp, static_cast<int>(b.rows()), static_cast<int>(b.cols()), 0, 0);
    EXPECT_LE(TotalVariation(b), TotalVariation(embedded) + 1e-9);
  }
}

TEST(SoftThreshold, HandComputed) {
  Image v(1, 4);
  v << -3.0, -0.5, 0.2, 2.0;
  Image expected(1, 4);
  expected << -2.0, 0.0, 0.0, 1.0;
  EXPECT_EQ(detail::SoftThreshold(v, 1.0), expected);
}

TEST(Gradients, PeriodicForwardDifferences) {
  Image x(2, 3);
  x << 1, 2, 4, 0, 3, 9;
  Image gx(2, 3);
  gx << 1, 2, -3, 3, 6, -9;
  Image gy(2, 3);
  gy << -1, 1, 5, 1, -1, -5;
  EXPECT_EQ(detail::GradX(x), gx);
  EXPECT_EQ(detail::GradY(x), gy);
}

TEST(Conv2dPeriodicAdjoint, IsTheAdjoint) {
  std::mt19937_64 rng(62);
  const Image k = RandomImage(3, 4, rng);
  const Image u = RandomImage(9, 8, rng);
  const Image v = RandomImage(9, 8, rng);
  EXPECT_NEAR(Dot(Conv2dPeriodic(u, k), v), Dot(u, detail::Conv2dPeriodicAdjoint(v, k)), 1e-12);
}

TEST(SolveQuadraticStep, SatisfiesNormalEquations) {
  std::mt19937_64 rng(63);
  const Image b = RandomImage(12, 10, rng);
  const Kernel k = RandomKernel(3, 3, rng);
  const Image wx = RandomImage(12, 10, rng);
  const Image wy = RandomImage(12, 10, rng);
  const double weight = 0.37;
  const Image x = detail::SolveQuadraticStep(b, k, wx, wy, weight);
  // Weak form with random test images r:
  //   <2 K x - 2 b, K r> + weight (<Dx x - wx, Dx r> + <Dy x - wy, Dy r>) = 0.
  for (int trial = 0; trial < 10; ++trial) {
    const Image r = RandomImage(12, 10, rng);
    const Image kr = Conv2dPeriodic(r, k.weights());
    const double lhs = 2.0 * Dot(Conv2dPeriodic(x, k.weights()) - b, kr) +
                       weight * (Dot(detail::GradX(x) - wx, detail::GradX(r)) +
                                 Dot(detail::GradY(x) - wy, detail::GradY(r)));
    EXPECT_NEAR(lhs, 0.0, 1e-10 * (b.norm() + wx.norm() + wy.norm()) * r.norm());
  }
}

TEST(TvDeconv, ZeroLambdaInvertsAnInvertibleKernel) {
  std::mt19937_64 rng(64);
  const Image sharp = RandomImage(16, 14, rng, 0.0, 1.0);
  Image w = Image::Zero(3, 3);
  w(1, 1) = 0.7;
  w(1, 2) = 0.2;
  w(2, 1) = 0.1;
  const Kernel k = Kernel::FromWeights(w);
  TvSolverConfig cfg;
  cfg.lambda = 0.0;
  const TvResult r = TvDeconv(Conv2dPeriodic(sharp, w), k, cfg);
  EXPECT_LT((r.image - sharp).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(r.iterations, 1);
}

TEST(TvDeconv, DoesNotIncreaseTheObjectiveFromTheObservation) {
  std::mt19937_64 rng(65);
  const Image sharp = MakeTestImage(TestPattern::kPolygons, 48, 48, 3);
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=1", 5));
  const Image b = Conv2dFull(sharp, k.weights());
  const TvResult r = TvDeconv(b, k);
  EXPECT_LE(r.objective, DeconvObjective(b, b, k, 0.0015));
  EXPECT_NEAR(r.objective, DeconvObjective(b, r.image, k, 0.0015), 1e-12);
}

TEST(TvDeconv, KnownKernelRestoresDetail) {
  const Image sharp = MakeTestImage(TestPattern::kPolygons, 96, 96, 5);
  const Kernel k = MakeKernel(ParseKernelSpec("motion-line:length=7,angle=20", 9));
  const Image b = Conv2dFull(sharp, k.weights());
  const TvResult r = TvDeconv(b, k);
  const double before = Psnr(CropToSharp(b, 9, 9), sharp);
  const double after = Psnr(CropToSharp(r.image, 9, 9), sharp);
  EXPECT_GT(after, before + 5.0);
}

TEST(DeconvObjective, MatchesDefinition) {
  std::mt19937_64 rng(66);
  const Image b = RandomImage(7, 7, rng);
  const Image latent = RandomImage(7, 7, rng);
  const Kernel k = RandomKernel(3, 3, rng);
  const double data = (b - Conv2dPeriodic(latent, k.weights())).squaredNorm();
  EXPECT_NEAR(DeconvObjective(b, latent, k, 0.5), data + 0.5 * TotalVariation(latent), 1e-12);
  EXPECT_THROW(DeconvObjective(b, Image::Zero(6, 7), k, 0.5), Error);
}

TEST(CropToSharp, UndoesFullConvolutionGeometry) {
  const Image latent = Image::Zero(20, 18);
  const Image c = CropToSharp(latent, 5, 3);
  EXPECT_EQ(c.rows(), 16);
  EXPECT_EQ(c.cols(), 16);
}

TEST(TvSolverConfig, Validation) {
  TvSolverConfig cfg;
  cfg.lambda = -1.0;
  EXPECT_THROW(ValidateTvConfig(cfg), Error);
  cfg = {};
  cfg.beta_rate = 1.0;
  EXPECT_THROW(ValidateTvConfig(cfg), Error);
  cfg = {};
  EXPECT_NO_THROW(ValidateTvConfig(cfg));
}

}  // namespace
}  // namespace specdeblur
