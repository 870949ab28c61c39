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

#include <cmath>

#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"
#include "specdeblur/features.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/synthetic.hpp"

namespace specdeblur {
namespace {

TEST(MakeKernel, EveryFamilyIsOnTheSimplex) {
  for (const char* spec : {"gaussian:sigma=2", "motion-line:length=6,angle=33",
                           "random-sparse:nonzeros=9,seed=4", "curve:length=12,seed=9"}) {
    for (int size : {5, 9, 13}) {
      const Kernel k = MakeKernel(ParseKernelSpec(spec, size));
      EXPECT_EQ(k.rows(), size) << spec;
      EXPECT_NEAR(k.weights().sum(), 1.0, 1e-12) << spec;
      EXPECT_GE(k.weights().minCoeff(), 0.0) << spec;
    }
  }
}

TEST(MakeKernel, GaussianWithZeroSigmaIsTheImpulse) {
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=0", 7));
  EXPECT_EQ(k.weights(), Kernel::Delta(7, 7).weights());
  const Kernel narrow = MakeKernel(ParseKernelSpec("gaussian:sigma=0.01", 7));
  EXPECT_NEAR(narrow(3, 3), 1.0, 1e-12);
}

TEST(MakeKernel, HorizontalMotionLineHasEqualWeights) {
  const Kernel k = MakeKernel(ParseKernelSpec("motion-line:length=9,angle=0", 9));
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) EXPECT_NEAR(k(r, c), r == 4 ? 1.0 / 9.0 : 0.0, 1e-15);
  }
}

TEST(MakeKernel, VerticalMotionLineIsTheTranspose) {
  const Kernel h = MakeKernel(ParseKernelSpec("motion-line:length=5,angle=0", 7));
  const Kernel v = MakeKernel(ParseKernelSpec("motion-line:length=5,angle=90", 7));
  EXPECT_LT((h.weights().transpose() - v.weights()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MakeKernel, DiagonalMotionLineWeightsAreSegmentLengths) {
  // A 45 degree segment through pixel centers crosses each diagonal pixel
  // over a length of sqrt(2), and only touches the off-diagonal corners.
  const Kernel k = MakeKernel(ParseKernelSpec("motion-line:length=4.242640687119285,angle=45", 5));
  for (int i = 1; i <= 3; ++i) EXPECT_NEAR(k(4 - i, i), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(k.weights().sum(), 1.0, 1e-12);
}

TEST(MakeKernel, RandomSparseSupportAndSeeds) {
  const Kernel a = MakeKernel(ParseKernelSpec("random-sparse:nonzeros=7,seed=3", 9));
  const Kernel b = MakeKernel(ParseKernelSpec("random-sparse:nonzeros=7,seed=3", 9));
  const Kernel c = MakeKernel(ParseKernelSpec("random-sparse:nonzeros=7,seed=4", 9));
  EXPECT_EQ((a.weights().array() > 0.0).count(), 7);
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_NE(a.weights(), c.weights());
}

TEST(MakeKernel, CurveIsSeeded) {
  const Kernel a = MakeKernel(ParseKernelSpec("curve:length=10,seed=5", 9));
  const Kernel b = MakeKernel(ParseKernelSpec("curve:length=10,seed=5", 9));
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_GT((a.weights().array() > 0.0).count(), 5);
}

TEST(ParseKernelSpec, RejectsBadInput) {
  EXPECT_THROW(ParseKernelSpec("box", 9), Error);
  EXPECT_THROW(ParseKernelSpec("gaussian:sigma", 9), Error);
  EXPECT_THROW(ParseKernelSpec("gaussian:width=3", 9), Error);
  EXPECT_THROW(ParseKernelSpec("gaussian:sigma=abc", 9), Error);
  EXPECT_THROW(MakeKernel(ParseKernelSpec("gaussian:sigma=-1", 9)), Error);
  EXPECT_THROW(MakeKernel(ParseKernelSpec("random-sparse:nonzeros=100", 9)), Error);
  EXPECT_EQ(ParseKernelSpec("curve:size=11", 9).size, 11);
}

TEST(MakeTestImage, DeterministicAndInRange) {
  for (TestPattern p : {TestPattern::kSteps, TestPattern::kBars, TestPattern::kChecker,
                        TestPattern::kPolygons, TestPattern::kMixed}) {
    const Image a = MakeTestImage(p, 40, 30, 8);
    EXPECT_EQ(a, MakeTestImage(p, 40, 30, 8));
    EXPECT_EQ(a.rows(), 40);
    EXPECT_EQ(a.cols(), 30);
    EXPECT_GE(a.minCoeff(), 0.0);
    EXPECT_LE(a.maxCoeff(), 1.0);
    EXPECT_GT(a.maxCoeff() - a.minCoeff(), 0.1);
  }
  EXPECT_THROW(ParseTestPattern("lena"), Error);
}

TEST(SynthBlur, NoiselessIsExactConvolution) {
  const Image sharp = MakeTestImage(TestPattern::kSteps, 20, 20, 1);
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=1", 5));
  const SyntheticBlur s = SynthBlur(sharp, k, 0.0, 3, MakeLog(1.0));
  EXPECT_EQ(s.blurred, Conv2dFull(sharp, k.weights()));
  EXPECT_EQ(s.noise.norm(), 0.0);
}

TEST(SynthBlur, NoiseHasTheRequestedFeatureNorm) {
  const Image sharp = MakeTestImage(TestPattern::kBars, 24, 24, 2);
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=1", 5));
  for (const FeatureFilter& f : {MakeDelta(), MakeLog(1.0)}) {
    const SyntheticBlur s = SynthBlur(sharp, k, 0.37, 11, f);
    EXPECT_NEAR(ApplyFilter(f, s.noise).norm(), 0.37, 1e-10);
    EXPECT_LT((s.blurred - Conv2dFull(sharp, k.weights()) - s.noise).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_THROW(SynthBlur(sharp, k, -1.0, 1, MakeDelta()), Error);
}

TEST(SynthBlur, PsnrFallsAsNoiseGrows) {
  const Image sharp = MakeTestImage(TestPattern::kPolygons, 32, 32, 2);
  const Kernel k = MakeKernel(ParseKernelSpec("gaussian:sigma=1", 5));
  const Image clean = Conv2dFull(sharp, k.weights());
  double last = INFINITY;
  for (double eps : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    const double psnr = Psnr(SynthBlur(sharp, k, eps, 5, MakeLog(1.0)).blurred, clean);
    EXPECT_LT(psnr, last);
    last = psnr;
  }
}

}  // namespace
}  // namespace specdeblur
