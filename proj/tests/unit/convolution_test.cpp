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
#include "specdeblur/errors.hpp"
#include "test_support.hpp"

namespace specdeblur {
namespace {

using testing::NaiveFullConv;
using testing::NaiveToeplitz;
using testing::RandomImage;

TEST(Conv2dFull, HandComputed) {
  Image x(2, 2);
  x << 1, 2, 3, 4;
  const Image y = Image::Ones(2, 2);
  Image expected(3, 3);
  expected << 1, 3, 2, 4, 10, 6, 3, 7, 4;
  EXPECT_EQ(Conv2dFull(x, y), expected);
}

TEST(Conv2dFull, MatchesDefinition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> dim(1, 12);
    const Image x = RandomImage(dim(rng), dim(rng), rng);
    const Image y = RandomImage(dim(rng) % 7 + 1, dim(rng) % 7 + 1, rng);
    EXPECT_LT((Conv2dFull(x, y) - NaiveFullConv(x, y)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Conv2dFull, Commutes) {
  std::mt19937_64 rng(12);
  const Image x = RandomImage(9, 5, rng);
  const Image y = RandomImage(4, 6, rng);
  EXPECT_LT((Conv2dFull(x, y) - Conv2dFull(y, x)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Conv2dValid, IsCentralCropOfFull) {
  std::mt19937_64 rng(13);
  const Image x = RandomImage(10, 8, rng);
  const Image y = RandomImage(3, 4, rng);
  const Image full = NaiveFullConv(x, y);
  const Image valid = Conv2dValid(x, y);
  ASSERT_EQ(valid.rows(), 8);
  ASSERT_EQ(valid.cols(), 5);
  EXPECT_LT((valid - full.block(2, 3, 8, 5)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(Conv2dValid(y, x), Error);
}

TEST(Conv2dPeriodic, MatchesModularDefinition) {
  std::mt19937_64 rng(14);
  const Image x = RandomImage(7, 9, rng);
  const Image k = RandomImage(3, 5, rng);
  const Image out = Conv2dPeriodic(x, k);
  for (int p = 0; p < 7; ++p) {
    for (int q = 0; q < 9; ++q) {
      double s = 0.0;
      for (int u = 0; u < 3; ++u) {
        for (int v = 0; v < 5; ++v) s += k(u, v) * x(((p - u + 1) % 7 + 7) % 7, ((q - v + 2) % 9 + 9) % 9);
      }
      EXPECT_NEAR(out(p, q), s, 1e-12);
    }
  }
}

TEST(Conv2dPeriodic, CenteredImpulseIsIdentity) {
  std::mt19937_64 rng(15);
  const Image x = RandomImage(6, 6, rng);
  EXPECT_LT((Conv2dPeriodic(x, Kernel::Delta(5, 3).weights()) - x).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Conv2dPeriodic, EqualsFullConvolutionOfZeroPaddedImage) {
  std::mt19937_64 rng(16);
  const Image sharp = RandomImage(8, 8, rng);
  const Image k = RandomImage(5, 5, rng);
  const Image padded = Embed(sharp, 12, 12, 2, 2);
  EXPECT_LT((Conv2dPeriodic(padded, k) - NaiveFullConv(sharp, k)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Vectorize, RowMajorRoundTrip) {
  Image x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  const Vector v = Vectorize(x);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(v(i), i + 1);
  EXPECT_EQ(Devectorize(v, 2, 3), x);
  EXPECT_THROW(Devectorize(v, 4, 2), Error);
}

TEST(Autocorrelation, MatchesDefinition) {
  std::mt19937_64 rng(17);
  const Image x = RandomImage(6, 7, rng);
  const Image r = Autocorrelation(x, 3, 2);
  ASSERT_EQ(r.rows(), 7);
  ASSERT_EQ(r.cols(), 5);
  for (int dr = -3; dr <= 3; ++dr) {
    for (int dc = -2; dc <= 2; ++dc) {
      double s = 0.0;
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 7; ++j) {
          if (i + dr >= 0 && i + dr < 6 && j + dc >= 0 && j + dc < 7) s += x(i, j) * x(i + dr, j + dc);
        }
      }
      EXPECT_NEAR(r(dr + 3, dc + 2), s, 1e-12);
    }
  }
}

TEST(ToeplitzOperator, DenseMatchesColumnOracle) {
  std::mt19937_64 rng(18);
  const Image x = RandomImage(6, 5, rng);
  const ToeplitzOperator a = Toeplitz(x, 3, 4);
  EXPECT_EQ(a.rows(), 8 * 8);
  EXPECT_EQ(a.cols(), 12);
  EXPECT_LT((a.Dense() - NaiveToeplitz(x, 3, 4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ToeplitzOperator, ApplyIsConvolution) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const Image x = RandomImage(4 + trial, 9 - trial % 3, rng);
    const Image y = RandomImage(1 + trial % 4, 2 + trial % 3, rng);
    const ToeplitzOperator a = Toeplitz(x, static_cast<int>(y.rows()), static_cast<int>(y.cols()));
    const Vector lhs = a.Apply(Vectorize(y));
    const Vector rhs = Vectorize(NaiveFullConv(x, y));
    EXPECT_LT((lhs - rhs).norm(), 1e-12 * rhs.norm());
  }
}

TEST(ToeplitzOperator, TransposeIsAdjoint) {
  std::mt19937_64 rng(20);
  const Image x = RandomImage(7, 6, rng);
  const ToeplitzOperator a = Toeplitz(x, 3, 3);
  const Vector v = Vectorize(RandomImage(3, 3, rng));
  const Vector w = Vectorize(RandomImage(9, 8, rng));
  EXPECT_NEAR(a.Apply(v).dot(w), v.dot(a.ApplyTranspose(w)), 1e-12);
  EXPECT_LT((a.ApplyTranspose(w) - a.Dense().transpose() * w).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ToeplitzOperator, GramMatchesDenseProduct) {
  std::mt19937_64 rng(21);
  const Image x = RandomImage(9, 7, rng);
  const ToeplitzOperator a = Toeplitz(x, 4, 5);
  const Matrix dense = NaiveToeplitz(x, 4, 5);
  const Matrix gram = a.Gram();
  EXPECT_LT((gram - dense.transpose() * dense).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((gram - gram.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ConvolutionNorm, YoungInequalityOnRandomPairs) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Image x = RandomImage(3 + trial % 9, 4 + trial % 5, rng);
    const Image y = RandomImage(1 + trial % 6, 2 + trial % 4, rng);
    EXPECT_LE(Conv2dFull(x, y).norm(), x.norm() * L1Norm(y) + 1e-10);
  }
}

TEST(Toeplitz, RejectsEmptyProbe) {
  EXPECT_THROW(Toeplitz(Image::Ones(3, 3), 0, 2), Error);
  EXPECT_THROW(Toeplitz(Image(0, 0), 2, 2), Error);
}

}  // namespace
}  // namespace specdeblur
