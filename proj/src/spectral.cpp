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

#include "specdeblur/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"

namespace specdeblur {
namespace {

// Eigenvectors are only defined up to sign; fix it so that the entry of
// largest magnitude (first one on ties) is positive.
void CanonicalizeSigns(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best * (1.0 + 1e-12)) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, j) < 0.0) v.col(j) = -v.col(j);
  }
}

}  // namespace

Image ConvSpectrum::Eigenvector(int i) const {
  if (i < 0 || i >= size()) ThrowInvalid("eigenvector index out of range");
  return Devectorize(eigenvectors.col(i), s1, s2);
}

ConvSpectrum SpectrumOfFeatureMap(const Image& feature_map, int s1, int s2,
                                  SpectrumMethod method) {
  if (s1 < 1 || s2 < 1) ThrowInvalid("sampling sizes must be positive");
  if (feature_map.size() == 0 || feature_map.cwiseAbs().maxCoeff() == 0.0) {
    ThrowDegenerate("convolution spectrum of an all-zero image");
  }
  if (!feature_map.allFinite()) ThrowInvalid("feature map has non-finite values");
  const ToeplitzOperator a = Toeplitz(feature_map, s1, s2);
  const int d = s1 * s2;

  ConvSpectrum spec;
  spec.s1 = s1;
  spec.s2 = s2;
  spec.eigenvalues.resize(d);
  spec.eigenvectors.resize(d, d);

  if (method == SpectrumMethod::kSvd) {
    Eigen::BDCSVD<Matrix> svd(a.Dense(), Eigen::ComputeThinV);
    spec.eigenvalues = svd.singularValues();
    spec.eigenvectors = svd.matrixV();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a.Gram());
    if (eig.info() != Eigen::Success) ThrowDegenerate("eigen-decomposition failed");
    // Ascending order from the solver; reverse to sigma_1 >= ... >= sigma_min.
    for (int i = 0; i < d; ++i) {
      const double lambda = eig.eigenvalues()(d - 1 - i);
      spec.eigenvalues(i) = std::sqrt(std::max(lambda, 0.0));
      spec.eigenvectors.col(i) = eig.eigenvectors().col(d - 1 - i);
    }
  }
  CanonicalizeSigns(spec.eigenvectors);
  return spec;
}

ConvSpectrum ConvSpectrumOf(const Image& img, const FeatureFilter& f, int s1, int s2,
                            SpectrumMethod method) {
  if (img.size() == 0 || img.cwiseAbs().maxCoeff() == 0.0) {
    ThrowDegenerate("convolution spectrum of an all-zero image");
  }
  return SpectrumOfFeatureMap(ApplyFilter(f, img), s1, s2, method);
}

double Sharpness(const Image& img, const FeatureFilter& f, int s1, int s2) {
  return ConvSpectrumOf(img, f, s1, s2).sigma_min();
}

double BoundSharpness(const Image& img, const FeatureFilter& f, int s1, int s2, int m1, int m2) {
  if (m1 < 1 || m2 < 1) ThrowInvalid("kernel size must be positive");
  return Sharpness(img, f, s1 + m1 - 1, s2 + m2 - 1);
}

double ConvCondition(const Image& img, const FeatureFilter& f, int s1, int s2) {
  const ConvSpectrum spec = ConvSpectrumOf(img, f, s1, s2);
  if (spec.sigma_min() <= 0.0) return std::numeric_limits<double>::infinity();
  return spec.sigma_max() / spec.sigma_min();
}

int DefaultSamplingSize(int kernel_size) {
  if (kernel_size < 1) ThrowInvalid("kernel size must be positive");
  return (3 * kernel_size + 1) / 2;
}

}  // namespace specdeblur
