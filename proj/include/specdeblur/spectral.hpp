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

#ifndef SPECDEBLUR_SPECTRAL_HPP_
#define SPECDEBLUR_SPECTRAL_HPP_

#include "specdeblur/features.hpp"
#include "specdeblur/image.hpp"

namespace specdeblur {

enum class SpectrumMethod {
  // Eigen-decomposition of A^T A, assembled from the feature-map
  // autocorrelation. Cost is independent of the image area beyond one
  // correlation pass.
  kGram,
  // SVD of the materialized Toeplitz matrix. Accurate for tiny sigma_min but
  // memory-bound; intended for small images and cross-checks.
  kSvd,
};

// Convolution eigenvalues sigma_i (nonincreasing) and unit-norm s1 x s2
// eigenvectors kappa_i of a feature map: the singular values / right
// singular vectors of Toeplitz(L(I), s1, s2).
struct ConvSpectrum {
  int s1 = 0;
  int s2 = 0;
  Vector eigenvalues;   // size s1*s2
  Matrix eigenvectors;  // column i is Vectorize(kappa_i)

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double sigma_max() const { return eigenvalues(0); }
  double sigma_min() const { return eigenvalues(eigenvalues.size() - 1); }
  Image Eigenvector(int i) const;
};

// Spectrum of an already filtered map. Throws kDegenerateInput for an
// all-zero map.
ConvSpectrum SpectrumOfFeatureMap(const Image& feature_map, int s1, int s2,
                                  SpectrumMethod method = SpectrumMethod::kGram);

ConvSpectrum ConvSpectrumOf(const Image& img, const FeatureFilter& f, int s1, int s2,
                            SpectrumMethod method = SpectrumMethod::kGram);

// sigma_min of the image under the feature filter.
double Sharpness(const Image& img, const FeatureFilter& f, int s1, int s2);

// sigma_min at probe size (s1 + m1 - 1) x (s2 + m2 - 1), the size of
// K (*) kappa_i for an m1 x m2 kernel. The recovery bounds and the
// necessary conditions on the kernel hold with this value.
double BoundSharpness(const Image& img, const FeatureFilter& f, int s1, int s2, int m1, int m2);

// sigma_max / sigma_min.
double ConvCondition(const Image& img, const FeatureFilter& f, int s1, int s2);

// Default sampling size for a kernel extent: ceil(1.5 * m).
int DefaultSamplingSize(int kernel_size);

}  // namespace specdeblur

#endif  // SPECDEBLUR_SPECTRAL_HPP_
