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

#ifndef SPECDEBLUR_REGULARIZER_HPP_
#define SPECDEBLUR_REGULARIZER_HPP_

#include <vector>

#include "specdeblur/image.hpp"
#include "specdeblur/spectral.hpp"

namespace specdeblur {

// Quadratic kernel regularizer h(K) = vec(K)^T H vec(K) with
//   H = sum_i A(kappa_i)^T A(kappa_i) / sigma_i^2,
// A(.) the m1 x m2 Toeplitz operator of each convolution eigenvector of the
// observed image.
struct RegularizerHessian {
  int m1 = 0;
  int m2 = 0;
  int s1 = 0;
  int s2 = 0;
  Matrix h;
  double sigma_max = 0.0;
  double sigma_min = 0.0;   // after clamping
  int clamped_count = 0;    // eigenvalues raised to the clamp floor
};

enum class HessianWeighting {
  kInverseSquared,  // 1 / sigma_i^2, the regularizer proper
  kUnit,            // weight 1; equals s1*s2 * Identity
};

// Relative floor applied to sigma_i before weighting.
inline constexpr double kSigmaClampRatio = 1e-12;

RegularizerHessian BuildHessian(const ConvSpectrum& spectrum, int m1, int m2,
                                HessianWeighting weighting = HessianWeighting::kInverseSquared);

// Quadratic form value for any m1 x m2 matrix (not necessarily a kernel).
double HValue(const RegularizerHessian& h, const Image& x);
double HValue(const RegularizerHessian& h, const Kernel& k);

// Per-index slack sigma_i(B) / sigma_min(I0) - ||K * kappa_i(B)||_F. All
// slacks are nonnegative for the true kernel of a noiseless blur when
// sigma_min(I0) comes from BoundSharpness.
std::vector<double> NecessaryConditionSlacks(const ConvSpectrum& spectrum_b,
                                             double sigma_min_sharp, const Image& k);

}  // namespace specdeblur

#endif  // SPECDEBLUR_REGULARIZER_HPP_
