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

#include "specdeblur/regularizer.hpp"

#include <algorithm>
#include <cmath>

#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"

namespace specdeblur {
namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void Add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double Value() const { return sum + carry; }
};

}  // namespace

RegularizerHessian BuildHessian(const ConvSpectrum& spectrum, int m1, int m2,
                                HessianWeighting weighting) {
  const int d = spectrum.s1 * spectrum.s2;
  if (m1 < 1 || m2 < 1) ThrowInvalid("kernel size must be positive");
  if (d < 1 || spectrum.eigenvalues.size() != d || spectrum.eigenvectors.rows() != d ||
      spectrum.eigenvectors.cols() != d) {
    ThrowInvalid("build_hessian needs the complete spectrum (s1*s2 eigenpairs)");
  }

  RegularizerHessian out;
  out.m1 = m1;
  out.m2 = m2;
  out.s1 = spectrum.s1;
  out.s2 = spectrum.s2;
  out.sigma_max = spectrum.sigma_max();
  if (!(out.sigma_max > 0.0)) ThrowDegenerate("spectrum has no positive eigenvalue");
  const double floor = kSigmaClampRatio * out.sigma_max;

  // H depends on (p - p', q - q') only: accumulate the weighted eigenvector
  // autocorrelations at every lag, index order i = 0 .. d-1.
  const int lag1 = std::min(m1, spectrum.s1) - 1;
  const int lag2 = std::min(m2, spectrum.s2) - 1;
  const int w1 = 2 * lag1 + 1;
  const int w2 = 2 * lag2 + 1;
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(w1) * w2);
  double sigma_min = out.sigma_max;
  for (int i = 0; i < d; ++i) {
    double sigma = spectrum.eigenvalues(i);
    if (sigma < floor) {
      sigma = floor;
      ++out.clamped_count;
    }
    sigma_min = std::min(sigma_min, sigma);
    const double weight =
        weighting == HessianWeighting::kUnit ? 1.0 : 1.0 / (sigma * sigma);
    const Image r = Autocorrelation(spectrum.Eigenvector(i), lag1, lag2);
    for (int a = 0; a < w1; ++a) {
      for (int b = 0; b < w2; ++b) acc[a * w2 + b].Add(weight * r(a, b));
    }
  }
  out.sigma_min = sigma_min;

  const int dim = m1 * m2;
  out.h = Matrix::Zero(dim, dim);
  for (int p = 0; p < m1; ++p) {
    for (int q = 0; q < m2; ++q) {
      for (int p2 = 0; p2 < m1; ++p2) {
        const int dp = p - p2;
        if (std::abs(dp) > lag1) continue;
        for (int q2 = 0; q2 < m2; ++q2) {
          const int dq = q - q2;
          if (std::abs(dq) > lag2) continue;
          out.h(p * m2 + q, p2 * m2 + q2) = acc[(dp + lag1) * w2 + (dq + lag2)].Value();
        }
      }
    }
  }
  return out;
}

double HValue(const RegularizerHessian& h, const Image& x) {
  if (x.rows() != h.m1 || x.cols() != h.m2) ThrowInvalid("h_value: size mismatch");
  const Vector v = Vectorize(x);
  return v.dot(h.h * v);
}

double HValue(const RegularizerHessian& h, const Kernel& k) { return HValue(h, k.weights()); }

std::vector<double> NecessaryConditionSlacks(const ConvSpectrum& spectrum_b,
                                             double sigma_min_sharp, const Image& k) {
  if (!(sigma_min_sharp > 0.0)) ThrowInvalid("sigma_min of the sharp image must be positive");
  std::vector<double> slacks(spectrum_b.size());
  for (int i = 0; i < spectrum_b.size(); ++i) {
    const double response = Conv2dFull(k, spectrum_b.Eigenvector(i)).norm();
    slacks[i] = spectrum_b.eigenvalues(i) / sigma_min_sharp - response;
  }
  return slacks;
}

}  // namespace specdeblur
