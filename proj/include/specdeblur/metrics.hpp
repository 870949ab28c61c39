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

#ifndef SPECDEBLUR_METRICS_HPP_
#define SPECDEBLUR_METRICS_HPP_

#include "specdeblur/image.hpp"

namespace specdeblur {

// Peak signal-to-noise ratio in dB for intensities with the given peak.
double Psnr(const Image& estimate, const Image& reference, double peak = 1.0);

// PSNR after the best integer translation |dr|,|dc| <= max_shift; the
// comparison window excludes a max_shift margin of the reference.
double AlignedPsnr(const Image& estimate, const Image& reference, int max_shift);

struct KernelAlignment {
  double error = 0.0;  // Frobenius distance after alignment
  int shift_row = 0;   // translation applied to the estimate
  int shift_col = 0;
};

// Zero-pads both kernels to a common canvas, translates the estimate to the
// cross-correlation peak (ties: smallest |shift|), returns the distance.
KernelAlignment AlignKernels(const Image& estimate, const Image& truth);
double KernelError(const Image& estimate, const Image& truth);

// Error bounds for the kernel minimizing the spectral regularizer.
//   noiseless: sqrt(2) sigma_max(B) / sigma_min(I0)
//   noisy:     sqrt(2) (sigma_max(B) + ccond(B) sqrt(s1 s2) eps) / sigma_min(I0)
double NoiselessKernelBound(double sigma_max_blurred, double sigma_min_sharp);
double NoisyKernelBound(double sigma_max_blurred, double ccond_blurred, int s1, int s2,
                        double epsilon, double sigma_min_sharp);

struct MetricsReport {
  double kernel_error = 0.0;
  double noiseless_bound = 0.0;
  double noisy_bound = 0.0;  // 0 for noiseless runs
  double psnr_blurry = 0.0;
  double psnr_restored = 0.0;
  double sigma_ratio = 0.0;  // sigma_max(B) / sigma_min(I0)
  double runtime_seconds = 0.0;
};

}  // namespace specdeblur

#endif  // SPECDEBLUR_METRICS_HPP_
