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

#include "specdeblur/metrics.hpp"

#include <cmath>
#include <limits>

#include "specdeblur/errors.hpp"

namespace specdeblur {

double Psnr(const Image& estimate, const Image& reference, double peak) {
  if (estimate.rows() != reference.rows() || estimate.cols() != reference.cols()) {
    ThrowInvalid("psnr: size mismatch");
  }
  if (reference.size() == 0) ThrowInvalid("psnr: empty image");
  const double mse = (estimate - reference).squaredNorm() / static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double AlignedPsnr(const Image& estimate, const Image& reference, int max_shift) {
  if (estimate.rows() != reference.rows() || estimate.cols() != reference.cols()) {
    ThrowInvalid("aligned psnr: size mismatch");
  }
  if (max_shift < 0) ThrowInvalid("aligned psnr: negative shift");
  const Eigen::Index h = reference.rows() - 2 * max_shift;
  const Eigen::Index w = reference.cols() - 2 * max_shift;
  if (h < 1 || w < 1) ThrowInvalid("aligned psnr: image too small for the shift range");
  const Image ref = reference.block(max_shift, max_shift, h, w);
  double best = -std::numeric_limits<double>::infinity();
  for (int dr = -max_shift; dr <= max_shift; ++dr) {
    for (int dc = -max_shift; dc <= max_shift; ++dc) {
      best = std::max(best, Psnr(estimate.block(max_shift + dr, max_shift + dc, h, w), ref));
    }
  }
  return best;
}

KernelAlignment AlignKernels(const Image& estimate, const Image& truth) {
  if (estimate.size() == 0 || truth.size() == 0) ThrowInvalid("kernel error: empty kernel");
  const int rows = static_cast<int>(std::max(estimate.rows(), truth.rows()));
  const int cols = static_cast<int>(std::max(estimate.cols(), truth.cols()));
  // Common canvas, each kernel centered, with room for every shift.
  const int pad_r = rows - 1;
  const int pad_c = cols - 1;
  const int big_r = rows + 2 * pad_r;
  const int big_c = cols + 2 * pad_c;
  auto place = [&](const Image& k, int dr, int dc) {
    const int r0 = pad_r + (rows - static_cast<int>(k.rows())) / 2 + dr;
    const int c0 = pad_c + (cols - static_cast<int>(k.cols())) / 2 + dc;
    return Embed(k, big_r, big_c, r0, c0);
  };
  const Image t = place(truth, 0, 0);

  KernelAlignment best;
  double best_corr = -std::numeric_limits<double>::infinity();
  int best_dist2 = std::numeric_limits<int>::max();
  const double scale = estimate.norm() * truth.norm();
  for (int dr = -pad_r; dr <= pad_r; ++dr) {
    for (int dc = -pad_c; dc <= pad_c; ++dc) {
      const double corr = place(estimate, dr, dc).cwiseProduct(t).sum();
      const int dist2 = dr * dr + dc * dc;
      const double tie = 1e-12 * scale;
      bool take = false;
      if (corr > best_corr + tie) {
        best_corr = corr;
        take = true;
      } else if (corr >= best_corr - tie && dist2 < best_dist2) {
        best_corr = std::max(best_corr, corr);
        take = true;
      }
      if (take) {
        best_dist2 = dist2;
        best.shift_row = dr;
        best.shift_col = dc;
      }
    }
  }
  best.error = (place(estimate, best.shift_row, best.shift_col) - t).norm();
  return best;
}

double KernelError(const Image& estimate, const Image& truth) {
  return AlignKernels(estimate, truth).error;
}

double NoiselessKernelBound(double sigma_max_blurred, double sigma_min_sharp) {
  if (!(sigma_min_sharp > 0.0)) ThrowInvalid("bound: sigma_min of the sharp image must be > 0");
  return std::sqrt(2.0) * sigma_max_blurred / sigma_min_sharp;
}

double NoisyKernelBound(double sigma_max_blurred, double ccond_blurred, int s1, int s2,
                        double epsilon, double sigma_min_sharp) {
  if (!(sigma_min_sharp > 0.0)) ThrowInvalid("bound: sigma_min of the sharp image must be > 0");
  if (!(epsilon >= 0.0)) ThrowInvalid("bound: epsilon must be nonnegative");
  if (epsilon == 0.0) return NoiselessKernelBound(sigma_max_blurred, sigma_min_sharp);
  return std::sqrt(2.0) *
         (sigma_max_blurred + ccond_blurred * std::sqrt(static_cast<double>(s1) * s2) * epsilon) /
         sigma_min_sharp;
}

}  // namespace specdeblur
