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

#ifndef SPECDEBLUR_BLIND_HPP_
#define SPECDEBLUR_BLIND_HPP_

#include <optional>
#include <span>
#include <vector>

#include "specdeblur/deconv.hpp"
#include "specdeblur/features.hpp"
#include "specdeblur/image.hpp"
#include "specdeblur/regularizer.hpp"
#include "specdeblur/simplex_qp.hpp"

namespace specdeblur {

struct DeblurConfig {
  int m1 = 13;
  int m2 = 13;
  int s1 = 0;  // 0: ceil(1.5 * m1)
  int s2 = 0;  // 0: ceil(1.5 * m2)
  double alpha = 1000.0;
  double lambda = 0.0015;
  int max_outer = 150;
  double kernel_tol = 1e-6;     // Frobenius change of K
  double objective_tol = 1e-8;  // relative objective change
  FeatureFilter feature = MakeLog(1.0);
  QpOptions qp;
  TvSolverConfig tv;

  int sampling_rows() const;
  int sampling_cols() const;
};

void ValidateDeblurConfig(const DeblurConfig& cfg);

struct DeblurResult {
  Image latent;    // periodic latent image on the grid of B
  Image restored;  // latent cropped to the sharp-image size
  Kernel kernel = Kernel::Delta(1, 1);
  std::vector<double> objective_trace;  // after every outer iteration
  int iterations = 0;
  int rejected_image_steps = 0;
  bool converged = false;
};

// ||B - I (*) K||^2 + lambda TV(I) + alpha h(K); I on the grid of B.
double BlindObjective(const Image& b, const Image& latent, const Kernel& k,
                      const RegularizerHessian& h, double alpha, double lambda);

// K-step quadratic program: Q = A(I)^T A(I) + alpha H, c = -2 A(I)^T vec(B),
// A(I) the centered circular-convolution operator of I on the grid of B.
// `latent` may be B-sized or sharp-sized (then embedded at the kernel center).
QpProblem KStepProblem(const Image& b, const Image& latent, const RegularizerHessian& h,
                       double alpha);

struct KStepResult {
  Kernel kernel = Kernel::Delta(1, 1);
  QpSolution solution;
};

KStepResult KStep(const Image& b, const Image& latent, const RegularizerHessian& h,
                  double alpha, const QpOptions& options = {},
                  const std::optional<Kernel>& warm_start = std::nullopt);

// Kernel from the regularizer alone: argmin_K h(K) over the simplex.
KStepResult EstimateKernel(const RegularizerHessian& h, const QpOptions& options = {});

// Hessian of the observed image, built once per run.
RegularizerHessian ObservationHessian(const Image& b, const DeblurConfig& cfg);

// Alternating minimization starting from I = B.
DeblurResult BlindDeblur(const Image& b, const DeblurConfig& cfg);
DeblurResult BlindDeblur(const Image& b, const DeblurConfig& cfg, const RegularizerHessian& h);

struct SweepEntry {
  double alpha = 0.0;
  double distance_to_delta = 0.0;  // shift-aligned ||K - delta||_F
  double sharpness = 0.0;          // sigma_min of the restored image
  int iterations = 0;
  bool converged = false;
  Kernel kernel = Kernel::Delta(1, 1);
};

// One BlindDeblur per alpha (run concurrently); entries follow the input order.
std::vector<SweepEntry> AlphaSweep(const Image& b, const DeblurConfig& cfg,
                                   std::span<const double> alphas);

// Log-scale bisection for the smallest alpha whose kernel departs from the
// impulse by more than `departure` (shift-aligned Frobenius distance).
struct ThresholdSearch {
  double alpha_star = 0.0;
  bool bracketed = false;          // departure absent at alpha_lo and present at alpha_hi
  std::vector<SweepEntry> probes;  // every evaluated alpha, in evaluation order
};

ThresholdSearch FindAlphaThreshold(const Image& b, const DeblurConfig& cfg, double alpha_lo,
                                   double alpha_hi, double departure = 0.15, int steps = 8);

}  // namespace specdeblur

#endif  // SPECDEBLUR_BLIND_HPP_
