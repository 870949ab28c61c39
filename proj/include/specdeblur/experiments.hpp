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

#ifndef SPECDEBLUR_EXPERIMENTS_HPP_
#define SPECDEBLUR_EXPERIMENTS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specdeblur/features.hpp"
#include "specdeblur/image.hpp"
#include "specdeblur/synthetic.hpp"

namespace specdeblur {

// Deterministic "%.17g" rendering used by every CSV writer.
std::string FormatDouble(double v);

// Spectra of a sharp image and its blurred version under the impulse and
// LoG features.
struct SpectrumComparison {
  Image blurred;
  Vector sharp_delta, blurred_delta, sharp_log, blurred_log;
  double ratio_delta = 0.0;  // sigma_max(B) / sigma_min(I) with L = delta
  double ratio_log = 0.0;    // same with L = LoG

  // index,sharp_delta,blurred_delta,sharp_log,blurred_log
  std::string Csv() const;
};

SpectrumComparison RunFigure2(const Image& sharp, const Kernel& k, int s1, int s2,
                              double log_sigma = 1.0);

// CSV "index,sigma" for a single spectrum.
std::string SpectrumCsv(const Vector& eigenvalues);

struct RecoveryCase {
  KernelSpec kernel;
  TestPattern pattern = TestPattern::kPolygons;
  int image_size = 128;
  std::uint64_t image_seed = 1;
  double noise_ratio = 0.0;  // epsilon / sigma_min(I0)
  std::uint64_t noise_seed = 7;
};

// Kernel estimated from the blurred image alone by minimizing h over the
// simplex, compared to the truth.
struct RecoveryOutcome {
  std::string label;
  Kernel truth = Kernel::Delta(1, 1);
  Kernel estimate = Kernel::Delta(1, 1);
  double kernel_error = 0.0;
  double sigma_max_blurred = 0.0;
  double sigma_min_blurred = 0.0;
  double sigma_min_sharp = 0.0;
  double epsilon = 0.0;
  double noiseless_bound = 0.0;
  double noisy_bound = 0.0;
  double kkt_residual = 0.0;
  int s1 = 0;
  int s2 = 0;
};

RecoveryOutcome RunRecoveryCase(const RecoveryCase& c, const FeatureFilter& feature);

// The six-kernel gallery: 9x9 kernels from every family on a 128x128
// procedural scene, one run per seed.
std::vector<RecoveryCase> Figure3Cases(std::span<const std::uint64_t> seeds);
std::vector<RecoveryOutcome> RunFigure3(std::span<const std::uint64_t> seeds,
                                        const FeatureFilter& feature);

// label,kernel_error,noiseless_bound,noisy_bound,sigma_max_blurred,
// sigma_min_sharp,epsilon,kkt_residual
std::string RecoveryCsv(std::span<const RecoveryOutcome> outcomes);

}  // namespace specdeblur

#endif  // SPECDEBLUR_EXPERIMENTS_HPP_
