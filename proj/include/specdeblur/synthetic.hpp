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

#ifndef SPECDEBLUR_SYNTHETIC_HPP_
#define SPECDEBLUR_SYNTHETIC_HPP_

#include <cstdint>
#include <string>

#include "specdeblur/features.hpp"
#include "specdeblur/image.hpp"

namespace specdeblur {

enum class KernelFamily { kGaussian, kMotionLine, kRandomSparse, kCurve };

struct KernelSpec {
  KernelFamily family = KernelFamily::kGaussian;
  int size = 9;
  double sigma = 1.0;        // gaussian
  double length = 7.0;       // motion-line and curve (pixels)
  double angle_deg = 0.0;    // motion-line
  int nonzeros = 6;          // random-sparse
  std::uint64_t seed = 0;    // random-sparse and curve
};

// Normalized nonnegative size x size kernel.
//   gaussian:      sampled isotropic Gaussian; sigma -> 0 gives the impulse
//   motion-line:   centered segment, each pixel weighted by the segment
//                  length inside it
//   random-sparse: seeded support of `nonzeros` pixels with random weights
//   curve:         seeded smooth random-walk trajectory rasterized like
//                  motion-line
Kernel MakeKernel(const KernelSpec& spec);

// "gaussian", "motion-line", "random-sparse", "curve".
KernelFamily ParseKernelFamily(const std::string& name);
std::string KernelFamilyName(KernelFamily family);

// Parses "family[:key=value,...]", e.g. "motion-line:length=9,angle=30".
// Keys: size, sigma, length, angle, nonzeros, seed.
KernelSpec ParseKernelSpec(const std::string& text, int default_size);

enum class TestPattern { kSteps, kBars, kChecker, kPolygons, kMixed };

TestPattern ParseTestPattern(const std::string& name);

// Procedural grayscale scenes in [0, 1]; fully determined by the arguments.
Image MakeTestImage(TestPattern pattern, int rows, int cols, std::uint64_t seed);

struct SyntheticBlur {
  Image blurred;  // I0 * K0 + N, full convolution size
  Image noise;    // N, with ||L(N)||_F == epsilon
};

// Full-convolution blur plus seeded Gaussian noise rescaled so that
// ||L(N)||_F equals epsilon exactly (no noise for epsilon == 0).
SyntheticBlur SynthBlur(const Image& sharp, const Kernel& k, double epsilon, std::uint64_t seed,
                        const FeatureFilter& feature);

}  // namespace specdeblur

#endif  // SPECDEBLUR_SYNTHETIC_HPP_
