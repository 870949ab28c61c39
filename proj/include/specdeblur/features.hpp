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

#ifndef SPECDEBLUR_FEATURES_HPP_
#define SPECDEBLUR_FEATURES_HPP_

#include <string>

#include "specdeblur/image.hpp"

namespace specdeblur {

enum class FeatureKind { kDelta, kLog };

// A feature filter L applied to images by full convolution, L(I) = L * I.
struct FeatureFilter {
  FeatureKind kind = FeatureKind::kDelta;
  Image taps;          // 1x1 impulse for kDelta
  double sigma = 0.0;  // Gaussian scale, kLog only
};

FeatureFilter MakeDelta();

// Laplacian of Gaussian sampled on a (2*ceil(3*sigma)+1)^2 grid,
//   -1/(pi sigma^4) (1 - r^2/(2 sigma^2)) exp(-r^2/(2 sigma^2)),
// then mean-subtracted so the taps sum to zero. No amplitude normalization.
FeatureFilter MakeLog(double sigma);

// "delta" or "log"; sigma is ignored for delta.
FeatureFilter MakeFeature(const std::string& name, double log_sigma = 1.0);
std::string FeatureName(const FeatureFilter& f);

// Full-mode convolution of the filter with the image; delta returns `img`.
Image ApplyFilter(const FeatureFilter& f, const Image& img);

}  // namespace specdeblur

#endif  // SPECDEBLUR_FEATURES_HPP_
