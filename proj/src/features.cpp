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

#include "specdeblur/features.hpp"

#include <cmath>
#include <numbers>

#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"

namespace specdeblur {

FeatureFilter MakeDelta() {
  FeatureFilter f;
  f.kind = FeatureKind::kDelta;
  f.taps = Image::Ones(1, 1);
  return f;
}

FeatureFilter MakeLog(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) ThrowInvalid("LoG sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int size = 2 * radius + 1;
  const double s2 = sigma * sigma;
  const double amplitude = -1.0 / (std::numbers::pi * s2 * s2);
  Image taps(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double y = r - radius;
      const double x = c - radius;
      const double q = (x * x + y * y) / (2.0 * s2);
      taps(r, c) = amplitude * (1.0 - q) * std::exp(-q);
    }
  }
  taps.array() -= taps.mean();
  FeatureFilter f;
  f.kind = FeatureKind::kLog;
  f.taps = std::move(taps);
  f.sigma = sigma;
  return f;
}

FeatureFilter MakeFeature(const std::string& name, double log_sigma) {
  if (name == "delta") return MakeDelta();
  if (name == "log") return MakeLog(log_sigma);
  ThrowInvalid("unknown feature '" + name + "' (expected delta or log)");
}

std::string FeatureName(const FeatureFilter& f) {
  return f.kind == FeatureKind::kDelta ? "delta" : "log";
}

Image ApplyFilter(const FeatureFilter& f, const Image& img) {
  if (f.kind == FeatureKind::kDelta) return img;
  return Conv2dFull(f.taps, img);
}

}  // namespace specdeblur
