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

#include "specdeblur/image.hpp"

#include <cmath>
#include <string>

#include "specdeblur/errors.hpp"

namespace specdeblur {

bool AllFinite(const Image& img) { return img.allFinite(); }

Kernel Kernel::FromWeights(Image weights, double tol) {
  if (weights.size() == 0) ThrowInvalid("kernel must be nonempty");
  if (!weights.allFinite()) ThrowInvalid("kernel has non-finite weights");
  if (weights.minCoeff() < 0.0) {
    ThrowInvalid("kernel has a negative weight: " + std::to_string(weights.minCoeff()));
  }
  const double sum = weights.sum();
  if (std::abs(sum - 1.0) > tol) {
    ThrowInvalid("kernel weights sum to " + std::to_string(sum) + ", expected 1");
  }
  return Kernel(std::move(weights));
}

Kernel Kernel::FromVector(std::span<const double> weights, int rows, int cols, double tol) {
  if (rows < 1 || cols < 1 || static_cast<std::size_t>(rows) * cols != weights.size()) {
    ThrowInvalid("kernel vector length does not match its shape");
  }
  Image w(rows, cols);
  std::copy(weights.begin(), weights.end(), w.data());
  return FromWeights(std::move(w), tol);
}

Kernel Kernel::Delta(int rows, int cols) {
  if (rows < 1 || cols < 1) ThrowInvalid("kernel size must be positive");
  Image w = Image::Zero(rows, cols);
  w((rows - 1) / 2, (cols - 1) / 2) = 1.0;
  return Kernel(std::move(w));
}

Kernel Kernel::Uniform(int rows, int cols) {
  if (rows < 1 || cols < 1) ThrowInvalid("kernel size must be positive");
  return Kernel(Image::Constant(rows, cols, 1.0 / (static_cast<double>(rows) * cols)));
}

Image Embed(const Image& src, int rows, int cols, int row, int col) {
  Image out = Image::Zero(rows, cols);
  for (int r = 0; r < src.rows(); ++r) {
    const int rr = r + row;
    if (rr < 0 || rr >= rows) continue;
    for (int c = 0; c < src.cols(); ++c) {
      const int cc = c + col;
      if (cc < 0 || cc >= cols) continue;
      out(rr, cc) = src(r, c);
    }
  }
  return out;
}

Image Crop(const Image& src, int row, int col, int rows, int cols) {
  if (row < 0 || col < 0 || rows < 0 || cols < 0 || row + rows > src.rows() ||
      col + cols > src.cols()) {
    ThrowInvalid("crop window outside the image");
  }
  return src.block(row, col, rows, cols);
}

}  // namespace specdeblur
