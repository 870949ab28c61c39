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

#ifndef SPECDEBLUR_CONVOLUTION_HPP_
#define SPECDEBLUR_CONVOLUTION_HPP_

#include "specdeblur/image.hpp"

namespace specdeblur {

// Full 2D convolution:
//   out(i, j) = sum_{u,v} x(i - u, j - v) * y(u, v),
// output size (l1 + k1 - 1) x (l2 + k2 - 1).
Image Conv2dFull(const Image& x, const Image& y);

// Only positions where y overlaps x completely; requires y no larger than x.
// Equals the central crop of Conv2dFull(x, y) starting at (k1 - 1, k2 - 1).
Image Conv2dValid(const Image& x, const Image& y);

// Circular convolution on the grid of `x` with the kernel anchored at its
// center (rows-1)/2, (cols-1)/2:
//   out(p) = sum_u k(u) * x((p - u + c) mod n).
// A centered impulse is the identity.
Image Conv2dPeriodic(const Image& x, const Image& k);

// Row-major vectorization; the ordering every Toeplitz operator uses.
Vector Vectorize(const Image& x);
Image Devectorize(const Vector& v, int rows, int cols);

// R(d) = sum_y x(y) x(y + d) for |d_r| <= max_lag_rows, |d_c| <= max_lag_cols
// (zero outside x). Returned grid is indexed [d_r + max_lag_rows][d_c + max_lag_cols].
Image Autocorrelation(const Image& x, int max_lag_rows, int max_lag_cols);

// Convolution with a fixed source image as a linear map on k1 x k2 probes:
//   Vectorize(Conv2dFull(source, Y)) == Dense() * Vectorize(Y).
class ToeplitzOperator {
 public:
  ToeplitzOperator(Image source, int probe_rows, int probe_cols);

  Eigen::Index rows() const;
  Eigen::Index cols() const { return static_cast<Eigen::Index>(probe_rows_) * probe_cols_; }
  int probe_rows() const { return probe_rows_; }
  int probe_cols() const { return probe_cols_; }
  const Image& source() const { return source_; }

  // Materialized (l1+k1-1)(l2+k2-1) x k1k2 matrix.
  Matrix Dense() const;
  // Matrix-free product.
  Vector Apply(const Vector& probe) const;
  Vector ApplyTranspose(const Vector& v) const;
  // A^T A assembled from the source autocorrelation, without forming A.
  Matrix Gram() const;

 private:
  Image source_;
  int probe_rows_;
  int probe_cols_;
};

ToeplitzOperator Toeplitz(const Image& x, int k1, int k2);

}  // namespace specdeblur

#endif  // SPECDEBLUR_CONVOLUTION_HPP_
