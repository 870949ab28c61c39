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

#ifndef SPECDEBLUR_IMAGE_HPP_
#define SPECDEBLUR_IMAGE_HPP_

#include <Eigen/Dense>

#include <span>

namespace specdeblur {

// Dense real 2D grid in row-major order. Images, feature maps, eigenvector
// probes and raw kernel weights all use this type.
using Image = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

bool AllFinite(const Image& img);

// A blur kernel: nonnegative weights summing to one.
class Kernel {
 public:
  static constexpr double kSumTolerance = 1e-9;

  // Validates the simplex invariants; throws Error(kInvalidArgument).
  static Kernel FromWeights(Image weights, double tol = kSumTolerance);
  static Kernel FromVector(std::span<const double> weights, int rows, int cols,
                           double tol = kSumTolerance);

  // 1-hot impulse at the kernel center ((rows-1)/2, (cols-1)/2).
  static Kernel Delta(int rows, int cols);
  static Kernel Uniform(int rows, int cols);

  int rows() const { return static_cast<int>(weights_.rows()); }
  int cols() const { return static_cast<int>(weights_.cols()); }
  int center_row() const { return (rows() - 1) / 2; }
  int center_col() const { return (cols() - 1) / 2; }
  const Image& weights() const { return weights_; }
  double operator()(int r, int c) const { return weights_(r, c); }

 private:
  explicit Kernel(Image weights) : weights_(std::move(weights)) {}

  Image weights_;
};

// Frobenius-norm helpers used throughout the metrics.
inline double FrobeniusNorm(const Image& img) { return img.norm(); }
inline double L1Norm(const Image& img) { return img.cwiseAbs().sum(); }

// Places `src` at (row, col) inside a zero canvas of the given size; parts
// falling outside the canvas are dropped.
Image Embed(const Image& src, int rows, int cols, int row, int col);
Image Crop(const Image& src, int row, int col, int rows, int cols);

}  // namespace specdeblur

#endif  // SPECDEBLUR_IMAGE_HPP_
