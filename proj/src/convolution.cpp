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

#include "specdeblur/convolution.hpp"

#include "specdeblur/errors.hpp"

namespace specdeblur {
namespace {

void RequireNonEmpty(const Image& x, const char* what) {
  if (x.rows() < 1 || x.cols() < 1) ThrowInvalid(std::string(what) + " must be nonempty");
}

}  // namespace

Image Conv2dFull(const Image& x, const Image& y) {
  RequireNonEmpty(x, "conv2d_full: x");
  RequireNonEmpty(y, "conv2d_full: y");
  // Iterate over the smaller operand, accumulating shifted copies of the
  // larger one.
  const Image& big = x.size() >= y.size() ? x : y;
  const Image& small = x.size() >= y.size() ? y : x;
  Image out = Image::Zero(x.rows() + y.rows() - 1, x.cols() + y.cols() - 1);
  for (Eigen::Index u = 0; u < small.rows(); ++u) {
    for (Eigen::Index v = 0; v < small.cols(); ++v) {
      const double w = small(u, v);
      if (w == 0.0) continue;
      out.block(u, v, big.rows(), big.cols()) += w * big;
    }
  }
  return out;
}

Image Conv2dValid(const Image& x, const Image& y) {
  RequireNonEmpty(x, "conv2d_valid: x");
  RequireNonEmpty(y, "conv2d_valid: y");
  if (y.rows() > x.rows() || y.cols() > x.cols()) {
    ThrowInvalid("conv2d_valid: y is larger than x");
  }
  const Eigen::Index o1 = x.rows() - y.rows() + 1;
  const Eigen::Index o2 = x.cols() - y.cols() + 1;
  Image out = Image::Zero(o1, o2);
  for (Eigen::Index u = 0; u < y.rows(); ++u) {
    for (Eigen::Index v = 0; v < y.cols(); ++v) {
      const double w = y(u, v);
      if (w == 0.0) continue;
      out += w * x.block(y.rows() - 1 - u, y.cols() - 1 - v, o1, o2);
    }
  }
  return out;
}

Image Conv2dPeriodic(const Image& x, const Image& k) {
  RequireNonEmpty(x, "conv2d_periodic: x");
  RequireNonEmpty(k, "conv2d_periodic: k");
  if (k.rows() > x.rows() || k.cols() > x.cols()) {
    ThrowInvalid("conv2d_periodic: kernel larger than the image");
  }
  const Eigen::Index n1 = x.rows();
  const Eigen::Index n2 = x.cols();
  const Eigen::Index cr = (k.rows() - 1) / 2;
  const Eigen::Index cc = (k.cols() - 1) / 2;
  Image out = Image::Zero(n1, n2);
  for (Eigen::Index u = 0; u < k.rows(); ++u) {
    for (Eigen::Index v = 0; v < k.cols(); ++v) {
      const double w = k(u, v);
      if (w == 0.0) continue;
      // out(p) += w * x(p - s) with s = (u - cr, v - cc), wrapped.
      const Eigen::Index sr = ((u - cr) % n1 + n1) % n1;
      const Eigen::Index sc = ((v - cc) % n2 + n2) % n2;
      // Four rectangular pieces of the circular shift.
      out.block(sr, sc, n1 - sr, n2 - sc) += w * x.block(0, 0, n1 - sr, n2 - sc);
      if (sc > 0) out.block(sr, 0, n1 - sr, sc) += w * x.block(0, n2 - sc, n1 - sr, sc);
      if (sr > 0) out.block(0, sc, sr, n2 - sc) += w * x.block(n1 - sr, 0, sr, n2 - sc);
      if (sr > 0 && sc > 0) out.block(0, 0, sr, sc) += w * x.block(n1 - sr, n2 - sc, sr, sc);
    }
  }
  return out;
}

Vector Vectorize(const Image& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Image Devectorize(const Vector& v, int rows, int cols) {
  if (rows < 0 || cols < 0 || v.size() != static_cast<Eigen::Index>(rows) * cols) {
    ThrowInvalid("devectorize: size mismatch");
  }
  return Eigen::Map<const Image>(v.data(), rows, cols);
}

Image Autocorrelation(const Image& x, int max_lag_rows, int max_lag_cols) {
  if (max_lag_rows < 0 || max_lag_cols < 0) ThrowInvalid("autocorrelation: negative lag");
  Image r = Image::Zero(2 * max_lag_rows + 1, 2 * max_lag_cols + 1);
  const Eigen::Index n1 = x.rows();
  const Eigen::Index n2 = x.cols();
  for (int dr = 0; dr <= max_lag_rows; ++dr) {
    for (int dc = -max_lag_cols; dc <= max_lag_cols; ++dc) {
      double sum = 0.0;
      const Eigen::Index h = n1 - dr;
      const Eigen::Index w = n2 - std::abs(dc);
      if (h > 0 && w > 0) {
        // sum_y x(y) x(y + d)
        const Eigen::Index c0 = dc >= 0 ? 0 : -dc;
        sum = x.block(0, c0, h, w).cwiseProduct(x.block(dr, c0 + dc, h, w)).sum();
      }
      r(max_lag_rows + dr, max_lag_cols + dc) = sum;
      r(max_lag_rows - dr, max_lag_cols - dc) = sum;
    }
  }
  return r;
}

ToeplitzOperator::ToeplitzOperator(Image source, int probe_rows, int probe_cols)
    : source_(std::move(source)), probe_rows_(probe_rows), probe_cols_(probe_cols) {
  RequireNonEmpty(source_, "toeplitz: source");
  if (probe_rows < 1 || probe_cols < 1) ThrowInvalid("toeplitz: probe size must be positive");
}

Eigen::Index ToeplitzOperator::rows() const {
  return (source_.rows() + probe_rows_ - 1) * (source_.cols() + probe_cols_ - 1);
}

Matrix ToeplitzOperator::Dense() const {
  const Eigen::Index out_cols = source_.cols() + probe_cols_ - 1;
  Matrix a = Matrix::Zero(rows(), cols());
  for (int p = 0; p < probe_rows_; ++p) {
    for (int q = 0; q < probe_cols_; ++q) {
      const Eigen::Index col = static_cast<Eigen::Index>(p) * probe_cols_ + q;
      for (Eigen::Index i = 0; i < source_.rows(); ++i) {
        for (Eigen::Index j = 0; j < source_.cols(); ++j) {
          a((i + p) * out_cols + (j + q), col) = source_(i, j);
        }
      }
    }
  }
  return a;
}

Vector ToeplitzOperator::Apply(const Vector& probe) const {
  if (probe.size() != cols()) ThrowInvalid("toeplitz apply: probe size mismatch");
  return Vectorize(Conv2dFull(source_, Devectorize(probe, probe_rows_, probe_cols_)));
}

Vector ToeplitzOperator::ApplyTranspose(const Vector& v) const {
  if (v.size() != rows()) ThrowInvalid("toeplitz transpose: size mismatch");
  const int out_rows = static_cast<int>(source_.rows()) + probe_rows_ - 1;
  const int out_cols = static_cast<int>(source_.cols()) + probe_cols_ - 1;
  const Image img = Devectorize(v, out_rows, out_cols);
  Vector out(cols());
  for (int p = 0; p < probe_rows_; ++p) {
    for (int q = 0; q < probe_cols_; ++q) {
      out(p * probe_cols_ + q) =
          img.block(p, q, source_.rows(), source_.cols()).cwiseProduct(source_).sum();
    }
  }
  return out;
}

Matrix ToeplitzOperator::Gram() const {
  const Image r = Autocorrelation(source_, probe_rows_ - 1, probe_cols_ - 1);
  const int d = static_cast<int>(cols());
  Matrix g(d, d);
  for (int p = 0; p < probe_rows_; ++p) {
    for (int q = 0; q < probe_cols_; ++q) {
      for (int p2 = 0; p2 < probe_rows_; ++p2) {
        for (int q2 = 0; q2 < probe_cols_; ++q2) {
          g(p * probe_cols_ + q, p2 * probe_cols_ + q2) =
              r(probe_rows_ - 1 + p - p2, probe_cols_ - 1 + q - q2);
        }
      }
    }
  }
  return g;
}

ToeplitzOperator Toeplitz(const Image& x, int k1, int k2) { return ToeplitzOperator(x, k1, k2); }

}  // namespace specdeblur
