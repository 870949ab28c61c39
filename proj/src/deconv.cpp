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

#include "specdeblur/deconv.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fft.hpp"
#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"

namespace specdeblur {
namespace {

using Complex = std::complex<double>;

// out(p) += w * src(p - shift), indices wrapped.
void AddCircularShift(Image& out, const Image& src, double w, Eigen::Index shift_r,
                      Eigen::Index shift_c) {
  const Eigen::Index n1 = src.rows();
  const Eigen::Index n2 = src.cols();
  const Eigen::Index sr = ((shift_r % n1) + n1) % n1;
  const Eigen::Index sc = ((shift_c % n2) + n2) % n2;
  out.block(sr, sc, n1 - sr, n2 - sc) += w * src.block(0, 0, n1 - sr, n2 - sc);
  if (sc > 0) out.block(sr, 0, n1 - sr, sc) += w * src.block(0, n2 - sc, n1 - sr, sc);
  if (sr > 0) out.block(0, sc, sr, n2 - sc) += w * src.block(n1 - sr, 0, sr, n2 - sc);
  if (sr > 0 && sc > 0) out.block(0, 0, sr, sc) += w * src.block(n1 - sr, n2 - sc, sr, sc);
}

// Frequency responses shared by every quadratic solve of one deconvolution.
struct Operators {
  fft::Spectrum kernel;     // K^
  fft::Spectrum grad_norm;  // |Dx^|^2 + |Dy^|^2
  fft::Spectrum dx;         // Dx^
  fft::Spectrum dy;         // Dy^
};

Operators MakeOperators(const Image& k, int rows, int cols) {
  Operators ops;
  ops.kernel = fft::CenteredKernelSpectrum(k, rows, cols);
  const int half = cols / 2 + 1;
  ops.dx.resize(rows, half);
  ops.dy.resize(rows, half);
  ops.grad_norm.resize(rows, half);
  for (int r = 0; r < rows; ++r) {
    const Complex ey = std::polar(1.0, 2.0 * std::numbers::pi * r / rows) - 1.0;
    for (int c = 0; c < half; ++c) {
      const Complex ex = std::polar(1.0, 2.0 * std::numbers::pi * c / cols) - 1.0;
      ops.dx(r, c) = ex;
      ops.dy(r, c) = ey;
      ops.grad_norm(r, c) = std::norm(ex) + std::norm(ey);
    }
  }
  return ops;
}

Image QuadraticSolve(const Operators& ops, const fft::Spectrum& b_hat, const Image& wx,
                     const Image& wy, double weight, int rows, int cols) {
  fft::Spectrum num = 2.0 * ops.kernel.conjugate() * b_hat;
  fft::Spectrum den = 2.0 * ops.kernel.abs2().cast<Complex>();
  if (weight > 0.0) {
    num += weight * (ops.dx.conjugate() * fft::Forward(wx) + ops.dy.conjugate() * fft::Forward(wy));
    den += weight * ops.grad_norm;
  }
  const double floor = 1e-14 * den.real().maxCoeff();
  for (Eigen::Index i = 0; i < den.size(); ++i) {
    if (den.data()[i].real() < floor) den.data()[i] = floor;
  }
  return fft::Inverse(num / den, rows, cols);
}

}  // namespace

namespace detail {

Image GradX(const Image& img) {
  const Eigen::Index n2 = img.cols();
  Image g(img.rows(), n2);
  g.leftCols(n2 - 1) = img.rightCols(n2 - 1) - img.leftCols(n2 - 1);
  g.col(n2 - 1) = img.col(0) - img.col(n2 - 1);
  return g;
}

Image GradY(const Image& img) {
  const Eigen::Index n1 = img.rows();
  Image g(n1, img.cols());
  g.topRows(n1 - 1) = img.bottomRows(n1 - 1) - img.topRows(n1 - 1);
  g.row(n1 - 1) = img.row(0) - img.row(n1 - 1);
  return g;
}

Image SoftThreshold(const Image& v, double t) {
  return v.unaryExpr([t](double x) {
    const double a = std::abs(x) - t;
    return a > 0.0 ? std::copysign(a, x) : 0.0;
  });
}

Image SolveQuadraticStep(const Image& b, const Kernel& k, const Image& wx, const Image& wy,
                         double weight) {
  const int rows = static_cast<int>(b.rows());
  const int cols = static_cast<int>(b.cols());
  const Operators ops = MakeOperators(k.weights(), rows, cols);
  return QuadraticSolve(ops, fft::Forward(b), wx, wy, weight, rows, cols);
}

Image Conv2dPeriodicAdjoint(const Image& x, const Image& k) {
  const Eigen::Index cr = (k.rows() - 1) / 2;
  const Eigen::Index cc = (k.cols() - 1) / 2;
  Image out = Image::Zero(x.rows(), x.cols());
  for (Eigen::Index u = 0; u < k.rows(); ++u) {
    for (Eigen::Index v = 0; v < k.cols(); ++v) {
      if (k(u, v) != 0.0) AddCircularShift(out, x, k(u, v), -(u - cr), -(v - cc));
    }
  }
  return out;
}

}  // namespace detail

void ValidateTvConfig(const TvSolverConfig& cfg) {
  if (!(cfg.lambda >= 0.0)) ThrowInvalid("tv: lambda must be nonnegative");
  if (!(cfg.beta_init > 0.0) || !(cfg.beta_rate > 1.0) || !(cfg.beta_max >= cfg.beta_init)) {
    ThrowInvalid("tv: beta schedule must be positive and strictly increasing");
  }
  if (cfg.inner_iterations < 1 || cfg.final_iterations < 0) {
    ThrowInvalid("tv: iteration counts must be positive");
  }
  if (!(cfg.tol > 0.0)) ThrowInvalid("tv: tol must be positive");
}

double TotalVariation(const Image& img) {
  if (img.size() == 0) return 0.0;
  return detail::GradX(img).cwiseAbs().sum() + detail::GradY(img).cwiseAbs().sum();
}

double DeconvObjective(const Image& b, const Image& latent, const Kernel& k, double lambda) {
  if (latent.rows() != b.rows() || latent.cols() != b.cols()) {
    ThrowInvalid("deconv objective: latent image must match the observation grid");
  }
  const double data = (b - Conv2dPeriodic(latent, k.weights())).squaredNorm();
  return lambda > 0.0 ? data + lambda * TotalVariation(latent) : data;
}

Image CropToSharp(const Image& latent, int m1, int m2) {
  return Crop(latent, (m1 - 1) / 2, (m2 - 1) / 2, static_cast<int>(latent.rows()) - m1 + 1,
              static_cast<int>(latent.cols()) - m2 + 1);
}

Image EdgeTaper(const Image& b, const Kernel& k, int width) {
  if (width <= 0) return b;
  const Image blurred = Conv2dPeriodic(b, k.weights());
  Image out(b.rows(), b.cols());
  auto ramp = [width](Eigen::Index i, Eigen::Index n) {
    const double d = static_cast<double>(std::min(i, n - 1 - i));
    return std::min(1.0, d / width);
  };
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    const double wr = ramp(r, b.rows());
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      const double w = wr * ramp(c, b.cols());
      out(r, c) = w * b(r, c) + (1.0 - w) * blurred(r, c);
    }
  }
  return out;
}

TvResult TvDeconv(const Image& b, const Kernel& k, const TvSolverConfig& cfg) {
  ValidateTvConfig(cfg);
  if (b.size() == 0) ThrowInvalid("tv: empty observation");
  if (!b.allFinite()) ThrowInvalid("tv: observation has non-finite values");
  if (k.rows() > b.rows() || k.cols() > b.cols()) ThrowInvalid("tv: kernel larger than image");
  const int rows = static_cast<int>(b.rows());
  const int cols = static_cast<int>(b.cols());

  const Image work = cfg.taper ? EdgeTaper(b, k, std::max(k.rows(), k.cols()) / 2) : b;
  const Operators ops = MakeOperators(k.weights(), rows, cols);
  const fft::Spectrum b_hat = fft::Forward(work);

  TvResult res;
  if (cfg.lambda == 0.0) {
    // Data term only: one exact solve.
    const Image zero = Image::Zero(rows, cols);
    res.image = QuadraticSolve(ops, b_hat, zero, zero, 0.0, rows, cols);
    res.iterations = 1;
    res.converged = true;
    res.objective = DeconvObjective(b, res.image, k, 0.0);
    return res;
  }

  std::vector<double> betas;
  for (double beta = cfg.beta_init; beta <= cfg.beta_max * (1.0 + 1e-12); beta *= cfg.beta_rate) {
    betas.push_back(beta);
  }
  if (betas.back() < cfg.beta_max) betas.push_back(cfg.beta_max);

  Image latent = work;
  double change = 0.0;
  auto alternate = [&](double beta) {
    const Image wx = detail::SoftThreshold(detail::GradX(latent), 1.0 / beta);
    const Image wy = detail::SoftThreshold(detail::GradY(latent), 1.0 / beta);
    Image next = QuadraticSolve(ops, b_hat, wx, wy, cfg.lambda * beta, rows, cols);
    const double norm = std::max(latent.norm(), 1e-300);
    change = (next - latent).norm() / norm;
    latent = std::move(next);
    ++res.iterations;
  };
  for (double beta : betas) {
    for (int inner = 0; inner < cfg.inner_iterations; ++inner) {
      alternate(beta);
      if (change < cfg.tol) break;
    }
  }
  for (int extra = 0; extra < cfg.final_iterations && change >= cfg.tol; ++extra) {
    alternate(betas.back());
  }

  res.image = std::move(latent);
  res.last_change = change;
  res.converged = change < cfg.tol;
  res.objective = DeconvObjective(b, res.image, k, cfg.lambda);
  return res;
}

}  // namespace specdeblur
