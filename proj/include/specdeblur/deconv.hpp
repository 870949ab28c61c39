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

#ifndef SPECDEBLUR_DECONV_HPP_
#define SPECDEBLUR_DECONV_HPP_

#include "specdeblur/image.hpp"

namespace specdeblur {

// Half-quadratic splitting for
//   min_I ||B - I (*) K||_F^2 + lambda * TV(I)
// on the periodic grid of B, with (*) the centered circular convolution.
struct TvSolverConfig {
  double lambda = 0.0015;
  double beta_init = 1.0;
  double beta_rate = 2.0 * 1.4142135623730951;
  double beta_max = 256.0;
  int inner_iterations = 1;      // alternations per beta
  int final_iterations = 30;     // extra alternations at the last beta
  double tol = 1e-4;             // relative image change
  bool taper = false;            // blend borders before the solve
};

struct TvResult {
  Image image;
  double objective = 0.0;
  double last_change = 0.0;
  int iterations = 0;
  bool converged = false;
};

void ValidateTvConfig(const TvSolverConfig& cfg);

// Anisotropic total variation with periodic wrap.
double TotalVariation(const Image& img);

// ||B - I (*) K||_F^2 + lambda * TV(I).
double DeconvObjective(const Image& b, const Image& latent, const Kernel& k, double lambda);

TvResult TvDeconv(const Image& b, const Kernel& k, const TvSolverConfig& cfg = {});

// Central crop of a latent image to the sharp-image size
// (rows - m1 + 1) x (cols - m2 + 1).
Image CropToSharp(const Image& latent, int m1, int m2);

// Blends the borders of `b` towards its own blurred version over `width`
// pixels so the periodic model sees no wrap-around jump.
Image EdgeTaper(const Image& b, const Kernel& k, int width);

namespace detail {

// Periodic forward differences.
Image GradX(const Image& img);
Image GradY(const Image& img);

Image SoftThreshold(const Image& v, double t);

// Solves (2 K^T K + weight D^T D) I = 2 K^T b + weight (Dx^T wx + Dy^T wy)
// in the frequency domain.
Image SolveQuadraticStep(const Image& b, const Kernel& k, const Image& wx, const Image& wy,
                         double weight);

// Adjoint of the centered circular convolution.
Image Conv2dPeriodicAdjoint(const Image& x, const Image& k);

}  // namespace detail

}  // namespace specdeblur

#endif  // SPECDEBLUR_DECONV_HPP_
