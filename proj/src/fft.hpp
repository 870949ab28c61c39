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

#ifndef SPECDEBLUR_SRC_FFT_HPP_
#define SPECDEBLUR_SRC_FFT_HPP_

#include <complex>

#include "specdeblur/image.hpp"

namespace specdeblur::fft {

// Half-spectrum of a real grid: rows x (cols / 2 + 1).
using Spectrum = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Spectrum Forward(const Image& x);
// Inverse including the 1 / (rows * cols) factor.
Image Inverse(const Spectrum& s, int rows, int cols);

// Transfer function of `k` centered at ((m1-1)/2, (m2-1)/2) and wrapped onto a
// rows x cols grid, matching Conv2dPeriodic.
Spectrum CenteredKernelSpectrum(const Image& k, int rows, int cols);

}  // namespace specdeblur::fft

#endif  // SPECDEBLUR_SRC_FFT_HPP_
