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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "specdeblur/errors.hpp"

namespace specdeblur::fft {
namespace {

// FFTW's planner is not reentrant; execution through the new-array
// interface is.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

PlanPair GetPlans(int rows, int cols) {
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  auto it = cache.find({rows, cols});
  if (it != cache.end()) return it->second;
  const int half = cols / 2 + 1;
  double* real = fftw_alloc_real(static_cast<std::size_t>(rows) * cols);
  fftw_complex* cpx = fftw_alloc_complex(static_cast<std::size_t>(rows) * half);
  PlanPair plans;
  plans.forward = fftw_plan_dft_r2c_2d(rows, cols, real, cpx, FFTW_ESTIMATE);
  plans.inverse = fftw_plan_dft_c2r_2d(rows, cols, cpx, real, FFTW_ESTIMATE);
  fftw_free(real);
  fftw_free(cpx);
  if (plans.forward == nullptr || plans.inverse == nullptr) ThrowInvalid("fftw planning failed");
  cache.emplace(std::make_pair(rows, cols), plans);
  return plans;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {}
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

Spectrum Forward(const Image& x) {
  const int rows = static_cast<int>(x.rows());
  const int cols = static_cast<int>(x.cols());
  const int half = cols / 2 + 1;
  const PlanPair plans = GetPlans(rows, cols);
  RealBuffer in(static_cast<std::size_t>(rows) * cols);
  ComplexBuffer out(static_cast<std::size_t>(rows) * half);
  std::copy(x.data(), x.data() + x.size(), in.data);
  fftw_execute_dft_r2c(plans.forward, in.data, out.data);
  Spectrum s(rows, half);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s.data()[i] = {out.data[i][0], out.data[i][1]};
  }
  return s;
}

Image Inverse(const Spectrum& s, int rows, int cols) {
  const int half = cols / 2 + 1;
  if (s.rows() != rows || s.cols() != half) ThrowInvalid("spectrum shape mismatch");
  const PlanPair plans = GetPlans(rows, cols);
  ComplexBuffer in(static_cast<std::size_t>(rows) * half);
  RealBuffer out(static_cast<std::size_t>(rows) * cols);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    in.data[i][0] = s.data()[i].real();
    in.data[i][1] = s.data()[i].imag();
  }
  fftw_execute_dft_c2r(plans.inverse, in.data, out.data);
  Image x(rows, cols);
  const double scale = 1.0 / (static_cast<double>(rows) * cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = out.data[i] * scale;
  return x;
}

Spectrum CenteredKernelSpectrum(const Image& k, int rows, int cols) {
  if (k.rows() > rows || k.cols() > cols) ThrowInvalid("kernel larger than the periodic grid");
  const int cr = static_cast<int>(k.rows() - 1) / 2;
  const int cc = static_cast<int>(k.cols() - 1) / 2;
  Image wrapped = Image::Zero(rows, cols);
  for (int r = 0; r < k.rows(); ++r) {
    for (int c = 0; c < k.cols(); ++c) {
      const int rr = ((r - cr) % rows + rows) % rows;
      const int ccol = ((c - cc) % cols + cols) % cols;
      wrapped(rr, ccol) += k(r, c);
    }
  }
  return Forward(wrapped);
}

}  // namespace specdeblur::fft
