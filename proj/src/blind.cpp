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

#include "specdeblur/blind.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "fft.hpp"
#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/spectral.hpp"

namespace specdeblur {
namespace {

Image LatentOnGrid(const Image& b, const Image& latent, int m1, int m2) {
  if (latent.rows() == b.rows() && latent.cols() == b.cols()) return latent;
  if (latent.rows() == b.rows() - m1 + 1 && latent.cols() == b.cols() - m2 + 1) {
    return Embed(latent, static_cast<int>(b.rows()), static_cast<int>(b.cols()), (m1 - 1) / 2,
                 (m2 - 1) / 2);
  }
  ThrowInvalid("k-step: latent image must be B-sized or sharp-sized");
}

}  // namespace

int DeblurConfig::sampling_rows() const { return s1 > 0 ? s1 : DefaultSamplingSize(m1); }
int DeblurConfig::sampling_cols() const { return s2 > 0 ? s2 : DefaultSamplingSize(m2); }

void ValidateDeblurConfig(const DeblurConfig& cfg) {
  if (cfg.m1 < 1 || cfg.m2 < 1) ThrowInvalid("kernel size must be at least 1");
  if (cfg.s1 < 0 || cfg.s2 < 0) ThrowInvalid("sampling sizes must be nonnegative");
  if (!(cfg.alpha >= 0.0)) ThrowInvalid("alpha must be nonnegative");
  if (!(cfg.lambda >= 0.0)) ThrowInvalid("lambda must be nonnegative");
  if (cfg.max_outer < 1) ThrowInvalid("max_outer must be positive");
  if (!(cfg.kernel_tol > 0.0) || !(cfg.objective_tol > 0.0)) {
    ThrowInvalid("convergence tolerances must be positive");
  }
  TvSolverConfig tv = cfg.tv;
  tv.lambda = cfg.lambda;
  ValidateTvConfig(tv);
}

double BlindObjective(const Image& b, const Image& latent, const Kernel& k,
                      const RegularizerHessian& h, double alpha, double lambda) {
  return DeconvObjective(b, latent, k, lambda) + alpha * HValue(h, k);
}

QpProblem KStepProblem(const Image& b, const Image& latent, const RegularizerHessian& h,
                       double alpha) {
  const int m1 = h.m1;
  const int m2 = h.m2;
  if (m1 > b.rows() || m2 > b.cols()) ThrowInvalid("k-step: kernel larger than the image");
  if (!(alpha >= 0.0)) ThrowInvalid("k-step: alpha must be nonnegative");
  const Image img = LatentOnGrid(b, latent, m1, m2);
  const int n1 = static_cast<int>(b.rows());
  const int n2 = static_cast<int>(b.cols());

  // Periodic correlations: R(d) = sum_y I(y) I(y+d), C(d) = sum_y I(y) B(y+d).
  const fft::Spectrum i_hat = fft::Forward(img);
  const Image auto_corr = fft::Inverse(i_hat.abs2().cast<std::complex<double>>(), n1, n2);
  const Image cross_corr = fft::Inverse(i_hat.conjugate() * fft::Forward(b), n1, n2);
  auto wrap = [](int v, int n) { return ((v % n) + n) % n; };

  const int d = m1 * m2;
  const int c1 = (m1 - 1) / 2;
  const int c2 = (m2 - 1) / 2;
  QpProblem p;
  p.q.resize(d, d);
  p.c.resize(d);
  for (int u1 = 0; u1 < m1; ++u1) {
    for (int u2 = 0; u2 < m2; ++u2) {
      const int row = u1 * m2 + u2;
      for (int v1 = 0; v1 < m1; ++v1) {
        for (int v2 = 0; v2 < m2; ++v2) {
          p.q(row, v1 * m2 + v2) = auto_corr(wrap(u1 - v1, n1), wrap(u2 - v2, n2));
        }
      }
      p.c(row) = -2.0 * cross_corr(wrap(u1 - c1, n1), wrap(u2 - c2, n2));
    }
  }
  p.q = 0.5 * (p.q + p.q.transpose()).eval();
  if (alpha > 0.0) p.q += alpha * h.h;
  return p;
}

KStepResult KStep(const Image& b, const Image& latent, const RegularizerHessian& h, double alpha,
                  const QpOptions& options, const std::optional<Kernel>& warm_start) {
  const QpProblem p = KStepProblem(b, latent, h, alpha);
  std::optional<Vector> start;
  if (warm_start) {
    if (warm_start->rows() != h.m1 || warm_start->cols() != h.m2) {
      ThrowInvalid("k-step: warm start has the wrong size");
    }
    start = Vectorize(warm_start->weights());
  }
  KStepResult out;
  out.solution = SolveQp(p, options, start);
  out.kernel = Kernel::FromVector(std::span<const double>(out.solution.x.data(), out.solution.x.size()),
                                  h.m1, h.m2);
  return out;
}

KStepResult EstimateKernel(const RegularizerHessian& h, const QpOptions& options) {
  QpProblem p;
  p.q = h.h;
  p.c = Vector::Zero(h.h.rows());
  KStepResult out;
  out.solution = SolveQp(p, options);
  out.kernel = Kernel::FromVector(std::span<const double>(out.solution.x.data(), out.solution.x.size()),
                                  h.m1, h.m2);
  return out;
}

RegularizerHessian ObservationHessian(const Image& b, const DeblurConfig& cfg) {
  ValidateDeblurConfig(cfg);
  const ConvSpectrum spectrum =
      ConvSpectrumOf(b, cfg.feature, cfg.sampling_rows(), cfg.sampling_cols());
  return BuildHessian(spectrum, cfg.m1, cfg.m2);
}

DeblurResult BlindDeblur(const Image& b, const DeblurConfig& cfg) {
  return BlindDeblur(b, cfg, ObservationHessian(b, cfg));
}

DeblurResult BlindDeblur(const Image& b, const DeblurConfig& cfg, const RegularizerHessian& h) {
  ValidateDeblurConfig(cfg);
  if (h.m1 != cfg.m1 || h.m2 != cfg.m2) ThrowInvalid("deblur: Hessian has the wrong kernel size");
  if (cfg.m1 > b.rows() || cfg.m2 > b.cols()) ThrowInvalid("deblur: kernel larger than image");
  if (!b.allFinite()) ThrowInvalid("deblur: observation has non-finite values");

  TvSolverConfig tv = cfg.tv;
  tv.lambda = cfg.lambda;

  DeblurResult res;
  Image latent = b;
  std::optional<Kernel> kernel;
  double objective = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= cfg.max_outer; ++it) {
    res.iterations = it;
    // K-step, warm-started so the objective cannot increase.
    KStepResult ks = KStep(b, latent, h, cfg.alpha, cfg.qp, kernel);
    double obj_k = BlindObjective(b, latent, ks.kernel, h, cfg.alpha, cfg.lambda);
    Kernel next_kernel = ks.kernel;
    if (kernel && obj_k > objective) {
      next_kernel = *kernel;
      obj_k = objective;
    }

    // I-step; rejected when it does not lower the joint objective.
    TvResult is = TvDeconv(b, next_kernel, tv);
    const double obj_i = BlindObjective(b, is.image, next_kernel, h, cfg.alpha, cfg.lambda);
    double obj = obj_k;
    if (obj_i <= obj_k) {
      latent = std::move(is.image);
      obj = obj_i;
    } else {
      ++res.rejected_image_steps;
    }
    res.objective_trace.push_back(obj);

    const double kernel_change = kernel ? (next_kernel.weights() - kernel->weights()).norm()
                                        : std::numeric_limits<double>::infinity();
    const double rel_change =
        std::isfinite(objective) ? std::abs(objective - obj) / std::max(std::abs(obj), 1e-300)
                                 : std::numeric_limits<double>::infinity();
    kernel = std::move(next_kernel);
    objective = obj;
    if (kernel_change < cfg.kernel_tol && rel_change < cfg.objective_tol) {
      res.converged = true;
      break;
    }
  }

  res.kernel = *kernel;
  res.latent = std::move(latent);
  res.restored = CropToSharp(res.latent, cfg.m1, cfg.m2);
  return res;
}

namespace {

SweepEntry RunSweepEntry(const Image& b, DeblurConfig cfg, const RegularizerHessian& h,
                         double alpha) {
  cfg.alpha = alpha;
  const DeblurResult r = BlindDeblur(b, cfg, h);
  SweepEntry e;
  e.alpha = alpha;
  e.kernel = r.kernel;
  e.distance_to_delta =
      KernelError(r.kernel.weights(), Kernel::Delta(cfg.m1, cfg.m2).weights());
  e.sharpness = Sharpness(r.restored, cfg.feature, cfg.sampling_rows(), cfg.sampling_cols());
  e.iterations = r.iterations;
  e.converged = r.converged;
  return e;
}

}  // namespace

std::vector<SweepEntry> AlphaSweep(const Image& b, const DeblurConfig& cfg,
                                   std::span<const double> alphas) {
  if (alphas.empty()) ThrowInvalid("alpha sweep needs at least one alpha");
  for (double a : alphas) {
    if (!(a >= 0.0)) ThrowInvalid("alpha must be nonnegative");
  }
  const RegularizerHessian h = ObservationHessian(b, cfg);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepEntry> out(alphas.size());
  for (std::size_t begin = 0; begin < alphas.size(); begin += workers) {
    const std::size_t end = std::min(alphas.size(), begin + workers);
    std::vector<std::future<SweepEntry>> jobs;
    for (std::size_t i = begin; i < end; ++i) {
      jobs.push_back(std::async(std::launch::async, RunSweepEntry, std::cref(b), cfg, std::cref(h),
                                alphas[i]));
    }
    for (std::size_t i = begin; i < end; ++i) out[i] = jobs[i - begin].get();
  }
  return out;
}

ThresholdSearch FindAlphaThreshold(const Image& b, const DeblurConfig& cfg, double alpha_lo,
                                   double alpha_hi, double departure, int steps) {
  if (!(alpha_lo > 0.0) || !(alpha_hi > alpha_lo)) {
    ThrowInvalid("threshold search needs 0 < alpha_lo < alpha_hi");
  }
  const RegularizerHessian h = ObservationHessian(b, cfg);
  ThresholdSearch search;
  auto probe = [&](double alpha) {
    search.probes.push_back(RunSweepEntry(b, cfg, h, alpha));
    return search.probes.back().distance_to_delta > departure;
  };
  if (probe(alpha_lo)) {
    search.alpha_star = alpha_lo;
    return search;
  }
  if (!probe(alpha_hi)) {
    search.alpha_star = alpha_hi;
    return search;
  }
  search.bracketed = true;
  double lo = alpha_lo;
  double hi = alpha_hi;
  for (int i = 0; i < steps; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  search.alpha_star = hi;
  return search;
}

}  // namespace specdeblur
