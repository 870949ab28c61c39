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

#include "specdeblur/experiments.hpp"

#include <cstdio>
#include <future>

#include "specdeblur/blind.hpp"
#include "specdeblur/convolution.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/regularizer.hpp"
#include "specdeblur/spectral.hpp"

namespace specdeblur {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string SpectrumComparison::Csv() const {
  std::string out = "index,sharp_delta,blurred_delta,sharp_log,blurred_log\n";
  for (Eigen::Index i = 0; i < sharp_delta.size(); ++i) {
    out += std::to_string(i) + ',' + FormatDouble(sharp_delta(i)) + ',' +
           FormatDouble(blurred_delta(i)) + ',' + FormatDouble(sharp_log(i)) + ',' +
           FormatDouble(blurred_log(i)) + '\n';
  }
  return out;
}

SpectrumComparison RunFigure2(const Image& sharp, const Kernel& k, int s1, int s2,
                              double log_sigma) {
  SpectrumComparison out;
  out.blurred = Conv2dFull(sharp, k.weights());
  const FeatureFilter delta = MakeDelta();
  const FeatureFilter log = MakeLog(log_sigma);
  out.sharp_delta = ConvSpectrumOf(sharp, delta, s1, s2).eigenvalues;
  out.blurred_delta = ConvSpectrumOf(out.blurred, delta, s1, s2).eigenvalues;
  out.sharp_log = ConvSpectrumOf(sharp, log, s1, s2).eigenvalues;
  out.blurred_log = ConvSpectrumOf(out.blurred, log, s1, s2).eigenvalues;
  out.ratio_delta = out.blurred_delta(0) / out.sharp_delta(out.sharp_delta.size() - 1);
  out.ratio_log = out.blurred_log(0) / out.sharp_log(out.sharp_log.size() - 1);
  return out;
}

std::string SpectrumCsv(const Vector& eigenvalues) {
  std::string out = "index,sigma\n";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    out += std::to_string(i) + ',' + FormatDouble(eigenvalues(i)) + '\n';
  }
  return out;
}

namespace {

std::string ShortNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double KernelParameter(const KernelSpec& k) {
  switch (k.family) {
    case KernelFamily::kGaussian:
      return k.sigma;
    case KernelFamily::kRandomSparse:
      return k.nonzeros;
    default:
      return k.length;
  }
}

}  // namespace

RecoveryOutcome RunRecoveryCase(const RecoveryCase& c, const FeatureFilter& feature) {
  RecoveryOutcome out;
  const int m = c.kernel.size;
  const int s = DefaultSamplingSize(m);
  out.s1 = s;
  out.s2 = s;
  out.truth = MakeKernel(c.kernel);
  const Image sharp = MakeTestImage(c.pattern, c.image_size, c.image_size, c.image_seed);
  out.sigma_min_sharp = BoundSharpness(sharp, feature, s, s, m, m);
  out.epsilon = c.noise_ratio * out.sigma_min_sharp;
  const SyntheticBlur blur = SynthBlur(sharp, out.truth, out.epsilon, c.noise_seed, feature);
  const ConvSpectrum spectrum = ConvSpectrumOf(blur.blurred, feature, s, s);
  out.sigma_max_blurred = spectrum.sigma_max();
  out.sigma_min_blurred = spectrum.sigma_min();
  const RegularizerHessian h = BuildHessian(spectrum, m, m, HessianWeighting::kInverseSquared);
  const KStepResult est = EstimateKernel(h);
  out.estimate = est.kernel;
  out.kkt_residual = est.solution.kkt_residual;
  out.kernel_error = KernelError(out.estimate.weights(), out.truth.weights());
  out.noiseless_bound = NoiselessKernelBound(out.sigma_max_blurred, out.sigma_min_sharp);
  out.noisy_bound = NoisyKernelBound(out.sigma_max_blurred,
                                     out.sigma_max_blurred / out.sigma_min_blurred, s, s,
                                     out.epsilon, out.sigma_min_sharp);
  out.label = KernelFamilyName(c.kernel.family) + ShortNumber(KernelParameter(c.kernel)) + "-" +
              std::to_string(c.image_seed) + "-eps" + ShortNumber(c.noise_ratio);
  return out;
}

std::vector<RecoveryCase> Figure3Cases(std::span<const std::uint64_t> seeds) {
  std::vector<RecoveryCase> cases;
  for (const std::uint64_t seed : seeds) {
    std::vector<KernelSpec> kernels(6);
    kernels[0].sigma = 0.0;
    kernels[1].sigma = 1.5;
    kernels[2].family = KernelFamily::kMotionLine;
    kernels[2].length = 7.0;
    kernels[2].angle_deg = 30.0 + 25.0 * static_cast<double>(seed % 5);
    kernels[3].family = KernelFamily::kRandomSparse;
    kernels[3].nonzeros = 6;
    kernels[4].family = KernelFamily::kCurve;
    kernels[4].length = 10.0;
    kernels[5].family = KernelFamily::kCurve;
    kernels[5].length = 16.0;
    for (std::size_t i = 0; i < kernels.size(); ++i) {
      kernels[i].size = 9;
      kernels[i].seed = seed * 100 + i;
      RecoveryCase c;
      c.kernel = kernels[i];
      c.image_seed = seed;
      c.noise_seed = seed * 100 + i + 50;
      cases.push_back(c);
    }
  }
  return cases;
}

std::vector<RecoveryOutcome> RunFigure3(std::span<const std::uint64_t> seeds,
                                        const FeatureFilter& feature) {
  const std::vector<RecoveryCase> cases = Figure3Cases(seeds);
  std::vector<std::future<RecoveryOutcome>> jobs;
  for (const RecoveryCase& c : cases) {
    jobs.push_back(std::async(std::launch::async, [&c, &feature] { return RunRecoveryCase(c, feature); }));
  }
  std::vector<RecoveryOutcome> out;
  for (auto& j : jobs) out.push_back(j.get());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = std::to_string(i) + "-" + out[i].label;
  return out;
}

std::string RecoveryCsv(std::span<const RecoveryOutcome> outcomes) {
  std::string out =
      "label,kernel_error,noiseless_bound,noisy_bound,sigma_max_blurred,sigma_min_sharp,epsilon,"
      "kkt_residual\n";
  for (const RecoveryOutcome& o : outcomes) {
    out += o.label + ',' + FormatDouble(o.kernel_error) + ',' + FormatDouble(o.noiseless_bound) +
           ',' + FormatDouble(o.noisy_bound) + ',' + FormatDouble(o.sigma_max_blurred) + ',' +
           FormatDouble(o.sigma_min_sharp) + ',' + FormatDouble(o.epsilon) + ',' +
           FormatDouble(o.kkt_residual) + '\n';
  }
  return out;
}

}  // namespace specdeblur
