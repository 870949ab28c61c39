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

// Command-line front end for blind deblurring experiments.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specdeblur/blind.hpp"
#include "specdeblur/convolution.hpp"
#include "specdeblur/deconv.hpp"
#include "specdeblur/errors.hpp"
#include "specdeblur/experiments.hpp"
#include "specdeblur/features.hpp"
#include "specdeblur/io.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/regularizer.hpp"
#include "specdeblur/spectral.hpp"
#include "specdeblur/synthetic.hpp"

namespace fs = std::filesystem;
using namespace specdeblur;

namespace {

constexpr const char* kOutputRootVar = "SPECDEBLUR_OUTPUT_DIR";

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kDegenerate = 3,
  kIoFailure = 4,
  kNotConverged = 5,
};

int ExitCodeFor(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInvalidArgument:
      return kUsage;
    case ErrorCategory::kDegenerateInput:
      return kDegenerate;
    case ErrorCategory::kIo:
      return kIoFailure;
    case ErrorCategory::kConvergence:
      return kNotConverged;
  }
  return kFailure;
}

struct Options {
  // Shared algorithm flags.
  std::string feature = "log";
  double log_sigma = 1.0;
  int kernel_size = 13;
  int sample_size = 0;
  double alpha = 30.0;
  double lambda = 0.0015;
  int max_iters = 150;

  // Inputs and outputs.
  std::string input;
  std::string kernel;
  std::string out_dir = ".";
  std::string prefix;
  int eigenvectors = 0;

  // Synthetic data.
  std::string pattern = "polygons";
  int size = 128;
  std::uint64_t seed = 1;
  std::string blur = "gaussian:sigma=1.5";
  double noise_ratio = 0.0;
  std::uint64_t noise_seed = 7;

  // Evaluation.
  std::string truth;
  std::string reference;
  std::string blurred;
  double epsilon = 0.0;
  int max_shift = 3;

  // Sweeps.
  std::vector<double> alphas;
  double alpha_min = 1e-10;
  double alpha_max = 1e2;
  int alpha_steps = 13;
  bool threshold = false;
  double departure = 0.15;

  std::vector<std::uint64_t> seeds{1, 2};
};

fs::path OutputDir(const Options& o) {
  fs::path root = ".";
  if (const char* env = std::getenv(kOutputRootVar); env != nullptr && *env != '\0') root = env;
  fs::path dir = fs::path(o.out_dir).is_absolute() ? fs::path(o.out_dir) : root / o.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) ThrowIo("cannot create output directory " + dir.string());
  return dir;
}

std::string OutPath(const Options& o, const std::string& name) {
  return (OutputDir(o) / (o.prefix + name)).string();
}

Image LoadInput(const std::string& path) {
  if (path.empty()) ThrowInvalid("--input is required");
  if (fs::path(path).extension() == ".txt") return LoadMatrixText(path);
  return LoadImage(path);
}

FeatureFilter Feature(const Options& o) { return MakeFeature(o.feature, o.log_sigma); }

int SampleSize(const Options& o) {
  return o.sample_size > 0 ? o.sample_size : DefaultSamplingSize(o.kernel_size);
}

DeblurConfig MakeDeblurConfig(const Options& o) {
  DeblurConfig cfg;
  cfg.m1 = cfg.m2 = o.kernel_size;
  cfg.s1 = cfg.s2 = SampleSize(o);
  cfg.alpha = o.alpha;
  cfg.lambda = o.lambda;
  cfg.max_outer = o.max_iters;
  cfg.feature = Feature(o);
  ValidateDeblurConfig(cfg);
  return cfg;
}

void SaveKernel(const Options& o, const Kernel& k, const std::string& stem) {
  SaveMatrixText(k.weights(), OutPath(o, stem + ".txt"));
  SaveImage(KernelToDisplay(k.weights()), OutPath(o, stem + ".pgm"));
}

int RunSpectrum(const Options& o) {
  const Image img = LoadInput(o.input);
  const int s = SampleSize(o);
  const ConvSpectrum spec = ConvSpectrumOf(img, Feature(o), s, s);
  WriteTextFile(OutPath(o, "spectrum.csv"), SpectrumCsv(spec.eigenvalues));
  for (int i = 0; i < std::min(o.eigenvectors, spec.size()); ++i) {
    const Image v = spec.Eigenvector(i);
    const double peak = std::max(v.cwiseAbs().maxCoeff(), 1e-300);
    const Image display = ((v.array() / peak + 1.0) * 0.5).matrix();
    SaveImage(display, OutPath(o, "eigenvector_" + std::to_string(i) + ".pgm"));
  }
  std::cout << "sigma_max " << FormatDouble(spec.sigma_max()) << "\n"
            << "sigma_min " << FormatDouble(spec.sigma_min()) << "\n";
  return kOk;
}

int RunEstimateKernel(const Options& o) {
  const Image b = LoadInput(o.input);
  const int s = SampleSize(o);
  const ConvSpectrum spec = ConvSpectrumOf(b, Feature(o), s, s);
  const RegularizerHessian h = BuildHessian(spec, o.kernel_size, o.kernel_size);
  const KStepResult est = EstimateKernel(h);
  SaveKernel(o, est.kernel, "kernel");
  std::cout << "kkt_residual " << FormatDouble(est.solution.kkt_residual) << "\n";
  return est.solution.converged ? kOk : kNotConverged;
}

int RunDeconv(const Options& o) {
  const Image b = LoadInput(o.input);
  if (o.kernel.empty()) ThrowInvalid("--kernel is required");
  const Kernel k = LoadKernelText(o.kernel);
  TvSolverConfig tv;
  tv.lambda = o.lambda;
  tv.final_iterations = o.max_iters;
  const TvResult r = TvDeconv(b, k, tv);
  const Image restored = CropToSharp(r.image, k.rows(), k.cols());
  SaveImage(restored, OutPath(o, "restored.pgm"));
  SaveMatrixText(restored, OutPath(o, "restored.txt"));
  std::cout << "objective " << FormatDouble(r.objective) << "\n";
  return kOk;
}

int RunDeblur(const Options& o) {
  const Image b = LoadInput(o.input);
  const DeblurConfig cfg = MakeDeblurConfig(o);
  const auto t0 = std::chrono::steady_clock::now();
  const DeblurResult r = BlindDeblur(b, cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  SaveImage(r.restored, OutPath(o, "restored.pgm"));
  SaveMatrixText(r.restored, OutPath(o, "restored.txt"));
  SaveKernel(o, r.kernel, "kernel");
  std::string trace = "iteration,objective\n";
  for (std::size_t i = 0; i < r.objective_trace.size(); ++i) {
    trace += std::to_string(i + 1) + ',' + FormatDouble(r.objective_trace[i]) + '\n';
  }
  WriteTextFile(OutPath(o, "trace.csv"), trace);
  std::cout << "iterations " << r.iterations << "\n"
            << "converged " << (r.converged ? 1 : 0) << "\n"
            << "seconds " << seconds << "\n";
  if (!r.converged) {
    std::cerr << "error[convergence]: no convergence within " << cfg.max_outer
              << " outer iterations\n";
    return kNotConverged;
  }
  return kOk;
}

int RunSynth(const Options& o) {
  const Image sharp = o.input.empty()
                          ? MakeTestImage(ParseTestPattern(o.pattern), o.size, o.size, o.seed)
                          : LoadInput(o.input);
  const Kernel k = MakeKernel(ParseKernelSpec(o.blur, o.kernel_size));
  const FeatureFilter f = Feature(o);
  double epsilon = 0.0;
  if (o.noise_ratio > 0.0) {
    const int s = DefaultSamplingSize(k.rows());
    epsilon = o.noise_ratio * BoundSharpness(sharp, f, s, s, k.rows(), k.cols());
  }
  const SyntheticBlur sb = SynthBlur(sharp, k, epsilon, o.noise_seed, f);
  SaveImage(sharp, OutPath(o, "sharp.pgm"));
  SaveMatrixText(sharp, OutPath(o, "sharp.txt"));
  SaveImage(sb.blurred, OutPath(o, "blurred.pgm"));
  SaveMatrixText(sb.blurred, OutPath(o, "blurred.txt"));
  SaveKernel(o, k, "kernel_true");
  std::cout << "epsilon " << FormatDouble(epsilon) << "\n";
  return kOk;
}

int RunEval(const Options& o) {
  std::string csv = "metric,value\n";
  auto add = [&csv](const std::string& name, double v) { csv += name + ',' + FormatDouble(v) + '\n'; };
  if (!o.kernel.empty() && !o.truth.empty()) {
    const Kernel est = LoadKernelText(o.kernel);
    const Kernel truth = LoadKernelText(o.truth);
    const KernelAlignment a = AlignKernels(est.weights(), truth.weights());
    add("kernel_error", a.error);
    add("shift_row", a.shift_row);
    add("shift_col", a.shift_col);
  }
  if (!o.reference.empty()) {
    const Image ref = LoadInput(o.reference);
    if (!o.input.empty()) add("psnr_restored", AlignedPsnr(LoadInput(o.input), ref, o.max_shift));
    if (!o.blurred.empty()) {
      const Image b = LoadInput(o.blurred);
      const int m = static_cast<int>(b.rows() - ref.rows()) + 1;
      if (m < 1 || b.cols() - ref.cols() + 1 != m) ThrowInvalid("eval: blurred size must be sharp + m - 1");
      add("psnr_blurry", AlignedPsnr(CropToSharp(b, m, m), ref, o.max_shift));
      const int s = DefaultSamplingSize(m);
      const FeatureFilter f = Feature(o);
      const ConvSpectrum spec_b = ConvSpectrumOf(b, f, s, s);
      const double sharp_min = BoundSharpness(ref, f, s, s, m, m);
      add("sigma_ratio", spec_b.sigma_max() / sharp_min);
      add("noiseless_bound", NoiselessKernelBound(spec_b.sigma_max(), sharp_min));
      add("noisy_bound", NoisyKernelBound(spec_b.sigma_max(), spec_b.sigma_max() / spec_b.sigma_min(),
                                          s, s, o.epsilon, sharp_min));
    }
  }
  if (csv == "metric,value\n") ThrowInvalid("eval: give --kernel/--truth and/or --reference");
  WriteTextFile(OutPath(o, "metrics.csv"), csv);
  std::cout << csv;
  return kOk;
}

std::string SweepCsv(const std::vector<SweepEntry>& entries) {
  std::string out = "alpha,distance_to_delta,sharpness,iterations,converged\n";
  for (const SweepEntry& e : entries) {
    out += FormatDouble(e.alpha) + ',' + FormatDouble(e.distance_to_delta) + ',' +
           FormatDouble(e.sharpness) + ',' + std::to_string(e.iterations) + ',' +
           (e.converged ? "1" : "0") + '\n';
  }
  return out;
}

int RunSweep(const Options& o) {
  const Image b = LoadInput(o.input);
  const DeblurConfig cfg = MakeDeblurConfig(o);
  if (o.threshold) {
    const ThresholdSearch t = FindAlphaThreshold(b, cfg, o.alpha_min, o.alpha_max, o.departure);
    WriteTextFile(OutPath(o, "sweep.csv"), SweepCsv(t.probes));
    std::cout << "alpha_star " << FormatDouble(t.alpha_star) << "\n"
              << "bracketed " << (t.bracketed ? 1 : 0) << "\n";
    if (!t.bracketed) std::cerr << "warning: no departure threshold inside [alpha-min, alpha-max]\n";
    return kOk;
  }
  std::vector<double> alphas = o.alphas;
  if (alphas.empty()) {
    if (o.alpha_steps < 2 || !(o.alpha_min > 0.0) || !(o.alpha_max > o.alpha_min)) {
      ThrowInvalid("sweep: need 0 < alpha-min < alpha-max and alpha-steps >= 2");
    }
    const double ratio = std::log(o.alpha_max / o.alpha_min) / (o.alpha_steps - 1);
    for (int i = 0; i < o.alpha_steps; ++i) alphas.push_back(o.alpha_min * std::exp(ratio * i));
  }
  const std::vector<SweepEntry> entries = AlphaSweep(b, cfg, alphas);
  WriteTextFile(OutPath(o, "sweep.csv"), SweepCsv(entries));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    SaveKernel(o, entries[i].kernel, "kernel_" + std::to_string(i));
  }
  return kOk;
}

int RunFig2(const Options& o) {
  const Image sharp = o.input.empty()
                          ? MakeTestImage(ParseTestPattern(o.pattern), o.size, o.size, o.seed)
                          : LoadInput(o.input);
  const Kernel k = MakeKernel(ParseKernelSpec(o.blur, o.kernel_size));
  const int s = SampleSize(o);
  const SpectrumComparison cmp = RunFigure2(sharp, k, s, s, o.log_sigma);
  WriteTextFile(OutPath(o, "fig2_spectra.csv"), cmp.Csv());
  WriteTextFile(OutPath(o, "fig2_summary.csv"), "feature,ratio\ndelta," + FormatDouble(cmp.ratio_delta) +
                                                    "\nlog," + FormatDouble(cmp.ratio_log) + "\n");
  SaveImage(sharp, OutPath(o, "fig2_sharp.pgm"));
  SaveImage(cmp.blurred, OutPath(o, "fig2_blurred.pgm"));
  std::cout << "ratio_delta " << FormatDouble(cmp.ratio_delta) << "\n"
            << "ratio_log " << FormatDouble(cmp.ratio_log) << "\n";
  return kOk;
}

int RunFig3(const Options& o) {
  const std::vector<RecoveryOutcome> outcomes = RunFigure3(o.seeds, Feature(o));
  WriteTextFile(OutPath(o, "fig3_errors.csv"), RecoveryCsv(outcomes));
  Options per_case = o;
  for (const RecoveryOutcome& r : outcomes) {
    per_case.out_dir = (fs::path(o.out_dir) / r.label).string();
    SaveKernel(per_case, r.truth, "kernel_true");
    SaveKernel(per_case, r.estimate, "kernel_estimate");
  }
  int violations = 0;
  for (const RecoveryOutcome& r : outcomes) violations += r.kernel_error > r.noiseless_bound;
  std::cout << "cases " << outcomes.size() << "\n"
            << "bound_violations " << violations << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind image deblurring with a spectral kernel regularizer"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the flags; flags given on the command line win");
  Options o;

  app.add_option("--feature", o.feature, "feature filter for spectra: delta or log")
      ->check(CLI::IsMember({"delta", "log"}));
  app.add_option("--log-sigma", o.log_sigma, "LoG scale");
  app.add_option("--kernel-size", o.kernel_size, "square kernel extent");
  app.add_option("--sample-size", o.sample_size, "square sampling size (default 1.5x kernel size)");
  app.add_option("--alpha", o.alpha, "regularizer weight");
  app.add_option("--lambda", o.lambda, "total variation weight");
  app.add_option("--max-iters", o.max_iters, "outer iterations (deblur) or final TV iterations (deconv)");
  app.add_option("--input", o.input, "input image (.pgm, or .txt matrix)");
  app.add_option("--kernel", o.kernel, "kernel text matrix");
  app.add_option("--out-dir", o.out_dir, "output directory, relative to $SPECDEBLUR_OUTPUT_DIR");
  app.add_option("--prefix", o.prefix, "file name prefix for outputs");
  app.add_option("--eigenvectors", o.eigenvectors, "number of eigenvector images to write");
  app.add_option("--pattern", o.pattern, "procedural scene: steps, bars, checker, polygons, mixed");
  app.add_option("--size", o.size, "procedural scene size");
  app.add_option("--seed", o.seed, "procedural scene seed");
  app.add_option("--blur", o.blur, "kernel spec, e.g. motion-line:length=9,angle=30");
  app.add_option("--noise-ratio", o.noise_ratio, "epsilon / sigma_min(sharp)");
  app.add_option("--noise-seed", o.noise_seed, "noise seed");
  app.add_option("--truth", o.truth, "true kernel text matrix");
  app.add_option("--reference", o.reference, "sharp reference image");
  app.add_option("--blurred", o.blurred, "blurred observation for PSNR and bounds");
  app.add_option("--epsilon", o.epsilon, "noise level for the noisy bound");
  app.add_option("--max-shift", o.max_shift, "translation search radius for PSNR");
  app.add_option("--alphas", o.alphas, "explicit alpha list for sweep")->delimiter(',');
  app.add_option("--alpha-min", o.alpha_min, "sweep range start");
  app.add_option("--alpha-max", o.alpha_max, "sweep range end");
  app.add_option("--alpha-steps", o.alpha_steps, "log-spaced sweep points");
  app.add_flag("--threshold", o.threshold, "bisect for the no-blur threshold instead of a grid");
  app.add_option("--departure", o.departure, "distance from the impulse marking departure");
  app.add_option("--seeds", o.seeds, "scene seeds for repro fig3")->delimiter(',');

  int code = kOk;
  auto bind = [&](CLI::App* sub, int (*fn)(const Options&)) {
    sub->fallthrough();
    sub->callback([&code, &o, fn] { code = fn(o); });
  };
  bind(app.add_subcommand("spectrum", "convolution eigenvalues of an image"), RunSpectrum);
  bind(app.add_subcommand("estimate-kernel", "kernel from the regularizer alone"), RunEstimateKernel);
  bind(app.add_subcommand("deconv", "non-blind TV deconvolution"), RunDeconv);
  bind(app.add_subcommand("deblur", "blind deblurring by alternating minimization"), RunDeblur);
  bind(app.add_subcommand("synth", "synthetic blurred image"), RunSynth);
  bind(app.add_subcommand("eval", "kernel error, PSNR and error bounds"), RunEval);
  bind(app.add_subcommand("sweep", "alpha sweep or no-blur threshold search"), RunSweep);
  CLI::App* repro = app.add_subcommand("repro", "desk-scale reproductions");
  repro->fallthrough();
  repro->require_subcommand(1);
  bind(repro->add_subcommand("fig2", "spectra of sharp and blurred images"), RunFig2);
  bind(repro->add_subcommand("fig3", "kernel recovery gallery"), RunFig3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    std::cerr << "error[" << CategoryName(e.category()) << "]: " << e.what() << "\n";
    return ExitCodeFor(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return code;
}
