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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "specdeblur/blind.hpp"
#include "specdeblur/convolution.hpp"
#include "specdeblur/deconv.hpp"
#include "specdeblur/errors.hpp"
#include "specdeblur/features.hpp"
#include "specdeblur/io.hpp"
#include "specdeblur/metrics.hpp"
#include "specdeblur/regularizer.hpp"
#include "specdeblur/simplex_qp.hpp"
#include "specdeblur/spectral.hpp"
#include "specdeblur/synthetic.hpp"

namespace py = pybind11;
using namespace specdeblur;

namespace {

Kernel ToKernel(const Image& w) { return Kernel::FromWeights(w); }

DeblurConfig MakeConfig(int kernel_size, int sample_size, double alpha, double lambda,
                        int max_iters, const std::string& feature, double log_sigma) {
  DeblurConfig cfg;
  cfg.m1 = cfg.m2 = kernel_size;
  cfg.s1 = cfg.s2 = sample_size;
  cfg.alpha = alpha;
  cfg.lambda = lambda;
  cfg.tv.lambda = lambda;
  cfg.max_outer = max_iters;
  cfg.feature = MakeFeature(feature, log_sigma);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_specdeblur, m) {
  m.doc() = "Blind deblurring from convolution eigenvalues";

  static py::exception<Error> error(m, "SpecDeblurError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error((std::string(CategoryName(e.category())) + ": " + e.what()).c_str());
    }
  });

  m.def("conv2d_full", &Conv2dFull, py::arg("x"), py::arg("y"));
  m.def("conv2d_valid", &Conv2dValid, py::arg("x"), py::arg("y"));
  m.def("toeplitz_dense",
        [](const Image& x, int k1, int k2) { return Matrix(Toeplitz(x, k1, k2).Dense()); },
        py::arg("x"), py::arg("k1"), py::arg("k2"));

  m.def("feature_map",
        [](const Image& img, const std::string& feature, double log_sigma) {
          return ApplyFilter(MakeFeature(feature, log_sigma), img);
        },
        py::arg("image"), py::arg("feature") = "delta", py::arg("log_sigma") = 1.0);

  m.def("conv_spectrum",
        [](const Image& img, int s1, int s2, const std::string& feature, double log_sigma) {
          const ConvSpectrum s = ConvSpectrumOf(img, MakeFeature(feature, log_sigma), s1, s2);
          return py::make_tuple(s.eigenvalues, s.eigenvectors);
        },
        py::arg("image"), py::arg("s1"), py::arg("s2"), py::arg("feature") = "delta",
        py::arg("log_sigma") = 1.0,
        "Convolution eigenvalues (nonincreasing) and eigenvectors as columns.");

  m.def("regularizer_hessian",
        [](const Image& img, int m1, int m2, int s1, int s2, const std::string& feature,
           double log_sigma) {
          return BuildHessian(ConvSpectrumOf(img, MakeFeature(feature, log_sigma), s1, s2), m1,
                              m2)
              .h;
        },
        py::arg("image"), py::arg("m1"), py::arg("m2"), py::arg("s1"), py::arg("s2"),
        py::arg("feature") = "delta", py::arg("log_sigma") = 1.0);

  m.def("project_simplex", &ProjectSimplex, py::arg("v"));
  m.def("solve_qp",
        [](const Matrix& q, const Vector& c, double tol, int max_iter) {
          QpOptions opt;
          opt.tol = tol;
          opt.max_iter = max_iter;
          const QpSolution s = SolveQp(QpProblem{q, c}, opt);
          return py::make_tuple(s.x, s.kkt_residual, s.converged);
        },
        py::arg("q"), py::arg("c"), py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
        "minimize x'Qx + c'x over the probability simplex.");

  m.def("estimate_kernel",
        [](const Image& blurred, int kernel_size, int sample_size, const std::string& feature,
           double log_sigma) {
          const DeblurConfig cfg =
              MakeConfig(kernel_size, sample_size, 1.0, 0.0015, 1, feature, log_sigma);
          return Image(EstimateKernel(ObservationHessian(blurred, cfg)).kernel.weights());
        },
        py::arg("blurred"), py::arg("kernel_size"), py::arg("sample_size") = 0,
        py::arg("feature") = "delta", py::arg("log_sigma") = 1.0);

  m.def("tv_deconv",
        [](const Image& blurred, const Image& kernel, double lambda) {
          TvSolverConfig cfg;
          cfg.lambda = lambda;
          return TvDeconv(blurred, ToKernel(kernel), cfg).image;
        },
        py::arg("blurred"), py::arg("kernel"), py::arg("lambda_") = 0.0015);

  m.def("blind_deblur",
        [](const Image& blurred, int kernel_size, int sample_size, double alpha, double lambda,
           int max_iters, const std::string& feature, double log_sigma) {
          const DeblurConfig cfg = MakeConfig(kernel_size, sample_size, alpha, lambda, max_iters,
                                              feature, log_sigma);
          DeblurResult r = BlindDeblur(blurred, cfg);
          py::dict out;
          out["restored"] = r.restored;
          out["latent"] = r.latent;
          out["kernel"] = Image(r.kernel.weights());
          out["objective_trace"] = r.objective_trace;
          out["iterations"] = r.iterations;
          out["converged"] = r.converged;
          return out;
        },
        py::arg("blurred"), py::arg("kernel_size"), py::arg("sample_size") = 0,
        py::arg("alpha") = 30.0, py::arg("lambda_") = 0.0015, py::arg("max_iters") = 150,
        py::arg("feature") = "log", py::arg("log_sigma") = 1.0);

  m.def("make_kernel",
        [](const std::string& spec, int size) {
          return Image(MakeKernel(ParseKernelSpec(spec, size)).weights());
        },
        py::arg("spec"), py::arg("size") = 9,
        "Kernel from a spec such as 'motion-line:length=7,angle=30'.");
  m.def("make_test_image",
        [](const std::string& pattern, int rows, int cols, std::uint64_t seed) {
          return MakeTestImage(ParseTestPattern(pattern), rows, cols, seed);
        },
        py::arg("pattern"), py::arg("rows"), py::arg("cols"), py::arg("seed") = 1);
  m.def("synth_blur",
        [](const Image& sharp, const Image& kernel, double epsilon, std::uint64_t seed,
           const std::string& feature) {
          return SynthBlur(sharp, ToKernel(kernel), epsilon, seed, MakeFeature(feature)).blurred;
        },
        py::arg("sharp"), py::arg("kernel"), py::arg("epsilon") = 0.0, py::arg("seed") = 7,
        py::arg("feature") = "delta");

  m.def("kernel_error", &KernelError, py::arg("estimate"), py::arg("truth"));
  m.def("psnr", &Psnr, py::arg("estimate"), py::arg("reference"), py::arg("peak") = 1.0);
  m.def("total_variation", &TotalVariation, py::arg("image"));

  m.def("load_image", &LoadImage, py::arg("path"));
  m.def("save_image", &SaveImage, py::arg("image"), py::arg("path"));
  m.def("load_kernel",
        [](const std::string& path) { return Image(LoadKernelText(path).weights()); },
        py::arg("path"));
}
