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

#include "specdeblur/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "specdeblur/convolution.hpp"
#include "specdeblur/errors.hpp"

namespace specdeblur {
namespace {

struct Point {
  double x;  // column
  double y;  // row
};

// Length of segment a-b inside the axis-aligned box (Liang-Barsky clip).
double ClippedLength(Point a, Point b, double x0, double x1, double y0, double y1) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return 0.0;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return 0.0;
  }
  return (t1 - t0) * std::hypot(dx, dy);
}

// Adds the length of each segment of `path` falling inside every pixel.
void RasterizePath(const std::vector<Point>& path, Image& canvas) {
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const Point a = path[s];
    const Point b = path[s + 1];
    const int r_lo = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - 0.5)));
    const int r_hi = std::min(static_cast<int>(canvas.rows()) - 1,
                              static_cast<int>(std::ceil(std::max(a.y, b.y) + 0.5)));
    const int c_lo = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - 0.5)));
    const int c_hi = std::min(static_cast<int>(canvas.cols()) - 1,
                              static_cast<int>(std::ceil(std::max(a.x, b.x) + 0.5)));
    for (int r = r_lo; r <= r_hi; ++r) {
      for (int c = c_lo; c <= c_hi; ++c) {
        canvas(r, c) += ClippedLength(a, b, c - 0.5, c + 0.5, r - 0.5, r + 0.5);
      }
    }
  }
}

Kernel NormalizeOrDelta(Image w) {
  const double sum = w.sum();
  if (!(sum > 0.0)) return Kernel::Delta(static_cast<int>(w.rows()), static_cast<int>(w.cols()));
  w /= sum;
  return Kernel::FromWeights(std::move(w));
}

Kernel GaussianKernel(int m, double sigma) {
  if (sigma < 0.0) ThrowInvalid("gaussian kernel: sigma must be nonnegative");
  if (sigma == 0.0) return Kernel::Delta(m, m);
  const int c = (m - 1) / 2;
  Image w(m, m);
  for (int r = 0; r < m; ++r) {
    for (int q = 0; q < m; ++q) {
      const double d2 = static_cast<double>((r - c) * (r - c) + (q - c) * (q - c));
      w(r, q) = std::exp(-d2 / (2.0 * sigma * sigma));
    }
  }
  return NormalizeOrDelta(std::move(w));
}

Kernel MotionLineKernel(int m, double length, double angle_deg) {
  if (length < 0.0) ThrowInvalid("motion-line kernel: length must be nonnegative");
  const double c = (m - 1) / 2;
  const double theta = angle_deg * std::numbers::pi / 180.0;
  // Angles are counterclockwise with rows growing downwards.
  const double hx = 0.5 * length * std::cos(theta);
  const double hy = -0.5 * length * std::sin(theta);
  Image w = Image::Zero(m, m);
  RasterizePath({{c - hx, c - hy}, {c + hx, c + hy}}, w);
  return NormalizeOrDelta(std::move(w));
}

Kernel RandomSparseKernel(int m, int nonzeros, std::uint64_t seed) {
  if (nonzeros < 1 || nonzeros > m * m) ThrowInvalid("random-sparse kernel: bad nonzero count");
  std::mt19937_64 rng(seed);
  std::vector<int> idx(static_cast<std::size_t>(m) * m);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  Image w = Image::Zero(m, m);
  for (int i = 0; i < nonzeros; ++i) w(idx[i] / m, idx[i] % m) = weight(rng);
  return NormalizeOrDelta(std::move(w));
}

Kernel CurveKernel(int m, double length, std::uint64_t seed) {
  if (length < 0.0) ThrowInvalid("curve kernel: length must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start_angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> turn(0.0, 0.25);
  constexpr double kStep = 0.25;
  double angle = start_angle(rng);
  std::vector<Point> path{{0.0, 0.0}};
  const int steps = static_cast<int>(std::ceil(length / kStep));
  for (int i = 0; i < steps; ++i) {
    angle += turn(rng);
    const Point last = path.back();
    path.push_back({last.x + kStep * std::cos(angle), last.y - kStep * std::sin(angle)});
  }
  // Center the bounding box of the trajectory on the kernel center.
  double x_lo = path[0].x, x_hi = path[0].x, y_lo = path[0].y, y_hi = path[0].y;
  for (const Point& p : path) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  const double c = (m - 1) / 2;
  const double ox = c - 0.5 * (x_lo + x_hi);
  const double oy = c - 0.5 * (y_lo + y_hi);
  for (Point& p : path) {
    p.x += ox;
    p.y += oy;
  }
  Image w = Image::Zero(m, m);
  RasterizePath(path, w);
  return NormalizeOrDelta(std::move(w));
}

double ParseNumber(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) ThrowInvalid("kernel spec: bad value for " + key + ": " + value);
  return v;
}

// Convex polygon with `corners` vertices around (cx, cy), painted with `value`.
void PaintPolygon(Image& img, double cx, double cy, double radius, int corners, double rotation,
                  std::mt19937_64& rng, double value) {
  std::uniform_real_distribution<double> jitter(0.6, 1.0);
  std::vector<Point> v;
  for (int i = 0; i < corners; ++i) {
    const double a = rotation + 2.0 * std::numbers::pi * i / corners;
    const double r = radius * jitter(rng);
    v.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      bool inside = true;
      for (int i = 0; i < corners && inside; ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % corners];
        inside = (b.x - a.x) * (r - a.y) - (b.y - a.y) * (c - a.x) >= 0.0;
      }
      if (inside) img(r, c) = value;
    }
  }
}

Image Steps(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img = Image::Constant(rows, cols, 0.0);
  for (int k = 0; k < 12; ++k) {
    const double a = 2.0 * std::numbers::pi * u(rng);
    const double nx = std::cos(a), ny = std::sin(a);
    const double off = (u(rng) - 0.5) * 0.8 * std::min(rows, cols);
    const double amp = u(rng) - 0.5;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (nx * (c - cols / 2.0) + ny * (r - rows / 2.0) > off) img(r, c) += amp;
      }
    }
  }
  return img;
}

Image Bars(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> width(2, 9);
  std::uniform_real_distribution<double> level(0.0, 1.0);
  Image img(rows, cols);
  std::vector<double> col_level(cols), row_level(rows);
  for (int c = 0; c < cols;) {
    const int w = width(rng);
    const double v = level(rng);
    for (int i = 0; i < w && c < cols; ++i, ++c) col_level[c] = v;
  }
  for (int r = 0; r < rows;) {
    const int w = width(rng);
    const double v = level(rng);
    for (int i = 0; i < w && r < rows; ++i, ++r) row_level[r] = v;
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      img(r, c) = (r < rows / 2) ? col_level[c] : row_level[r];
    }
  }
  return img;
}

Image Checker(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cell_dist(5, 11);
  std::uniform_real_distribution<double> level(0.0, 1.0);
  const int cell = cell_dist(rng);
  const int cr = (rows + cell - 1) / cell;
  const int cc = (cols + cell - 1) / cell;
  Image levels(cr, cc);
  for (int i = 0; i < cr; ++i) {
    for (int j = 0; j < cc; ++j) levels(i, j) = ((i + j) % 2 ? 0.15 : 0.85) + 0.1 * (level(rng) - 0.5);
  }
  Image img(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) img(r, c) = levels(r / cell, c / cell);
  }
  return img;
}

Image Polygons(int rows, int cols, std::mt19937_64& rng, Image img) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> corners(3, 7);
  const double extent = std::min(rows, cols);
  const int count = std::max(8, static_cast<int>(extent * extent / 400.0));
  for (int k = 0; k < count; ++k) {
    const double cx = u(rng) * cols;
    const double cy = u(rng) * rows;
    const double radius = (0.03 + 0.2 * u(rng)) * extent;
    const int n = corners(rng);
    const double rot = 2.0 * std::numbers::pi * u(rng);
    PaintPolygon(img, cx, cy, radius, n, rot, rng, u(rng));
  }
  return img;
}

Image Rescale01(Image img) {
  const double lo = img.minCoeff();
  const double hi = img.maxCoeff();
  if (hi - lo <= 0.0) return Image::Constant(img.rows(), img.cols(), 0.5);
  return ((img.array() - lo) / (hi - lo)).matrix();
}

}  // namespace

Kernel MakeKernel(const KernelSpec& spec) {
  if (spec.size < 1) ThrowInvalid("kernel size must be positive");
  switch (spec.family) {
    case KernelFamily::kGaussian:
      return GaussianKernel(spec.size, spec.sigma);
    case KernelFamily::kMotionLine:
      return MotionLineKernel(spec.size, spec.length, spec.angle_deg);
    case KernelFamily::kRandomSparse:
      return RandomSparseKernel(spec.size, spec.nonzeros, spec.seed);
    case KernelFamily::kCurve:
      return CurveKernel(spec.size, spec.length, spec.seed);
  }
  ThrowInvalid("unknown kernel family");
}

KernelFamily ParseKernelFamily(const std::string& name) {
  if (name == "gaussian") return KernelFamily::kGaussian;
  if (name == "motion-line") return KernelFamily::kMotionLine;
  if (name == "random-sparse") return KernelFamily::kRandomSparse;
  if (name == "curve") return KernelFamily::kCurve;
  ThrowInvalid("unknown kernel family '" + name + "'");
}

std::string KernelFamilyName(KernelFamily family) {
  switch (family) {
    case KernelFamily::kGaussian:
      return "gaussian";
    case KernelFamily::kMotionLine:
      return "motion-line";
    case KernelFamily::kRandomSparse:
      return "random-sparse";
    case KernelFamily::kCurve:
      return "curve";
  }
  return "unknown";
}

KernelSpec ParseKernelSpec(const std::string& text, int default_size) {
  KernelSpec spec;
  spec.size = default_size;
  const auto colon = text.find(':');
  spec.family = ParseKernelFamily(text.substr(0, colon));
  if (colon == std::string::npos) return spec;
  std::stringstream params(text.substr(colon + 1));
  std::string item;
  while (std::getline(params, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) ThrowInvalid("kernel spec: expected key=value, got " + item);
    const std::string key = item.substr(0, eq);
    const double v = ParseNumber(key, item.substr(eq + 1));
    if (key == "size") {
      spec.size = static_cast<int>(v);
    } else if (key == "sigma") {
      spec.sigma = v;
    } else if (key == "length") {
      spec.length = v;
    } else if (key == "angle") {
      spec.angle_deg = v;
    } else if (key == "nonzeros") {
      spec.nonzeros = static_cast<int>(v);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(v);
    } else {
      ThrowInvalid("kernel spec: unknown key " + key);
    }
  }
  return spec;
}

TestPattern ParseTestPattern(const std::string& name) {
  if (name == "steps") return TestPattern::kSteps;
  if (name == "bars") return TestPattern::kBars;
  if (name == "checker") return TestPattern::kChecker;
  if (name == "polygons") return TestPattern::kPolygons;
  if (name == "mixed") return TestPattern::kMixed;
  ThrowInvalid("unknown test pattern '" + name + "'");
}

Image MakeTestImage(TestPattern pattern, int rows, int cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1) ThrowInvalid("test image size must be positive");
  std::mt19937_64 rng(seed);
  switch (pattern) {
    case TestPattern::kSteps:
      return Rescale01(Steps(rows, cols, rng));
    case TestPattern::kBars:
      return Bars(rows, cols, rng);
    case TestPattern::kChecker:
      return Checker(rows, cols, rng);
    case TestPattern::kPolygons: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return Polygons(rows, cols, rng, Image::Constant(rows, cols, u(rng)));
    }
    case TestPattern::kMixed:
      return Polygons(rows, cols, rng, Checker(rows, cols, rng));
  }
  ThrowInvalid("unknown test pattern");
}

SyntheticBlur SynthBlur(const Image& sharp, const Kernel& k, double epsilon, std::uint64_t seed,
                        const FeatureFilter& feature) {
  if (!(epsilon >= 0.0)) ThrowInvalid("synth: epsilon must be nonnegative");
  SyntheticBlur out;
  out.blurred = Conv2dFull(sharp, k.weights());
  out.noise = Image::Zero(out.blurred.rows(), out.blurred.cols());
  if (epsilon > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index i = 0; i < out.noise.size(); ++i) out.noise.data()[i] = gauss(rng);
    const double norm = ApplyFilter(feature, out.noise).norm();
    out.noise *= epsilon / norm;
    out.blurred += out.noise;
  }
  return out;
}

}  // namespace specdeblur
