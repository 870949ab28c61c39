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

#include "specdeblur/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "specdeblur/errors.hpp"
#include "specdeblur/experiments.hpp"

namespace specdeblur {
namespace {

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowIo("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Header token reader that skips whitespace and '#' comments.
class HeaderReader {
 public:
  explicit HeaderReader(const std::string& data) : data_(data) {}

  long Next(const std::string& path) {
    SkipSpace();
    std::size_t start = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (start == pos_) ThrowIo("malformed graymap header in " + path);
    return std::stol(data_.substr(start, pos_ - start));
  }

  // Position of the raster after the single whitespace following maxval.
  std::size_t RasterStart(const std::string& path) {
    if (pos_ >= data_.size()) ThrowIo("truncated graymap " + path);
    return pos_ + 1;
  }

  std::size_t pos() const { return pos_; }

 private:
  void SkipSpace() {
    while (pos_ < data_.size()) {
      const char ch = data_[pos_];
      if (ch == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  std::size_t pos_ = 2;
};

}  // namespace

Image LoadImage(const std::string& path) {
  const std::string data = ReadAll(path);
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
    ThrowIo("not a P2/P5 graymap: " + path);
  }
  HeaderReader header(data);
  const long cols = header.Next(path);
  const long rows = header.Next(path);
  const long maxval = header.Next(path);
  if (cols < 1 || rows < 1 || maxval < 1 || maxval > 65535) {
    ThrowIo("bad graymap dimensions in " + path);
  }
  Image img(rows, cols);
  const double scale = static_cast<double>(maxval);
  if (data[1] == '5') {
    const std::size_t start = header.RasterStart(path);
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    if (data.size() < start + bytes * rows * cols) ThrowIo("truncated graymap " + path);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data() + start);
    for (Eigen::Index i = 0; i < img.size(); ++i) {
      const unsigned v = bytes == 1 ? p[i] : (static_cast<unsigned>(p[2 * i]) << 8) | p[2 * i + 1];
      img.data()[i] = std::min(1.0, v / scale);
    }
  } else {
    std::istringstream in(data.substr(header.pos()));
    for (Eigen::Index i = 0; i < img.size(); ++i) {
      long v = 0;
      if (!(in >> v) || v < 0) ThrowIo("truncated graymap " + path);
      img.data()[i] = std::min(1.0, v / scale);
    }
  }
  return img;
}

void SaveImage(const Image& img, const std::string& path) {
  if (img.size() == 0) ThrowInvalid("cannot save an empty image");
  std::string out = "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + img.size());
  for (Eigen::Index i = 0; i < img.size(); ++i) {
    const double v = std::isfinite(img.data()[i]) ? std::clamp(img.data()[i], 0.0, 1.0) : 0.0;
    out[header + i] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
  }
  WriteTextFile(path, out);
}

Image LoadMatrixText(const std::string& path) {
  std::istringstream in(ReadAll(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) ThrowIo("bad number '" + tok + "' in " + path);
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) ThrowIo("ragged matrix in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) ThrowIo("empty matrix in " + path);
  Image m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Kernel LoadKernelText(const std::string& path) {
  Image w = LoadMatrixText(path);
  const double sum = w.sum();
  if ((w.array() < 0.0).any() || !(sum > 0.0)) {
    ThrowInvalid("kernel in " + path + " must be nonnegative with positive sum");
  }
  return Kernel::FromWeights(w / sum);
}

std::string FormatMatrixText(const Image& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ' ';
      out += FormatDouble(m(r, c));
    }
    out += '\n';
  }
  return out;
}

void SaveMatrixText(const Image& m, const std::string& path) { WriteTextFile(path, FormatMatrixText(m)); }

Image KernelToDisplay(const Image& weights) {
  const double hi = weights.maxCoeff();
  if (!(hi > 0.0)) return Image::Zero(weights.rows(), weights.cols());
  return (weights.array().max(0.0) / hi).matrix();
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) ThrowIo("cannot write " + path);
  out << contents;
  if (!out) ThrowIo("write failed for " + path);
}

}  // namespace specdeblur
