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

#ifndef SPECDEBLUR_IO_HPP_
#define SPECDEBLUR_IO_HPP_

#include <string>

#include "specdeblur/image.hpp"

namespace specdeblur {

// Portable graymap (P2 text or P5 binary, 8 or 16 bit). Intensities are
// mapped to [0, 1].
Image LoadImage(const std::string& path);

// Writes binary 8-bit P5; values are clamped to [0, 1] and rounded.
void SaveImage(const Image& img, const std::string& path);

// Kernel as whitespace-separated rows of decimals.
Kernel LoadKernelText(const std::string& path);
Image LoadMatrixText(const std::string& path);
void SaveMatrixText(const Image& m, const std::string& path);
std::string FormatMatrixText(const Image& m);

// Kernel rescaled to its maximum for display.
Image KernelToDisplay(const Image& weights);

void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace specdeblur

#endif  // SPECDEBLUR_IO_HPP_
