// Copyright 2026 The simpeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMPEVAL_IMAGE_HPP_
#define SIMPEVAL_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace simpeval {

// Single-channel luminance raster, row-major, values in [0, 1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0);

  double& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
  double at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
  bool empty() const { return pixels.empty(); }
  bool same_size(const GrayImage& o) const { return width == o.width && height == o.height; }
};

// Area-weighted (box filter) resampling to an arbitrary size.
GrayImage resize_box(const GrayImage& img, int width, int height);

// Round every pixel to the nearest multiple of 1/255.
GrayImage quantize8(const GrayImage& img);

// Binary PGM (P5). Written 8-bit; 8- and 16-bit files are read.
void write_pgm(std::ostream& out, const GrayImage& img);
void save_pgm(const std::filesystem::path& path, const GrayImage& img);
GrayImage read_pgm(std::istream& in);
GrayImage load_pgm(const std::filesystem::path& path);

// 8-bit grayscale PNG in memory (used when serving stimuli to browsers).
std::string encode_png(const GrayImage& img);

}  // namespace simpeval

#endif  // SIMPEVAL_IMAGE_HPP_
