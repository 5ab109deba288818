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

#include "simpeval/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <png.h>

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Next header token of a PNM file, skipping whitespace and comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

// Overlap length of [a0, a1) with [b0, b1).
double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

GrayImage::GrayImage(int w, int h, double fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw InvalidArgument("negative image size");
  pixels.assign(std::size_t(w) * std::size_t(h), fill);
}

GrayImage resize_box(const GrayImage& img, int width, int height) {
  if (width <= 0 || height <= 0) throw InvalidArgument("resize_box: zero-size target");
  if (img.empty()) throw InvalidArgument("resize_box: empty source");
  if (width == img.width && height == img.height) return img;

  // Separable: each output pixel averages the source area it covers.
  const double sx = double(img.width) / width, sy = double(img.height) / height;
  auto weights = [](int out_n, int in_n, double scale) {
    std::vector<std::vector<std::pair<int, double>>> w(out_n);
    for (int o = 0; o < out_n; ++o) {
      const double a0 = o * scale, a1 = (o + 1) * scale;
      for (int i = std::max(0, int(std::floor(a0))); i < std::min(in_n, int(std::ceil(a1))); ++i) {
        const double ov = overlap(a0, a1, i, i + 1);
        if (ov > 0.0) w[o].emplace_back(i, ov / scale);
      }
    }
    return w;
  };
  const auto wx = weights(width, img.width, sx);
  const auto wy = weights(height, img.height, sy);

  GrayImage rows(width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      for (auto [i, w] : wx[x]) v += w * img.at(i, y);
      rows.at(x, y) = v;
    }
  }
  GrayImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 0.0;
      for (auto [j, w] : wy[y]) v += w * rows.at(x, j);
      out.at(x, y) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

GrayImage quantize8(const GrayImage& img) {
  GrayImage out = img;
  for (auto& p : out.pixels) p = to_byte(p) / 255.0;
  return out;
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  std::vector<char> row(std::size_t(img.width));
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) row[x] = static_cast<char>(to_byte(img.at(x, y)));
    out.write(row.data(), std::streamsize(row.size()));
  }
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_pgm(out, img);
}

GrayImage read_pgm(std::istream& in) {
  if (pnm_token(in) != "P5") throw ParseError("not a binary PGM (P5)", 1);
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(pnm_token(in));
    h = std::stoi(pnm_token(in));
    maxval = std::stoi(pnm_token(in));
  } catch (const std::exception&) {
    throw ParseError("bad PGM header", 0);
  }
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) throw ParseError("bad PGM header values", 0);
  GrayImage img(w, h);
  const bool wide = maxval > 255;
  for (auto& p : img.pixels) {
    int v = in.get();
    if (wide) v = (v << 8) | in.get();
    if (!in) throw ParseError("truncated PGM data", 0);
    p = std::min(1.0, double(v) / maxval);
  }
  return img;
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_pgm(in);
}

std::string encode_png(const GrayImage& img) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  std::string buffer;
  std::vector<png_byte> row(std::size_t(img.width));
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw Error("PNG encoding failed");
  }
  png_set_write_fn(
      png, &buffer,
      [](png_structp p, png_bytep data, png_size_t len) {
        static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<char*>(data), len);
      },
      nullptr);
  png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) row[x] = to_byte(img.at(x, y));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return buffer;
}

}  // namespace simpeval
