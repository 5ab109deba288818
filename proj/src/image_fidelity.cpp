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

#include "simpeval/image_fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

void require_same_size(const GrayImage& a, const GrayImage& b) {
  if (!a.same_size(b)) {
    throw InvalidArgument("image sizes differ: " + std::to_string(a.width) + "x" +
                          std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                          std::to_string(b.height));
  }
}

double lightness(double pixel, double max_lum, double black_lum) {
  const double y = (black_lum + (max_lum - black_lum) * pixel) / max_lum;
  constexpr double kLinear = 216.0 / 24389.0;
  const double l = y > kLinear ? 116.0 * std::cbrt(y) - 16.0 : (24389.0 / 27.0) * y;
  return l / 100.0;
}

// 5-tap binomial blur with taps `step` apart, edges replicated.
std::vector<double> blur(const std::vector<double>& src, int w, int h, int step) {
  static constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  std::vector<double> tmp(src.size()), out(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      for (int t = -2; t <= 2; ++t) {
        const int xx = std::clamp(x + t * step, 0, w - 1);
        v += kTaps[t + 2] * src[std::size_t(y) * w + xx];
      }
      tmp[std::size_t(y) * w + x] = v;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      for (int t = -2; t <= 2; ++t) {
        const int yy = std::clamp(y + t * step, 0, h - 1);
        v += kTaps[t + 2] * tmp[std::size_t(yy) * w + x];
      }
      out[std::size_t(y) * w + x] = v;
    }
  }
  return out;
}

// Weighted band images, one vector per level.
std::vector<std::vector<double>> weighted_bands(const GrayImage& img, const ViewParams& vp,
                                                const PerceptualConfig& cfg) {
  std::vector<double> g(img.pixels.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = lightness(img.pixels[i], vp.max_luminance, cfg.black_luminance);
  }
  std::vector<std::vector<double>> bands;
  for (int k = 0; k < cfg.levels; ++k) {
    auto next = blur(g, img.width, img.height, 1 << k);
    const double gain = csf(band_frequency(k, vp.pixels_per_degree), cfg) / cfg.threshold_contrast;
    std::vector<double> band(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) band[i] = gain * (g[i] - next[i]);
    bands.push_back(std::move(band));
    g = std::move(next);
  }
  return bands;
}

}  // namespace

double mse(const GrayImage& a, const GrayImage& b, bool normalized) {
  require_same_size(a, b);
  if (a.empty()) throw InvalidArgument("mse of empty images");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    double term = d * d;
    if (normalized) term /= std::max(a.pixels[i] * a.pixels[i], 1e-6);
    sum += term;
  }
  return sum / double(a.pixels.size());
}

ViewParams ViewParams::from_display(double diagonal_inches, double aspect_w, double aspect_h,
                                    int horizontal_pixels, double distance_m,
                                    double max_luminance) {
  if (!(diagonal_inches > 0 && aspect_w > 0 && aspect_h > 0 && horizontal_pixels > 0 &&
        distance_m > 0 && max_luminance > 0)) {
    throw InvalidArgument("display geometry must be positive");
  }
  const double width_m = diagonal_inches * 0.0254 * aspect_w / std::hypot(aspect_w, aspect_h);
  const double pitch = width_m / horizontal_pixels;
  const double deg_per_pixel = 2.0 * std::atan(pitch / (2.0 * distance_m)) * 180.0 / std::numbers::pi;
  return ViewParams{1.0 / deg_per_pixel, max_luminance};
}

ViewParams ViewParams::standard() { return from_display(17.0, 4.0, 3.0, 1024, 0.7); }

double csf(double f, const PerceptualConfig& cfg) {
  if (!(f > 0.0)) return 0.0;
  const double r = f / cfg.csf_peak_cpd;
  return r * std::exp(1.0 - r);
}

double band_frequency(int level, double pixels_per_degree) {
  return pixels_per_degree / double(1 << (level + 2));
}

DiffImage perceptual_diff(const GrayImage& a, const GrayImage& b, const ViewParams& vp,
                          const PerceptualConfig& cfg) {
  require_same_size(a, b);
  if (!(vp.pixels_per_degree > 0.0) || !(vp.max_luminance > 0.0)) {
    throw InvalidArgument("view parameters must be positive");
  }
  DiffImage out{a.width, a.height, std::vector<double>(a.pixels.size(), 0.0)};
  if (a.empty()) return out;
  const auto ba = weighted_bands(a, vp, cfg);
  const auto bb = weighted_bands(b, vp, cfg);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    double pooled = 0.0;
    for (int k = 0; k < cfg.levels; ++k) {
      const double ca = ba[k][i], cb = bb[k][i];
      const double mask = std::min(std::abs(ca), std::abs(cb));
      const double elevation = std::max(1.0, std::pow(mask, cfg.masking_exponent));
      const double d = std::abs(ca - cb) / elevation;
      pooled += std::pow(d, cfg.pooling_exponent);
    }
    const double r = std::pow(pooled, 1.0 / cfg.pooling_exponent);
    out.values[i] = 1.0 - std::exp(-std::pow(r, cfg.psychometric_slope));
  }
  return out;
}

double summarize_diff(const DiffImage& d) {
  if (d.values.empty()) throw InvalidArgument("summarize_diff: empty image");
  double sum = 0.0;
  for (double v : d.values) sum += v;
  return sum / double(d.values.size());
}

}  // namespace simpeval
