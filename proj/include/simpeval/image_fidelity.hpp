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

#ifndef SIMPEVAL_IMAGE_FIDELITY_HPP_
#define SIMPEVAL_IMAGE_FIDELITY_HPP_

#include <vector>

#include "simpeval/image.hpp"

namespace simpeval {

// Mean of (a - b)^2 over pixels. The normalized variant divides each term by
// max(a^2, 1e-6), so `a` must be the original (the measure is asymmetric).
double mse(const GrayImage& a, const GrayImage& b, bool normalized = false);

struct ViewParams {
  double pixels_per_degree = 0.0;
  double max_luminance = 100.0;  // cd/m^2 for a pixel value of 1

  // Geometry of the original display: 17-inch 4:3 monitor, 1024 pixels
  // across, viewed from 0.7 m.
  static ViewParams standard();
  static ViewParams from_display(double diagonal_inches, double aspect_w, double aspect_h,
                                 int horizontal_pixels, double distance_m,
                                 double max_luminance = 100.0);
};

// Constants of the visible-difference model, kept together for tuning.
struct PerceptualConfig {
  double black_luminance = 0.5;    // cd/m^2 emitted by a 0 pixel
  int levels = 5;                  // band-pass levels
  double csf_peak_cpd = 4.0;       // CSF maximum, cycles/degree
  double threshold_contrast = 0.01;  // lightness step at threshold at the CSF peak
  double masking_exponent = 0.7;
  double pooling_exponent = 4.0;   // Minkowski summation across bands
  double psychometric_slope = 3.5;
};

// Per-pixel probability of detecting a difference, in [0, 1].
struct DiffImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const { return values[std::size_t(y) * width + x]; }
};

// Contrast sensitivity, band-pass, normalized to 1 at cfg.csf_peak_cpd.
double csf(double cycles_per_degree, const PerceptualConfig& cfg = {});

// Nominal centre frequency of band `level`, cycles/degree.
double band_frequency(int level, double pixels_per_degree);

// Simplified visible-difference predictor:
//  1. pixel -> luminance -> CIE lightness (cube root);
//  2. undecimated band-pass pyramid (differences of successive 5-tap
//     binomial blurs with dilation 2^k, edges replicated);
//  3. each band scaled by csf(band frequency) / threshold_contrast;
//  4. per band |ca - cb| / max(1, min(|ca|, |cb|)^masking_exponent);
//  5. Minkowski sum across bands, then 1 - exp(-R^slope).
// Identical inputs give exactly zero; the map is symmetric in a and b.
DiffImage perceptual_diff(const GrayImage& a, const GrayImage& b, const ViewParams& vp,
                          const PerceptualConfig& cfg = {});

// Arithmetic mean of the map. Throws InvalidArgument when empty.
double summarize_diff(const DiffImage& d);

}  // namespace simpeval

#endif  // SIMPEVAL_IMAGE_FIDELITY_HPP_
