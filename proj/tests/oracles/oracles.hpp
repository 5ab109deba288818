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

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical code; each routine takes a different route to the
// same quantity.
#ifndef SIMPEVAL_TESTS_ORACLES_HPP_
#define SIMPEVAL_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using V3 = Eigen::Vector3d;

// Distance from p to segment ab.
inline double segment_distance(const V3& p, const V3& a, const V3& b) {
  const V3 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

// Project onto the supporting plane, test barycentric signs, otherwise fall
// back to the three edges.
inline double point_triangle_distance(const V3& p, const V3& a, const V3& b, const V3& c) {
  const V3 n = (b - a).cross(c - a);
  const double n2 = n.squaredNorm();
  double best = std::min({segment_distance(p, a, b), segment_distance(p, b, c),
                          segment_distance(p, c, a)});
  if (n2 > 1e-300) {
    const V3 q = p - n * ((p - a).dot(n) / n2);
    const double u = (b - q).cross(c - q).dot(n);
    const double v = (c - q).cross(a - q).dot(n);
    const double w = (a - q).cross(b - q).dot(n);
    if (u >= 0 && v >= 0 && w >= 0) best = std::min(best, (p - q).norm());
  }
  return best;
}

// Student t density integrated with composite Simpson on [0, |t|].
inline double t_two_sided(double t, double df, int intervals = 200000) {
  const double x = std::abs(t);
  const double lc = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  auto pdf = [&](double u) { return std::exp(lc - (df + 1) / 2 * std::log1p(u * u / df)); };
  const double h = x / intervals;
  double s = pdf(0) + pdf(x);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * pdf(i * h);
  return std::max(0.0, 1.0 - 2.0 * s * h / 3.0);
}

// F upper tail by Simpson on the density after the substitution
// u = x / (1 + x), which maps [f, inf) to [f/(1+f), 1). Needs df1 >= 2.
inline double f_upper(double f, double d1, double d2, int intervals = 200000) {
  const double lb = std::lgamma(d1 / 2) + std::lgamma(d2 / 2) - std::lgamma((d1 + d2) / 2);
  auto pdf = [&](double x) {
    if (x <= 0) return d1 == 2 ? 1.0 : 0.0;
    return std::exp((d1 / 2) * std::log(d1 / d2) + (d1 / 2 - 1) * std::log(x) -
                    ((d1 + d2) / 2) * std::log1p(d1 * x / d2) - lb);
  };
  auto g = [&](double u) {
    if (u >= 1) return 0.0;
    const double x = u / (1 - u);
    return pdf(x) / ((1 - u) * (1 - u));
  };
  const double a = f / (1 + f), b = 1.0;
  const double h = (b - a) / intervals;
  double s = g(a) + g(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

struct Pearson {
  double r, p;
};

// Textbook single-pass sums formula.
inline Pearson pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  const double t = r * std::sqrt((n - 2) / (1 - r * r));
  return {r, t_two_sided(t, n - 2)};
}

// Classic textbook sums of squares for a balanced 3-way design laid out as
// y[a][b][c][rep]. Returns SS for A, B, C, AB, AC, BC, ABC, error.
struct Ss3 {
  double a, b, c, ab, ac, bc, abc, error, total;
};

inline Ss3 three_way_ss(const std::vector<std::vector<std::vector<std::vector<double>>>>& y) {
  const std::size_t na = y.size(), nb = y[0].size(), nc = y[0][0].size(), n = y[0][0][0].size();
  double grand = 0;
  for (auto& ya : y)
    for (auto& yb : ya)
      for (auto& yc : yb)
        for (double v : yc) grand += v;
  const double N = double(na * nb * nc * n);
  grand /= N;
  auto cell = [&](std::size_t i, std::size_t j, std::size_t k) {
    return std::accumulate(y[i][j][k].begin(), y[i][j][k].end(), 0.0) / double(n);
  };
  std::vector<double> ma(na, 0), mb(nb, 0), mc(nc, 0);
  std::vector<std::vector<double>> mab(na, std::vector<double>(nb, 0)),
      mac(na, std::vector<double>(nc, 0)), mbc(nb, std::vector<double>(nc, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nc; ++k) {
        const double m = cell(i, j, k);
        ma[i] += m / double(nb * nc);
        mb[j] += m / double(na * nc);
        mc[k] += m / double(na * nb);
        mab[i][j] += m / double(nc);
        mac[i][k] += m / double(nb);
        mbc[j][k] += m / double(na);
      }
  Ss3 s{};
  for (std::size_t i = 0; i < na; ++i) s.a += double(nb * nc * n) * std::pow(ma[i] - grand, 2);
  for (std::size_t j = 0; j < nb; ++j) s.b += double(na * nc * n) * std::pow(mb[j] - grand, 2);
  for (std::size_t k = 0; k < nc; ++k) s.c += double(na * nb * n) * std::pow(mc[k] - grand, 2);
  double ss_ab_cells = 0, ss_ac_cells = 0, ss_bc_cells = 0, ss_cells = 0;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) ss_ab_cells += double(nc * n) * std::pow(mab[i][j] - grand, 2);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nc; ++k) ss_ac_cells += double(nb * n) * std::pow(mac[i][k] - grand, 2);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t k = 0; k < nc; ++k) ss_bc_cells += double(na * n) * std::pow(mbc[j][k] - grand, 2);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nc; ++k) {
        ss_cells += double(n) * std::pow(cell(i, j, k) - grand, 2);
        for (double v : y[i][j][k]) {
          s.error += std::pow(v - cell(i, j, k), 2);
          s.total += std::pow(v - grand, 2);
        }
      }
  s.ab = ss_ab_cells - s.a - s.b;
  s.ac = ss_ac_cells - s.a - s.c;
  s.bc = ss_bc_cells - s.b - s.c;
  s.abc = ss_cells - s.a - s.b - s.c - s.ab - s.ac - s.bc;
  return s;
}

// Straight-line transcription of the visible-difference pipeline with
// plain loops and explicit constants (black 0.5, 5 levels, peak 4 cpd,
// threshold 0.01, masking 0.7, pooling 4, slope 3.5). Returns the mean
// detection probability per pixel. Images are row-major w x h in [0, 1].
inline std::vector<double> perceptual_values(const std::vector<double>& a, const std::vector<double>& b, int w,
                              int h, double ppd, double lmax) {
  auto to_l = [&](double v) {
    const double y = (0.5 + (lmax - 0.5) * v) / lmax;
    return (y > std::pow(6.0 / 29.0, 3) ? 116.0 * std::cbrt(y) - 16.0
                                        : y * std::pow(29.0 / 3.0, 3)) / 100.0;
  };
  auto bands = [&](const std::vector<double>& img) {
    std::vector<std::vector<double>> out;
    std::vector<double> g(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) g[i] = to_l(img[i]);
    const double kernel[5] = {0.0625, 0.25, 0.375, 0.25, 0.0625};
    for (int k = 0; k < 5; ++k) {
      const int step = 1 << k;
      std::vector<double> blurred(g.size(), 0.0);
      // Direct 2-D 25-tap convolution (separable filter applied jointly).
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          double s = 0;
          for (int j = -2; j <= 2; ++j)
            for (int i = -2; i <= 2; ++i) {
              const int xx = std::min(std::max(x + i * step, 0), w - 1);
              const int yy = std::min(std::max(y + j * step, 0), h - 1);
              s += kernel[i + 2] * kernel[j + 2] * g[yy * w + xx];
            }
          blurred[y * w + x] = s;
        }
      const double f = ppd / std::pow(2.0, k + 2);
      const double gain = (f / 4.0) * std::exp(1.0 - f / 4.0) / 0.01;
      std::vector<double> band(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) band[i] = gain * (g[i] - blurred[i]);
      out.push_back(band);
      g = blurred;
    }
    return out;
  };
  const auto ba = bands(a), bb = bands(b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double acc = 0;
    for (int k = 0; k < 5; ++k) {
      const double m = std::min(std::abs(ba[k][i]), std::abs(bb[k][i]));
      const double te = m > 1.0 ? std::pow(m, 0.7) : 1.0;
      acc += std::pow(std::abs(ba[k][i] - bb[k][i]) / te, 4.0);
    }
    out[i] = 1.0 - std::exp(-std::pow(std::pow(acc, 0.25), 3.5));
  }
  return out;
}

inline double perceptual_mean(const std::vector<double>& a, const std::vector<double>& b, int w,
                              int h, double ppd, double lmax) {
  const auto v = perceptual_values(a, b, w, h, ppd, lmax);
  return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

// Visual angle pixels per degree for a display, from first principles.
inline double pixels_per_degree(double diag_in, double aw, double ah, int px, double dist_m) {
  const double width = diag_in * 0.0254 * aw / std::sqrt(aw * aw + ah * ah);
  const double half_angle = std::atan((width / px) / 2.0 / dist_m);
  return 1.0 / (2.0 * half_angle * 180.0 / M_PI);
}

}  // namespace oracle

#endif  // SIMPEVAL_TESTS_ORACLES_HPP_
