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

#include "simpeval/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

struct ViewVertex {
  Vec3 p;  // camera space, camera looks down -z
};

struct ScreenVertex {
  double x, y;   // pixels
  double inv_w;  // 1 / depth, linear in screen space
};

// Clip a polygon against z <= -near in camera space.
std::vector<Vec3> clip_near(const std::vector<Vec3>& poly, double near) {
  std::vector<Vec3> out;
  const auto n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = poly[i];
    const Vec3& b = poly[(i + 1) % n];
    const double da = -a.z() - near, db = -b.z() - near;
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

}  // namespace

Vec3 view_direction(double azimuth_deg, double elevation_deg) {
  const double az = radians(azimuth_deg), el = radians(elevation_deg);
  return Vec3(std::cos(el) * std::sin(az), std::sin(el), std::cos(el) * std::cos(az));
}

CameraSpec canonical_camera(const TriMesh& mesh, const CameraOverrides& o) {
  const Aabb box = bounding_box(mesh);
  if (box.degenerate()) throw InvalidArgument("canonical_camera: degenerate bounding box");
  CameraSpec cam;
  cam.fov_deg = o.fov_deg.value_or(cam.fov_deg);
  cam.distance_factor = o.distance_factor.value_or(cam.distance_factor);
  cam.azimuth_deg = o.azimuth_deg.value_or(cam.azimuth_deg);
  cam.elevation_deg = o.elevation_deg.value_or(cam.elevation_deg);
  if (!(cam.fov_deg > 0.0 && cam.fov_deg < 180.0)) throw InvalidArgument("fov_deg must lie in (0, 180)");
  if (!(cam.distance_factor > 0.0)) throw InvalidArgument("distance_factor must be positive");
  cam.look_at = o.look_at.value_or(vertex_centroid(mesh));
  const Vec3 dir = view_direction(cam.azimuth_deg, cam.elevation_deg);
  cam.eye = cam.look_at + cam.distance_factor * box.diagonal() * dir;
  // Looking straight up or down: fall back to +Z as the up hint.
  cam.up = std::abs(dir.y()) > 0.999999 ? Vec3::UnitZ() : Vec3::UnitY();
  return cam;
}

GrayImage rasterize(const TriMesh& mesh, const CameraSpec& cam, int width, int height) {
  if (width <= 0 || height <= 0) throw InvalidArgument("rasterize: zero-size image");
  GrayImage img(width, height, 0.0);
  if (mesh.faces.empty()) return img;

  const Vec3 fwd_raw = cam.look_at - cam.eye;
  if (!(fwd_raw.norm() > 0.0)) throw InvalidArgument("rasterize: eye coincides with look_at");
  const Vec3 back = -fwd_raw.normalized();
  Vec3 right = cam.up.cross(back);
  if (!(right.norm() > 0.0)) throw InvalidArgument("rasterize: up is parallel to the view direction");
  right.normalize();
  const Vec3 up = back.cross(right);
  const double near = 1e-4 * fwd_raw.norm();
  const double focal = 1.0 / std::tan(radians(cam.fov_deg) / 2.0);
  const double aspect = double(width) / double(height);

  auto to_view = [&](const Vec3& p) {
    const Vec3 d = p - cam.eye;
    return Vec3(right.dot(d), up.dot(d), back.dot(d));
  };
  auto to_screen = [&](const Vec3& v) {
    const double w = -v.z();
    const double ndc_x = focal * v.x() / (w * aspect);
    const double ndc_y = focal * v.y() / w;
    return ScreenVertex{(ndc_x + 1.0) * 0.5 * width, (1.0 - ndc_y) * 0.5 * height, 1.0 / w};
  };

  std::vector<double> depth(img.pixels.size(), 0.0);  // stores 1/w, larger is nearer
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    const Vec3 n = (b - a).cross(c - a);
    if (!(n.norm() > 0.0)) continue;
    const Vec3 to_eye = cam.eye - (a + b + c) / 3.0;
    const double shade = std::max(0.0, n.normalized().dot(to_eye.normalized()));

    const auto poly = clip_near({to_view(a), to_view(b), to_view(c)}, near);
    if (poly.size() < 3) continue;
    std::vector<ScreenVertex> sv;
    sv.reserve(poly.size());
    for (const auto& v : poly) sv.push_back(to_screen(v));

    for (std::size_t k = 1; k + 1 < sv.size(); ++k) {
      ScreenVertex t0 = sv[0], t1 = sv[k], t2 = sv[k + 1];
      double area = edge(t0, t1, t2.x, t2.y);
      if (area == 0.0) continue;
      if (area < 0.0) {
        std::swap(t1, t2);
        area = -area;
      }
      const double minx = std::min({t0.x, t1.x, t2.x}), maxx = std::max({t0.x, t1.x, t2.x});
      const double miny = std::min({t0.y, t1.y, t2.y}), maxy = std::max({t0.y, t1.y, t2.y});
      const int x0 = std::max(0, int(std::floor(minx - 0.5)));
      const int x1 = std::min(width - 1, int(std::ceil(maxx - 0.5)));
      const int y0 = std::max(0, int(std::floor(miny - 0.5)));
      const int y1 = std::min(height - 1, int(std::ceil(maxy - 0.5)));
      for (int y = y0; y <= y1; ++y) {
        const double py = y + 0.5;
        for (int x = x0; x <= x1; ++x) {
          const double px = x + 0.5;
          const double w0 = edge(t1, t2, px, py);
          const double w1 = edge(t2, t0, px, py);
          const double w2 = edge(t0, t1, px, py);
          if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
          const double inv_w = (w0 * t0.inv_w + w1 * t1.inv_w + w2 * t2.inv_w) / area;
          const std::size_t idx = std::size_t(y) * width + x;
          if (inv_w > depth[idx]) {
            depth[idx] = inv_w;
            img.pixels[idx] = shade;
          }
        }
      }
    }
  }
  return img;
}

GrayImage render_stimulus(const TriMesh& mesh, const CameraSpec& cam) {
  const auto hi = rasterize(mesh, cam, kStimulusWidth * kSupersample, kStimulusHeight * kSupersample);
  return quantize8(resize_box(hi, kStimulusWidth, kStimulusHeight));
}

GrayImage render_pair_half(const TriMesh& mesh, const CameraSpec& cam) {
  const auto hi = rasterize(mesh, cam, kPairHalfWidth * kSupersample, kPairHalfHeight * kSupersample);
  return quantize8(resize_box(hi, kPairHalfWidth, kPairHalfHeight));
}

GrayImage compose_pair(const GrayImage& left, const GrayImage& right) {
  GrayImage out(2 * kPanelWidth, kPanelHeight, 0.0);
  int panel = 0;
  for (const GrayImage* half : {&left, &right}) {
    GrayImage scaled;
    if (!half->empty()) {
      int w = kPairHalfWidth;
      int h = std::max(1, int(std::lround(double(half->height) * w / half->width)));
      if (h > kPanelHeight) {
        w = std::max(1, int(std::lround(double(w) * kPanelHeight / h)));
        h = kPanelHeight;
      }
      scaled = resize_box(*half, w, h);
    }
    const int ox = panel * kPanelWidth + (kPanelWidth - scaled.width) / 2;
    const int oy = (kPanelHeight - scaled.height) / 2;
    for (int y = 0; y < scaled.height; ++y) {
      for (int x = 0; x < scaled.width; ++x) out.at(ox + x, oy + y) = scaled.at(x, y);
    }
    ++panel;
  }
  return out;
}

}  // namespace simpeval
