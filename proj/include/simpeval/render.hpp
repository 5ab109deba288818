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

#ifndef SIMPEVAL_RENDER_HPP_
#define SIMPEVAL_RENDER_HPP_

#include "simpeval/corpus.hpp"
#include "simpeval/image.hpp"
#include "simpeval/mesh.hpp"

namespace simpeval {

// Pinhole camera. fov_deg is the vertical field of view. canonical_camera()
// fills eye/up from the view angles; rasterize() only reads fov, eye, look_at
// and up.
struct CameraSpec {
  double fov_deg = 40.0;
  double distance_factor = 2.0;  // eye distance in bbox diagonals
  double azimuth_deg = 45.0;     // about +Y, 0 looks from +Z
  double elevation_deg = 25.0;
  Vec3 look_at = Vec3::Zero();
  Vec3 eye = Vec3(0, 0, 1);
  Vec3 up = Vec3::UnitY();
};

// Unit direction from the look-at point towards the eye.
Vec3 view_direction(double azimuth_deg, double elevation_deg);

// Eye at distance_factor * diagonal(bbox) from the look-at point (vertex
// centroid unless overridden). Throws InvalidArgument on a degenerate box or
// out-of-range fov/distance.
CameraSpec canonical_camera(const TriMesh& mesh, const CameraOverrides& overrides = {});

// Perspective, z-buffered, flat shaded. Each face gets max(0, n.v) with n its
// unit normal and v the unit vector from its centroid to the eye (a single
// white light at the eye). Background pixels are exactly 0. Pixels are
// sampled at their centres; depth ties keep the earlier face.
GrayImage rasterize(const TriMesh& mesh, const CameraSpec& cam, int width, int height);

// Stimulus geometry.
inline constexpr int kStimulusWidth = 591;
inline constexpr int kStimulusHeight = 443;  // 4:3
inline constexpr int kPairHalfWidth = 400;
inline constexpr int kPairHalfHeight = 300;
inline constexpr int kPanelWidth = 512;
inline constexpr int kPanelHeight = 768;
inline constexpr int kSupersample = 2;

// Rendered at kSupersample x the stimulus size, box-filtered down and
// quantized to 8 bits (the exact values written to the stimulus PGM).
GrayImage render_stimulus(const TriMesh& mesh, const CameraSpec& cam);
// One half of a side-by-side pair, 400 px wide.
GrayImage render_pair_half(const TriMesh& mesh, const CameraSpec& cam);

// Each half is scaled to 400 px width (aspect kept, box filter) and centred
// in a 512 x 768 panel; panels are concatenated into a 1024 x 768 image.
GrayImage compose_pair(const GrayImage& left, const GrayImage& right);

}  // namespace simpeval

#endif  // SIMPEVAL_RENDER_HPP_
