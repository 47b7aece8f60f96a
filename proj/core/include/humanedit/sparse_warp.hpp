// Copyright 2026 The humanedit Authors
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

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "humanedit/dense_warp.hpp"
#include "humanedit/image.hpp"

namespace humanedit {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Projective 3x3 transform, row-major. Stored normalized so that h[8] == 1
/// when that entry is usable, otherwise scaled to unit Frobenius norm.
class Homography {
 public:
  Homography();  // identity
  explicit Homography(const std::array<double, 9>& m);

  const std::array<double, 9>& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_[row * 3 + col]; }

  double determinant() const;
  /// True when |det| is negligible relative to ||H||^3.
  bool singular() const;
  /// Throws SingularTransform.
  Homography inverse() const;

  /// Maps a point; the result is non-finite if it lands at infinity.
  Point2 apply(Point2 p) const;

 private:
  std::array<double, 9> m_;
};

/// Normalized DLT: both point sets are shifted to zero mean and scaled to an
/// RMS distance of sqrt(2); the solution is the eigenvector of A^T A with the
/// smallest eigenvalue, mapped back to pixel coordinates.
///
/// Throws InsufficientPoints for fewer than 4 pairs, DegenerateConfiguration
/// when the design matrix has rank < 8 or the solution is singular.
Homography estimate_homography(std::span<const Point2> src, std::span<const Point2> dst);

/// Inverse-mapping warp: output pixel p samples `img` at H^-1 p. A pixel is
/// visible when H^-1 p lies inside the image and bilinear alpha >= 0.5.
WarpResult warp_perspective(const Image& img, const Mask& alpha, const Homography& h,
                            int out_width, int out_height);

struct GarmentWarp {
  WarpResult warp;
  Homography homography;
  std::vector<std::string> matched;
};

inline constexpr double kDefaultLandmarkFloor = 0.3;

/// Pairs landmarks by name (both scores >= min_score), fits a homography
/// from garment to body coordinates and warps the garment with it.
GarmentWarp warp_garment(const Image& garment, const Mask& garment_mask,
                         const KeypointSet& garment_landmarks, const KeypointSet& body_kps,
                         int out_width, int out_height,
                         double min_score = kDefaultLandmarkFloor);

}  // namespace humanedit
