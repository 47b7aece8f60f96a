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

#include "humanedit/sparse_warp.hpp"

#include <cmath>
#include <limits>

#include "humanedit/error.hpp"
#include "humanedit/symmetric_eigen.hpp"

namespace humanedit {

namespace {

using Mat3 = std::array<double, 9>;

// Rank threshold on eigenvalues of A^T A, relative to the largest one.
constexpr double kRankTolerance = 1e-13;
constexpr double kSingularTolerance = 1e-12;

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) r[i * 3 + j] += a[i * 3 + k] * b[k * 3 + j];
    }
  }
  return r;
}

double det3(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double frobenius(const Mat3& m) {
  double s = 0.0;
  for (double v : m) s += v * v;
  return std::sqrt(s);
}

Mat3 normalized(Mat3 m) {
  const double norm = frobenius(m);
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::kSingularTransform, "zero homography matrix");
  }
  if (std::abs(m[8]) > 1e-12 * norm) {
    const double inv = 1.0 / m[8];
    for (double& v : m) v *= inv;
    return m;
  }
  // Fix the sign so the first significant entry is positive.
  double sign = 1.0;
  for (double v : m) {
    if (std::abs(v) > 1e-12 * norm) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& v : m) v *= sign / norm;
  return m;
}

// Similarity that moves points to zero mean and RMS distance sqrt(2).
Mat3 normalizing_transform(std::span<const Point2> pts) {
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sq = 0.0;
  for (const auto& p : pts) sq += (p.x - mx) * (p.x - mx) + (p.y - my) * (p.y - my);
  const double rms = std::sqrt(sq / pts.size());
  if (!(rms > 0.0)) {
    throw Error(ErrorCode::kDegenerateConfiguration, "all points coincide");
  }
  const double s = std::sqrt(2.0) / rms;
  return {s, 0.0, -s * mx, 0.0, s, -s * my, 0.0, 0.0, 1.0};
}

Point2 transform(const Mat3& m, Point2 p) {
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

Mat3 inverse_similarity(const Mat3& t) {
  const double s = t[0];
  return {1.0 / s, 0.0, -t[2] / s, 0.0, 1.0 / s, -t[5] / s, 0.0, 0.0, 1.0};
}

}  // namespace

Homography::Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Homography::Homography(const std::array<double, 9>& m) {
  for (double v : m) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "homography entries must be finite");
    }
  }
  m_ = normalized(m);
}

double Homography::determinant() const { return det3(m_); }

bool Homography::singular() const {
  const double norm = frobenius(m_);
  return std::abs(determinant()) <= kSingularTolerance * norm * norm * norm;
}

Homography Homography::inverse() const {
  if (singular()) throw Error(ErrorCode::kSingularTransform, "homography is singular");
  const Mat3& m = m_;
  const Mat3 adj{m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8],
                 m[1] * m[5] - m[2] * m[4], m[5] * m[6] - m[3] * m[8],
                 m[0] * m[8] - m[2] * m[6], m[2] * m[3] - m[0] * m[5],
                 m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7],
                 m[0] * m[4] - m[1] * m[3]};
  return Homography(adj);
}

Point2 Homography::apply(Point2 p) const { return transform(m_, p); }

Homography estimate_homography(std::span<const Point2> src, std::span<const Point2> dst) {
  if (src.size() != dst.size()) {
    throw Error(ErrorCode::kShapeMismatch, "point sets differ in size");
  }
  if (src.size() < 4) {
    throw Error(ErrorCode::kInsufficientPoints,
                "homography needs at least 4 correspondences, got " +
                    std::to_string(src.size()));
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!std::isfinite(src[i].x) || !std::isfinite(src[i].y) ||
        !std::isfinite(dst[i].x) || !std::isfinite(dst[i].y)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite correspondence");
    }
  }

  const Mat3 ts = normalizing_transform(src);
  const Mat3 td = normalizing_transform(dst);

  std::array<double, 81> normal{};
  auto accumulate = [&normal](const std::array<double, 9>& row) {
    for (int i = 0; i < 9; ++i) {
      if (row[i] == 0.0) continue;
      for (int j = 0; j < 9; ++j) normal[i * 9 + j] += row[i] * row[j];
    }
  };
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Point2 a = transform(ts, src[i]);
    const Point2 b = transform(td, dst[i]);
    accumulate({0, 0, 0, -a.x, -a.y, -1, b.y * a.x, b.y * a.y, b.y});
    accumulate({a.x, a.y, 1, 0, 0, 0, -b.x * a.x, -b.x * a.y, -b.x});
  }

  const auto eig = symmetric_eigen<9>(normal);
  if (eig.values[1] <= kRankTolerance * eig.values[8]) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "correspondences do not determine a homography (rank < 8)");
  }
  Mat3 hn{};
  std::copy(eig.vectors[0].begin(), eig.vectors[0].end(), hn.begin());
  if (std::abs(det3(hn)) <= kSingularTolerance * std::pow(frobenius(hn), 3)) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "correspondences yield a singular homography");
  }
  return Homography(multiply(inverse_similarity(td), multiply(hn, ts)));
}

WarpResult warp_perspective(const Image& img, const Mask& alpha, const Homography& h,
                            int out_width, int out_height) {
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "warping an empty image");
  if (alpha.width() != img.width() || alpha.height() != img.height()) {
    throw Error(ErrorCode::kShapeMismatch, "alpha mask differs from image extent");
  }
  if (out_width <= 0 || out_height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "output extent must be positive");
  }
  const Homography inv = h.inverse();
  const auto& m = inv.matrix();

  Image alpha_img(alpha.width(), alpha.height(), 1);
  for (int y = 0; y < alpha.height(); ++y) {
    for (int x = 0; x < alpha.width(); ++x) alpha_img.at(x, y, 0) = alpha.at(x, y);
  }

  constexpr double kEdge = 1e-9;
  const double max_x = img.width() - 1 + kEdge;
  const double max_y = img.height() - 1 + kEdge;
  WarpResult out{Image(out_width, out_height, img.channels()), Mask(out_width, out_height)};
  float a = 0.0f;
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      const double w = m[6] * x + m[7] * y + m[8];
      if (!(std::abs(w) > std::numeric_limits<double>::min())) continue;
      const double qx = (m[0] * x + m[1] * y + m[2]) / w;
      const double qy = (m[3] * x + m[4] * y + m[5]) / w;
      if (!(qx >= -kEdge && qy >= -kEdge && qx <= max_x && qy <= max_y)) continue;
      bilinear_sample(alpha_img, qx, qy, {&a, 1});
      if (a < 0.5f) continue;
      out.visibility.set(x, y, true);
      bilinear_sample(img, qx, qy, out.texture.pixel(x, y));
    }
  }
  return out;
}

GarmentWarp warp_garment(const Image& garment, const Mask& garment_mask,
                         const KeypointSet& garment_landmarks, const KeypointSet& body_kps,
                         int out_width, int out_height, double min_score) {
  std::vector<Point2> src;
  std::vector<Point2> dst;
  std::vector<std::string> matched;
  for (const auto& lm : garment_landmarks.points()) {
    if (lm.score < min_score) continue;
    const Keypoint* body = body_kps.find(lm.name);
    if (body == nullptr || body->score < min_score) continue;
    src.push_back({lm.x, lm.y});
    dst.push_back({body->x, body->y});
    matched.push_back(lm.name);
  }
  if (matched.size() < 4) {
    throw Error(ErrorCode::kInsufficientPoints,
                "only " + std::to_string(matched.size()) +
                    " landmarks are shared with sufficient confidence; 4 required");
  }
  const Homography h = estimate_homography(src, dst);
  return {warp_perspective(garment, garment_mask, h, out_width, out_height), h,
          std::move(matched)};
}

}  // namespace humanedit
