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

#include "humanedit/dense_warp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "humanedit/error.hpp"

namespace humanedit {

UVAtlas::UVAtlas(int resolution, int channels)
    : resolution_(resolution), channels_(channels) {
  if (resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument, "atlas resolution must be at least 2");
  }
  if (channels <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "atlas needs at least one channel");
  }
  const std::size_t texels =
      static_cast<std::size_t>(kDensePoseParts) * resolution * resolution;
  colors_.assign(texels * channels, 0.0f);
  weights_.assign(texels, 0.0f);
}

std::size_t UVAtlas::filled_texels() const {
  return static_cast<std::size_t>(
      std::count_if(weights_.begin(), weights_.end(), [](float w) { return w > 0.0f; }));
}

UVAtlas build_uv_atlas(const Image& src, const DensePoseMap& src_pose, int resolution,
                       const Mask* valid) {
  if (!src.same_extent(src_pose.width(), src_pose.height())) {
    throw Error(ErrorCode::kShapeMismatch,
                "source image and dense-pose map differ in extent");
  }
  if (valid && (valid->width() != src.width() || valid->height() != src.height())) {
    throw Error(ErrorCode::kShapeMismatch, "validity mask differs in extent");
  }
  UVAtlas atlas(resolution, src.channels());
  const int channels = src.channels();
  const double scale = resolution - 1;

  // Color slots accumulate sums first; they are divided by weight below.
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const auto& s = src_pose.at(x, y);
      if (s.part == 0 || (valid && !valid->at(x, y))) continue;
      const int row = static_cast<int>(std::lround(s.v * scale));
      const int col = static_cast<int>(std::lround(s.u * scale));
      auto acc = atlas.color(s.part, row, col);
      const auto px = src.pixel(x, y);
      for (int c = 0; c < channels; ++c) acc[c] += px[c];
      atlas.weight(s.part, row, col) += 1.0f;
    }
  }
  for (int part = 1; part <= kDensePoseParts; ++part) {
    for (int row = 0; row < resolution; ++row) {
      for (int col = 0; col < resolution; ++col) {
        const float w = atlas.weight(part, row, col);
        if (w <= 0.0f) continue;
        for (float& v : atlas.color(part, row, col)) v /= w;
      }
    }
  }
  return atlas;
}

UVAtlas fill_atlas_holes(const UVAtlas& atlas, int iterations, float fill_weight) {
  if (iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "hole-fill iterations must be >= 0");
  }
  if (!(fill_weight > 0.0f && fill_weight < 1.0f)) {
    throw Error(ErrorCode::kInvalidArgument, "hole-fill weight must lie in (0, 1)");
  }
  UVAtlas current = atlas;
  const int res = atlas.resolution();
  const int channels = atlas.channels();
  std::vector<float> mean(static_cast<std::size_t>(channels));

  for (int it = 0; it < iterations; ++it) {
    UVAtlas next = current;
    bool changed = false;
    for (int part = 1; part <= kDensePoseParts; ++part) {
      for (int row = 0; row < res; ++row) {
        for (int col = 0; col < res; ++col) {
          if (current.weight(part, row, col) > 0.0f) continue;
          std::fill(mean.begin(), mean.end(), 0.0f);
          int neighbors = 0;
          for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
              const int r = row + dr;
              const int c = col + dc;
              if ((dr == 0 && dc == 0) || r < 0 || c < 0 || r >= res || c >= res) continue;
              if (current.weight(part, r, c) <= 0.0f) continue;
              const auto nc = current.color(part, r, c);
              for (int k = 0; k < channels; ++k) mean[k] += nc[k];
              ++neighbors;
            }
          }
          if (neighbors == 0) continue;
          auto dst = next.color(part, row, col);
          for (int k = 0; k < channels; ++k) dst[k] = mean[k] / neighbors;
          next.weight(part, row, col) = fill_weight;
          changed = true;
        }
      }
    }
    current = std::move(next);
    if (!changed) break;
  }
  return current;
}

WarpResult warp_dense(const UVAtlas& atlas, const DensePoseMap& tgt_pose,
                      float visibility_threshold) {
  const int width = tgt_pose.width();
  const int height = tgt_pose.height();
  const int channels = atlas.channels();
  const int res = atlas.resolution();
  const double scale = res - 1;
  WarpResult out{Image(width, height, channels), Mask(width, height)};
  std::vector<double> acc(static_cast<std::size_t>(channels));

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto& s = tgt_pose.at(x, y);
      if (s.part == 0) continue;
      const double gx = s.u * scale;
      const double gy = s.v * scale;
      const int c0 = std::min(static_cast<int>(std::floor(gx)), res - 1);
      const int r0 = std::min(static_cast<int>(std::floor(gy)), res - 1);
      const int c1 = std::min(c0 + 1, res - 1);
      const int r1 = std::min(r0 + 1, res - 1);
      const double fx = gx - c0;
      const double fy = gy - r0;
      const std::array<int, 4> rows{r0, r0, r1, r1};
      const std::array<int, 4> cols{c0, c1, c0, c1};
      const std::array<double, 4> coef{(1 - fx) * (1 - fy), fx * (1 - fy),
                                       (1 - fx) * fy, fx * fy};

      std::fill(acc.begin(), acc.end(), 0.0);
      double weight_sum = 0.0;
      double coverage = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double w = atlas.weight(s.part, rows[i], cols[i]);
        if (w <= 0.0 || coef[i] == 0.0) continue;
        const auto texel = atlas.color(s.part, rows[i], cols[i]);
        for (int k = 0; k < channels; ++k) acc[k] += coef[i] * w * texel[k];
        weight_sum += coef[i] * w;
        coverage += coef[i] * std::min(w, 1.0);
      }
      if (weight_sum <= 0.0 || coverage < visibility_threshold) continue;
      out.visibility.set(x, y, true);
      auto px = out.texture.pixel(x, y);
      for (int k = 0; k < channels; ++k) {
        px[k] = std::clamp(static_cast<float>(acc[k] / weight_sum), 0.0f, 1.0f);
      }
    }
  }
  return out;
}

WarpResult repose(const Image& src, const DensePoseMap& src_pose,
                  const DensePoseMap& tgt_pose, const DenseWarpOptions& options,
                  const Mask* src_valid) {
  const UVAtlas atlas =
      fill_atlas_holes(build_uv_atlas(src, src_pose, options.atlas_resolution, src_valid),
                       options.fill_iterations, options.fill_weight);
  return warp_dense(atlas, tgt_pose, options.visibility_threshold);
}

}  // namespace humanedit
