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

#include <optional>
#include <span>
#include <vector>

#include "humanedit/image.hpp"

namespace humanedit {

/// Canonical-space texture: one R x R grid per dense-pose part. Each texel
/// holds the weighted mean color of the source pixels scattered into it and
/// a fill weight (0 means empty).
class UVAtlas {
 public:
  UVAtlas() = default;
  UVAtlas(int resolution, int channels);

  int resolution() const { return resolution_; }
  int channels() const { return channels_; }
  int parts() const { return kDensePoseParts; }

  /// `part` is the 1-based dense-pose part index.
  float weight(int part, int row, int col) const { return weights_[texel(part, row, col)]; }
  float& weight(int part, int row, int col) { return weights_[texel(part, row, col)]; }

  std::span<const float> color(int part, int row, int col) const {
    return {colors_.data() + texel(part, row, col) * channels_,
            static_cast<std::size_t>(channels_)};
  }
  std::span<float> color(int part, int row, int col) {
    return {colors_.data() + texel(part, row, col) * channels_,
            static_cast<std::size_t>(channels_)};
  }

  std::size_t filled_texels() const;

  friend bool operator==(const UVAtlas&, const UVAtlas&) = default;

 private:
  std::size_t texel(int part, int row, int col) const {
    return (static_cast<std::size_t>(part - 1) * resolution_ + row) * resolution_ + col;
  }

  int resolution_ = 0;
  int channels_ = 0;
  std::vector<float> colors_;
  std::vector<float> weights_;
};

struct DenseWarpOptions {
  int atlas_resolution = 128;
  int fill_iterations = 2;
  float fill_weight = 0.25f;
  float visibility_threshold = 0.5f;
};

struct WarpResult {
  Image texture;
  Mask visibility;
};

/// Scatters every foreground source pixel into texel
/// (round(v * (R - 1)), round(u * (R - 1))) of its part grid. Collisions are
/// averaged and the fill weight counts contributions. When `valid` is given,
/// pixels outside it are ignored.
UVAtlas build_uv_atlas(const Image& src, const DensePoseMap& src_pose, int resolution,
                       const Mask* valid = nullptr);

/// Each iteration assigns every empty texel with at least one filled
/// 8-neighbor the mean color of those neighbors and weight `fill_weight`.
/// Texels filled before the call never change.
UVAtlas fill_atlas_holes(const UVAtlas& atlas, int iterations, float fill_weight = 0.25f);

/// Gathers texture for every target foreground pixel by bilinear lookup in
/// its part grid. Colors are weighted by fill weight; a pixel is visible when
/// the interpolated occupancy sum(b_i * min(w_i, 1)) reaches the threshold.
/// Invisible and background pixels are zero.
WarpResult warp_dense(const UVAtlas& atlas, const DensePoseMap& tgt_pose,
                      float visibility_threshold = 0.5f);

/// build_uv_atlas -> fill_atlas_holes -> warp_dense.
WarpResult repose(const Image& src, const DensePoseMap& src_pose,
                  const DensePoseMap& tgt_pose, const DenseWarpOptions& options = {},
                  const Mask* src_valid = nullptr);

}  // namespace humanedit
