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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace humanedit {

// Pixel coordinates: pixel (x, y) has its center at integer (x, y).

/// Row-major interleaved image with values in [0, 1].
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);
  Image(int width, int height, int channels, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return width_ == 0 || height_ == 0; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * height_;
  }

  float& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  float at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::span<float> pixel(int x, int y) {
    return {data_.data() + index(x, y, 0), static_cast<std::size_t>(channels_)};
  }
  std::span<const float> pixel(int x, int y) const {
    return {data_.data() + index(x, y, 0), static_cast<std::size_t>(channels_)};
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool same_extent(int w, int h) const { return w == width_ && h == height_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

/// Binary mask; values are 0 or 1.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  std::uint8_t& at(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  /// Assigns 1 for any nonzero value.
  void set(int x, int y, bool on) { at(x, y) = on ? 1 : 0; }

  std::span<std::uint8_t> data() { return data_; }
  std::span<const std::uint8_t> data() const { return data_; }

  std::size_t count() const;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Number of body-surface parts in the dense-pose convention (0 is background).
inline constexpr int kDensePoseParts = 24;

/// Per-pixel (part, u, v) correspondence to the canonical body surface.
class DensePoseMap {
 public:
  struct Sample {
    std::uint8_t part = 0;
    float u = 0.0f;
    float v = 0.0f;

    friend bool operator==(const Sample&, const Sample&) = default;
  };

  DensePoseMap() = default;
  DensePoseMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  const Sample& at(int x, int y) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }
  /// Part must be in [0, 24]; u and v are clamped to [0, 1]. Background
  /// (part 0) stores u = v = 0.
  void set(int x, int y, int part, float u, float v);

  bool foreground(int x, int y) const { return at(x, y).part != 0; }
  Mask foreground_mask() const;

  friend bool operator==(const DensePoseMap&, const DensePoseMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Sample> samples_;
};

struct Keypoint {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  double score = 1.0;
};

/// Named 2-D landmarks; names are unique within a set.
class KeypointSet {
 public:
  KeypointSet() = default;
  explicit KeypointSet(std::vector<Keypoint> points);

  /// Throws InvalidArgument on duplicate names or non-finite coordinates.
  void add(Keypoint kp);

  const Keypoint* find(std::string_view name) const;
  const std::vector<Keypoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// Keypoints with score >= floor.
  std::vector<Keypoint> confident(double floor) const;

 private:
  std::vector<Keypoint> points_;
};

/// Bilinear interpolation with clamp-to-edge. Writes img.channels() values
/// into `out`. NaN coordinates throw InvalidCoordinate.
void bilinear_sample(const Image& img, double x, double y, std::span<float> out);
std::vector<float> bilinear_sample(const Image& img, double x, double y);

/// Resampling with pixel-center alignment.
Image resize_bilinear(const Image& img, int width, int height);
Mask resize_nearest(const Mask& mask, int width, int height);

/// Location of resized content inside a letterboxed square.
struct Placement {
  int source_width = 0;
  int source_height = 0;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

struct PaddedImage {
  Image image;
  Placement placement;
};

/// Scales the longer side to `target` and centers the content on a square
/// canvas filled with `fill` (odd remainders go to the right/bottom band).
/// `fill` must supply at least img.channels() values; defaults to white.
PaddedImage resize_pad(const Image& img, int target,
                       std::optional<std::span<const float>> fill = {});

/// Inverse of resize_pad: crops the content rectangle and rescales it to the
/// original extent.
Image unpad(const Image& padded, const Placement& placement);

/// Converts gray or RGBA to 3-channel RGB (alpha is dropped).
Image to_rgb(const Image& img);

}  // namespace humanedit
