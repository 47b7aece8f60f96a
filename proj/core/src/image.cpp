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

#include "humanedit/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "humanedit/error.hpp"

namespace humanedit {

namespace {

void check_extent(int width, int height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative image extent");
  }
}

void check_channels(int channels) {
  if (channels != 1 && channels != 3 && channels != 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "image channel count must be 1, 3 or 4, got " +
                    std::to_string(channels));
  }
}

}  // namespace

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_extent(width, height);
  check_channels(channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_extent(width, height);
  check_channels(channels);
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "image data length does not match width*height*channels");
  }
  for (float v : data_) {
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      throw Error(ErrorCode::kInvalidArgument,
                  "image values must be finite and within [0, 1]");
    }
  }
}

Mask::Mask(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_extent(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), 1));
}

DensePoseMap::DensePoseMap(int width, int height)
    : width_(width), height_(height) {
  check_extent(width, height);
  samples_.resize(static_cast<std::size_t>(width) * height);
}

void DensePoseMap::set(int x, int y, int part, float u, float v) {
  if (part < 0 || part > kDensePoseParts) {
    throw Error(ErrorCode::kInvalidArgument,
                "dense-pose part index out of range: " + std::to_string(part));
  }
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite UV coordinate");
  }
  Sample& s = samples_[static_cast<std::size_t>(y) * width_ + x];
  s.part = static_cast<std::uint8_t>(part);
  if (part == 0) {
    s.u = 0.0f;
    s.v = 0.0f;
  } else {
    s.u = std::clamp(u, 0.0f, 1.0f);
    s.v = std::clamp(v, 0.0f, 1.0f);
  }
}

Mask DensePoseMap::foreground_mask() const {
  Mask m(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) m.set(x, y, foreground(x, y));
  }
  return m;
}

KeypointSet::KeypointSet(std::vector<Keypoint> points) {
  for (auto& kp : points) add(std::move(kp));
}

void KeypointSet::add(Keypoint kp) {
  if (!std::isfinite(kp.x) || !std::isfinite(kp.y) || !std::isfinite(kp.score)) {
    throw Error(ErrorCode::kInvalidArgument,
                "keypoint '" + kp.name + "' has non-finite values");
  }
  if (find(kp.name) != nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate keypoint name '" + kp.name + "'");
  }
  points_.push_back(std::move(kp));
}

const Keypoint* KeypointSet::find(std::string_view name) const {
  auto it = std::find_if(points_.begin(), points_.end(),
                         [&](const Keypoint& kp) { return kp.name == name; });
  return it == points_.end() ? nullptr : &*it;
}

std::vector<Keypoint> KeypointSet::confident(double floor) const {
  std::vector<Keypoint> out;
  std::copy_if(points_.begin(), points_.end(), std::back_inserter(out),
               [&](const Keypoint& kp) { return kp.score >= floor; });
  return out;
}

void bilinear_sample(const Image& img, double x, double y, std::span<float> out) {
  if (std::isnan(x) || std::isnan(y)) {
    throw Error(ErrorCode::kInvalidCoordinate, "NaN sample coordinate");
  }
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "sampling an empty image");
  const double cx = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
  const double cy = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(cx));
  const int y0 = static_cast<int>(std::floor(cy));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = cx - x0;
  const double fy = cy - y0;
  for (int c = 0; c < img.channels(); ++c) {
    const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
    const double bottom = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
    out[c] = static_cast<float>((1.0 - fy) * top + fy * bottom);
  }
}

std::vector<float> bilinear_sample(const Image& img, double x, double y) {
  std::vector<float> out(static_cast<std::size_t>(img.channels()));
  bilinear_sample(img, x, y, out);
  return out;
}

Image resize_bilinear(const Image& img, int width, int height) {
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "resizing an empty image");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "resize target must be positive");
  }
  if (img.same_extent(width, height)) return img;
  Image out(width, height, img.channels());
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      bilinear_sample(img, (x + 0.5) * sx - 0.5, (y + 0.5) * sy - 0.5,
                      out.pixel(x, y));
    }
  }
  return out;
}

Mask resize_nearest(const Mask& mask, int width, int height) {
  if (mask.empty()) throw Error(ErrorCode::kEmptyImage, "resizing an empty mask");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "resize target must be positive");
  }
  Mask out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(mask.height() - 1, y * mask.height() / height);
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(mask.width() - 1, x * mask.width() / width);
      out.at(x, y) = mask.at(sx, sy);
    }
  }
  return out;
}

PaddedImage resize_pad(const Image& img, int target,
                       std::optional<std::span<const float>> fill) {
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "resize_pad on empty image");
  if (target <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "resize_pad target must be positive");
  }
  std::vector<float> fill_color(static_cast<std::size_t>(img.channels()), 1.0f);
  if (fill) {
    if (fill->size() < fill_color.size()) {
      throw Error(ErrorCode::kShapeMismatch, "fill color has too few channels");
    }
    std::copy_n(fill->begin(), fill_color.size(), fill_color.begin());
  }

  Placement p;
  p.source_width = img.width();
  p.source_height = img.height();
  const int longer = std::max(img.width(), img.height());
  auto scaled = [&](int side) {
    return std::max(1, static_cast<int>(std::lround(
                           static_cast<double>(side) * target / longer)));
  };
  p.width = img.width() >= img.height() ? target : scaled(img.width());
  p.height = img.height() >= img.width() ? target : scaled(img.height());
  p.x = (target - p.width) / 2;
  p.y = (target - p.height) / 2;

  const Image content = resize_bilinear(img, p.width, p.height);
  Image canvas(target, target, img.channels());
  for (int y = 0; y < target; ++y) {
    for (int x = 0; x < target; ++x) {
      std::copy(fill_color.begin(), fill_color.end(), canvas.pixel(x, y).begin());
    }
  }
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      const auto src = content.pixel(x, y);
      std::copy(src.begin(), src.end(), canvas.pixel(p.x + x, p.y + y).begin());
    }
  }
  return {std::move(canvas), p};
}

Image unpad(const Image& padded, const Placement& placement) {
  if (placement.x < 0 || placement.y < 0 || placement.width <= 0 ||
      placement.height <= 0 || placement.x + placement.width > padded.width() ||
      placement.y + placement.height > padded.height()) {
    throw Error(ErrorCode::kShapeMismatch,
                "placement rectangle lies outside the padded image");
  }
  Image crop(placement.width, placement.height, padded.channels());
  for (int y = 0; y < placement.height; ++y) {
    for (int x = 0; x < placement.width; ++x) {
      const auto src = padded.pixel(placement.x + x, placement.y + y);
      std::copy(src.begin(), src.end(), crop.pixel(x, y).begin());
    }
  }
  return resize_bilinear(crop, placement.source_width, placement.source_height);
}

Image to_rgb(const Image& img) {
  if (img.channels() == 3) return img;
  Image out(img.width(), img.height(), 3);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = img.at(x, y, img.channels() == 1 ? 0 : c);
      }
    }
  }
  return out;
}

}  // namespace humanedit
