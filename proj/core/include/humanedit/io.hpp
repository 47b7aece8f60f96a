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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "humanedit/image.hpp"

namespace humanedit::io {

// 8-bit PNG I/O. Values are quantized as round(v * 255) on write and v / 255
// on read; no other conversion takes place.

Image read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& img);

/// Any PNG; a pixel is set when its first channel is >= 128.
Mask read_mask_png(const std::filesystem::path& path);
/// Gray PNG with 0 / 255.
void write_mask_png(const std::filesystem::path& path, const Mask& mask);

Mask mask_from_image(const Image& img);
Image mask_to_image(const Mask& mask);

/// Dense-pose IUV raster: R = part index, G = round(u * 255), B = round(v * 255).
Image encode_iuv(const DensePoseMap& pose);
/// Inverse of encode_iuv. Parts above 24 throw MalformedInput.
DensePoseMap decode_iuv(const Image& rgb);
DensePoseMap read_iuv_png(const std::filesystem::path& path);
void write_iuv_png(const std::filesystem::path& path, const DensePoseMap& pose);

/// Raw 8-bit indices: palette indices for palette PNGs, values for gray PNGs.
struct IndexedImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> indices;
};

IndexedImage read_indexed_png(const std::filesystem::path& path);
void write_indexed_png(const std::filesystem::path& path, const IndexedImage& img,
                       std::span<const std::array<std::uint8_t, 3>> palette);

/// {"keypoints":[{"name":..,"x":..,"y":..,"score":..}, ...]}; score defaults
/// to 1. A bare array of keypoint objects is also accepted.
KeypointSet parse_keypoints_json(const std::string& text);
KeypointSet read_keypoints_json(const std::filesystem::path& path);
std::string keypoints_to_json(const KeypointSet& kps);
void write_keypoints_json(const std::filesystem::path& path, const KeypointSet& kps);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace humanedit::io
