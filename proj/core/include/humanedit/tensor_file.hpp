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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace humanedit {

/// Planar float tensor, channel-major: index = (c * height + y) * width + x.
struct Tensor3 {
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t channels = 0;
  std::vector<float> data;

  std::size_t size() const {
    return static_cast<std::size_t>(height) * width * channels;
  }
  float& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

// Raw tensor file: 16-byte header ("CSTK", u32 height, u32 width, u32
// channels), then height*width*channels float32 values, all little-endian.

std::string encode_tensor(const Tensor3& t);
Tensor3 decode_tensor(const std::string& bytes);

void write_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 read_tensor(const std::filesystem::path& path);

}  // namespace humanedit
