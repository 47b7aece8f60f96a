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

#include "humanedit/tensor_file.hpp"

#include <bit>
#include <cstring>

#include "humanedit/error.hpp"
#include "humanedit/io.hpp"

namespace humanedit {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'T', 'K'};
constexpr std::size_t kHeaderBytes = 16;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_tensor(const Tensor3& t) {
  if (t.data.size() != t.size()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor data length does not match its shape");
  }
  std::string out(kMagic, sizeof(kMagic));
  put_u32(out, t.height);
  put_u32(out, t.width);
  put_u32(out, t.channels);
  out.reserve(kHeaderBytes + 4 * t.data.size());
  for (float f : t.data) put_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

Tensor3 decode_tensor(const std::string& bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kMalformedInput, "not a CSTK tensor file");
  }
  Tensor3 t;
  t.height = get_u32(bytes, 4);
  t.width = get_u32(bytes, 8);
  t.channels = get_u32(bytes, 12);
  if (bytes.size() != kHeaderBytes + 4 * t.size()) {
    throw Error(ErrorCode::kMalformedInput, "tensor payload length does not match header");
  }
  t.data.resize(t.size());
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    t.data[i] = std::bit_cast<float>(get_u32(bytes, kHeaderBytes + 4 * i));
  }
  return t;
}

void write_tensor(const std::filesystem::path& path, const Tensor3& t) {
  io::write_text_file(path, encode_tensor(t));
}

Tensor3 read_tensor(const std::filesystem::path& path) {
  return decode_tensor(io::read_text_file(path));
}

}  // namespace humanedit
