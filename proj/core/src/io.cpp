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

#include "humanedit/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "humanedit/error.hpp"
#include "json.hpp"

namespace humanedit::io {

namespace {

using nlohmann::json;

std::uint8_t quantize(float v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

[[noreturn]] void io_error(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::kIoError, path.string() + ": " + what);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) io_error(path, "cannot open file");
  return f;
}

}  // namespace

Image read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    io_error(path, image.message);
  }
  int channels = 1;
  if (image.format & PNG_FORMAT_FLAG_ALPHA) {
    image.format = PNG_FORMAT_RGBA;
    channels = 4;
  } else if (image.format & PNG_FORMAT_FLAG_COLOR) {
    image.format = PNG_FORMAT_RGB;
    channels = 3;
  } else {
    image.format = PNG_FORMAT_GRAY;
  }
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    io_error(path, msg);
  }
  std::vector<float> data(buffer.size());
  std::transform(buffer.begin(), buffer.end(), data.begin(),
                 [](std::uint8_t b) { return b / 255.0f; });
  return Image(static_cast<int>(image.width), static_cast<int>(image.height),
               channels, std::move(data));
}

void write_png(const std::filesystem::path& path, const Image& img) {
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "cannot write an empty PNG");
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  switch (img.channels()) {
    case 1: image.format = PNG_FORMAT_GRAY; break;
    case 3: image.format = PNG_FORMAT_RGB; break;
    default: image.format = PNG_FORMAT_RGBA; break;
  }
  std::vector<std::uint8_t> buffer(img.data().size());
  std::transform(img.data().begin(), img.data().end(), buffer.begin(), quantize);
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0,
                               nullptr)) {
    io_error(path, image.message);
  }
}

Mask mask_from_image(const Image& img) {
  Mask m(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) m.set(x, y, img.at(x, y, 0) >= 0.5f);
  }
  return m;
}

Image mask_to_image(const Mask& mask) {
  Image img(mask.width(), mask.height(), 1);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) img.at(x, y, 0) = mask.at(x, y) ? 1.0f : 0.0f;
  }
  return img;
}

Mask read_mask_png(const std::filesystem::path& path) {
  return mask_from_image(read_png(path));
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
  write_png(path, mask_to_image(mask));
}

Image encode_iuv(const DensePoseMap& pose) {
  Image out(pose.width(), pose.height(), 3);
  for (int y = 0; y < pose.height(); ++y) {
    for (int x = 0; x < pose.width(); ++x) {
      const auto& s = pose.at(x, y);
      out.at(x, y, 0) = s.part / 255.0f;
      out.at(x, y, 1) = quantize(s.u) / 255.0f;
      out.at(x, y, 2) = quantize(s.v) / 255.0f;
    }
  }
  return out;
}

DensePoseMap decode_iuv(const Image& rgb) {
  if (rgb.channels() < 3) {
    throw Error(ErrorCode::kShapeMismatch, "IUV raster must have RGB channels");
  }
  DensePoseMap pose(rgb.width(), rgb.height());
  for (int y = 0; y < rgb.height(); ++y) {
    for (int x = 0; x < rgb.width(); ++x) {
      const int part = quantize(rgb.at(x, y, 0));
      if (part > kDensePoseParts) {
        throw Error(ErrorCode::kMalformedInput,
                    "IUV part index out of range: " + std::to_string(part));
      }
      pose.set(x, y, part, quantize(rgb.at(x, y, 1)) / 255.0f,
               quantize(rgb.at(x, y, 2)) / 255.0f);
    }
  }
  return pose;
}

DensePoseMap read_iuv_png(const std::filesystem::path& path) {
  return decode_iuv(read_png(path));
}

void write_iuv_png(const std::filesystem::path& path, const DensePoseMap& pose) {
  write_png(path, encode_iuv(pose));
}

namespace {

// libpng reports errors through longjmp; keep these free of C++ objects.
bool read_png_rows(png_structp png, png_infop info, std::FILE* file) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, file);
  png_read_png(png, info, PNG_TRANSFORM_PACKING | PNG_TRANSFORM_STRIP_16, nullptr);
  return true;
}

bool write_palette_rows(png_structp png, png_infop info, std::FILE* file, png_uint_32 width,
                        png_uint_32 height, png_colorp colors, int color_count,
                        png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, file);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_PALETTE, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_PLTE(png, info, colors, color_count);
  png_set_rows(png, info, rows);
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  return true;
}

}  // namespace

IndexedImage read_indexed_png(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) io_error(path, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    io_error(path, "png_create_info_struct failed");
  }
  IndexedImage out;
  std::string failure;
  if (!read_png_rows(png, info, file.get())) {
    failure = "malformed PNG";
  } else {
    const int color_type = png_get_color_type(png, info);
    if (color_type != PNG_COLOR_TYPE_PALETTE && color_type != PNG_COLOR_TYPE_GRAY) {
      failure = "label PNG must be palette-indexed or 8-bit gray";
    } else {
      out.width = static_cast<int>(png_get_image_width(png, info));
      out.height = static_cast<int>(png_get_image_height(png, info));
      png_bytepp rows = png_get_rows(png, info);
      out.indices.resize(static_cast<std::size_t>(out.width) * out.height);
      for (int y = 0; y < out.height; ++y) {
        std::copy_n(rows[y], out.width, out.indices.begin() + std::size_t(y) * out.width);
      }
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!failure.empty()) io_error(path, failure);
  return out;
}

void write_indexed_png(const std::filesystem::path& path, const IndexedImage& img,
                       std::span<const std::array<std::uint8_t, 3>> palette) {
  if (palette.empty() || palette.size() > 256) {
    throw Error(ErrorCode::kInvalidArgument, "palette must hold 1..256 entries");
  }
  if (img.indices.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw Error(ErrorCode::kShapeMismatch, "index data does not match extent");
  }
  FilePtr file = open_file(path, "wb");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) io_error(path, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    io_error(path, "png_create_info_struct failed");
  }
  std::vector<png_color> colors(palette.size());
  for (std::size_t i = 0; i < palette.size(); ++i) {
    colors[i] = {palette[i][0], palette[i][1], palette[i][2]};
  }
  std::vector<std::uint8_t> indices = img.indices;
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) {
    rows[y] = indices.data() + std::size_t(y) * img.width;
  }
  const bool ok = write_palette_rows(
      png, info, file.get(), static_cast<png_uint_32>(img.width),
      static_cast<png_uint_32>(img.height), colors.data(), static_cast<int>(colors.size()),
      rows.data());
  png_destroy_write_struct(&png, &info);
  if (!ok) io_error(path, "failed writing palette PNG");
}

KeypointSet parse_keypoints_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("keypoint JSON: ") + e.what());
  }
  const json* list = &doc;
  if (doc.is_object()) {
    auto it = doc.find("keypoints");
    if (it == doc.end()) {
      throw Error(ErrorCode::kMalformedInput, "keypoint JSON lacks \"keypoints\"");
    }
    list = &*it;
  }
  if (!list->is_array()) {
    throw Error(ErrorCode::kMalformedInput, "\"keypoints\" must be an array");
  }
  KeypointSet kps;
  for (const auto& item : *list) {
    try {
      Keypoint kp;
      kp.name = item.at("name").get<std::string>();
      kp.x = item.at("x").get<double>();
      kp.y = item.at("y").get<double>();
      kp.score = item.value("score", 1.0);
      kps.add(std::move(kp));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, std::string("keypoint entry: ") + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedInput, std::string("keypoint entry: ") + e.what());
    }
  }
  return kps;
}

KeypointSet read_keypoints_json(const std::filesystem::path& path) {
  return parse_keypoints_json(read_text_file(path));
}

std::string keypoints_to_json(const KeypointSet& kps) {
  json list = json::array();
  for (const auto& kp : kps.points()) {
    list.push_back({{"name", kp.name}, {"x", kp.x}, {"y", kp.y}, {"score", kp.score}});
  }
  return json{{"keypoints", list}}.dump(2);
}

void write_keypoints_json(const std::filesystem::path& path, const KeypointSet& kps) {
  write_text_file(path, keypoints_to_json(kps) + "\n");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error(path, "cannot open file for writing");
  out << text;
  if (!out) io_error(path, "write failed");
}

}  // namespace humanedit::io
