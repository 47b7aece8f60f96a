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

#include "humanedit/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "humanedit/error.hpp"
#include "humanedit/io.hpp"
#include "json.hpp"

namespace humanedit {

namespace {

constexpr std::array<std::string_view, kPartLabelCount> kLabelNames = {
    "background",     "face", "hair",          "headwear", "upper_clothing",
    "coat", "lower_clothing", "shoes", "accessories", "person"};

constexpr std::array<std::array<std::uint8_t, 3>, kPartLabelCount> kSegPalette = {{
    {0, 0, 0},
    {255, 204, 153},
    {128, 64, 0},
    {255, 255, 0},
    {255, 0, 0},
    {0, 128, 255},
    {0, 255, 0},
    {128, 0, 255},
    {255, 0, 255},
    {192, 192, 192},
}};

constexpr std::array<std::string_view, 18> kJointNames = {
    "nose",       "neck",       "right_shoulder", "right_elbow", "right_wrist",
    "left_shoulder", "left_elbow", "left_wrist",  "right_hip",   "right_knee",
    "right_ankle", "left_hip",  "left_knee",      "left_ankle",  "right_eye",
    "left_eye",   "right_ear",  "left_ear"};

constexpr std::array<std::array<int, 2>, 17> kLimbs = {{
    {1, 2}, {1, 5}, {2, 3}, {3, 4}, {5, 6}, {6, 7}, {1, 8}, {8, 9}, {9, 10},
    {1, 11}, {11, 12}, {12, 13}, {1, 0}, {0, 14}, {14, 16}, {0, 15}, {15, 17},
}};

constexpr std::array<std::array<std::uint8_t, 3>, 18> kLimbPalette = {{
    {255, 0, 0},   {255, 85, 0},  {255, 170, 0}, {255, 255, 0}, {170, 255, 0},
    {85, 255, 0},  {0, 255, 0},   {0, 255, 85},  {0, 255, 170}, {0, 255, 255},
    {0, 170, 255}, {0, 85, 255},  {0, 0, 255},   {85, 0, 255},  {170, 0, 255},
    {255, 0, 255}, {255, 0, 170}, {255, 0, 85},
}};

void check_label(int label) {
  if (label < 0 || label >= kPartLabelCount) {
    throw Error(ErrorCode::kInvalidArgument,
                "part label out of range: " + std::to_string(label));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Square brush of side `thickness` centered on (x, y).
void stamp(Image& img, int x, int y, int thickness, const std::array<float, 3>& color) {
  const int lo = -(thickness - 1) / 2;
  const int hi = thickness / 2;
  for (int dy = lo; dy <= hi; ++dy) {
    for (int dx = lo; dx <= hi; ++dx) {
      const int px = x + dx;
      const int py = y + dy;
      if (px < 0 || py < 0 || px >= img.width() || py >= img.height()) continue;
      for (int c = 0; c < 3; ++c) img.at(px, py, c) = color[c];
    }
  }
}

void draw_line(Image& img, int x0, int y0, int x1, int y1, int thickness,
               const std::array<float, 3>& color) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    stamp(img, x0, y0, thickness, color);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

int pixel_coord(double v) {
  return static_cast<int>(std::clamp(std::lround(v), -1000000L, 1000000L));
}

}  // namespace

std::string_view part_label_name(int label) {
  check_label(label);
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<int> part_label_from_name(std::string_view name) {
  for (int i = 0; i < kPartLabelCount; ++i) {
    if (kLabelNames[static_cast<std::size_t>(i)] == name) return i;
  }
  return std::nullopt;
}

PartSegmentation::PartSegmentation(int width, int height, std::vector<std::uint8_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (width < 0 || height < 0 ||
      labels_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kShapeMismatch, "segmentation size does not match its extent");
  }
  for (auto l : labels_) check_label(l);
}

PartSegmentation::PartSegmentation(int width, int height)
    : PartSegmentation(width, height,
                       std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height)) {}

void PartSegmentation::set(int x, int y, int label) {
  check_label(label);
  labels_[static_cast<std::size_t>(y) * width_ + x] = static_cast<std::uint8_t>(label);
}

Mask PartSegmentation::person_mask() const {
  Mask m(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) m.set(x, y, at(x, y) != 0);
  }
  return m;
}

Mask PartSegmentation::label_mask(int label) const {
  Mask m(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) m.set(x, y, at(x, y) == label);
  }
  return m;
}

PartSegmentation read_segmentation_png(const std::filesystem::path& path) {
  auto indexed = io::read_indexed_png(path);
  for (auto l : indexed.indices) {
    if (l >= kPartLabelCount) {
      throw Error(ErrorCode::kMalformedInput,
                  path.string() + ": segmentation label out of range: " + std::to_string(l));
    }
  }
  return PartSegmentation(indexed.width, indexed.height, std::move(indexed.indices));
}

void write_segmentation_png(const std::filesystem::path& path, const PartSegmentation& seg) {
  io::IndexedImage img{seg.width(), seg.height(),
                       std::vector<std::uint8_t>(seg.labels().begin(), seg.labels().end())};
  io::write_indexed_png(path, img, kSegPalette);
}

std::optional<Box> pose_box(const KeypointSet& kps, double min_score, double margin) {
  const auto pts = kps.confident(min_score);
  if (pts.empty()) return std::nullopt;
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  const double grow = margin * std::max(b.x1 - b.x0, b.y1 - b.y0);
  b.x0 -= grow;
  b.y0 -= grow;
  b.x1 += grow;
  b.y1 += grow;
  return b;
}

Image extract_background(const Image& img, const KeypointSet& src_kps,
                         const KeypointSet& tgt_kps, const BackgroundOptions& options) {
  if (options.margin < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "background margin must be >= 0");
  }
  std::vector<Box> boxes;
  for (const auto* kps : {&src_kps, &tgt_kps}) {
    if (auto b = pose_box(*kps, options.min_score, options.margin)) boxes.push_back(*b);
  }
  if (boxes.empty()) {
    throw Error(ErrorCode::kEmptyPose, "no keypoints above the confidence floor");
  }
  Image out = img;
  for (const auto& b : boxes) {
    // Pixel x covers [x - 0.5, x + 0.5]; it is masked when that square
    // overlaps the box with positive area or touches a degenerate box.
    const double fx0 = std::floor(b.x0 - 0.5) + 1;
    const double fy0 = std::floor(b.y0 - 0.5) + 1;
    const double fx1 = std::ceil(b.x1 + 0.5) - 1;
    const double fy1 = std::ceil(b.y1 + 0.5) - 1;
    const int x0 = static_cast<int>(std::max(0.0, fx0));
    const int y0 = static_cast<int>(std::max(0.0, fy0));
    const int x1 = static_cast<int>(std::min<double>(img.width() - 1, fx1));
    const int y1 = static_cast<int>(std::min<double>(img.height() - 1, fy1));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        for (float& v : out.pixel(x, y)) v = options.fill;
      }
    }
  }
  return out;
}

std::span<const std::string_view> skeleton_joint_names() { return kJointNames; }

std::span<const std::array<int, 2>> skeleton_limbs() { return kLimbs; }

std::array<float, 3> limb_color(std::size_t limb) {
  const auto& c = kLimbPalette.at(limb);
  return {c[0] / 255.0f, c[1] / 255.0f, c[2] / 255.0f};
}

int skeleton_thickness(int width, int height) {
  return std::max(1, static_cast<int>(std::lround(3.0 * std::min(width, height) / 256.0)));
}

Image render_pose(const KeypointSet& kps, int width, int height, double min_score) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "pose raster extent must be positive");
  }
  if (kps.confident(min_score).empty()) {
    throw Error(ErrorCode::kEmptyPose, "no keypoints above the confidence floor");
  }
  Image out(width, height, 3);
  const int thickness = skeleton_thickness(width, height);
  for (std::size_t i = 0; i < kLimbs.size(); ++i) {
    const Keypoint* a = kps.find(kJointNames[static_cast<std::size_t>(kLimbs[i][0])]);
    const Keypoint* b = kps.find(kJointNames[static_cast<std::size_t>(kLimbs[i][1])]);
    if (a == nullptr || b == nullptr || a->score < min_score || b->score < min_score) {
      continue;
    }
    draw_line(out, pixel_coord(a->x), pixel_coord(a->y), pixel_coord(b->x),
              pixel_coord(b->y), thickness, limb_color(i));
  }
  return out;
}

Image render_pose(const DensePoseMap& pose, int width, int height) {
  if (pose.width() == 0 || pose.height() == 0) {
    throw Error(ErrorCode::kEmptyPose, "empty dense-pose map");
  }
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "pose raster extent must be positive");
  }
  if (pose.width() == width && pose.height() == height) return io::encode_iuv(pose);
  DensePoseMap resized(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(pose.height() - 1, y * pose.height() / height);
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(pose.width() - 1, x * pose.width() / width);
      const auto& s = pose.at(sx, sy);
      resized.set(x, y, s.part, s.u, s.v);
    }
  }
  return io::encode_iuv(resized);
}

ConditionStack::ConditionStack(Tensor3 tensor) : tensor_(std::move(tensor)) {
  if (tensor_.channels != kChannels || tensor_.data.size() != tensor_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "condition stack must have 9 channels");
  }
}

Image ConditionStack::slot(ConditionSlot slot) const {
  const auto first = static_cast<std::uint32_t>(slot) * 3;
  Image out(width(), height(), 3);
  for (std::uint32_t c = 0; c < 3; ++c) {
    for (std::uint32_t y = 0; y < tensor_.height; ++y) {
      for (std::uint32_t x = 0; x < tensor_.width; ++x) {
        out.at(static_cast<int>(x), static_cast<int>(y), static_cast<int>(c)) =
            tensor_.at(first + c, y, x);
      }
    }
  }
  return out;
}

Tensor3 image_to_tensor(const Image& img) {
  Tensor3 t{static_cast<std::uint32_t>(img.height()), static_cast<std::uint32_t>(img.width()),
            static_cast<std::uint32_t>(img.channels()), {}};
  t.data.resize(t.size());
  for (int c = 0; c < img.channels(); ++c) {
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        t.at(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(y),
             static_cast<std::uint32_t>(x)) = img.at(x, y, c);
      }
    }
  }
  return t;
}

Image tensor_to_image(const Tensor3& t) {
  if (t.data.size() != t.size()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor data length does not match its shape");
  }
  std::vector<float> data(t.size());
  for (std::uint32_t c = 0; c < t.channels; ++c) {
    for (std::uint32_t y = 0; y < t.height; ++y) {
      for (std::uint32_t x = 0; x < t.width; ++x) {
        data[(static_cast<std::size_t>(y) * t.width + x) * t.channels + c] = t.at(c, y, x);
      }
    }
  }
  return Image(static_cast<int>(t.width), static_cast<int>(t.height),
               static_cast<int>(t.channels), std::move(data));
}

ConditionStack pack_condition(const std::optional<Image>& texture, const Image& pose,
                              const Image& background) {
  const int w = pose.width();
  const int h = pose.height();
  if (!background.same_extent(w, h) || (texture && !texture->same_extent(w, h))) {
    throw Error(ErrorCode::kShapeMismatch,
                "texture, pose and background must share one extent");
  }
  Tensor3 t{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w),
            ConditionStack::kChannels, {}};
  t.data.assign(t.size(), 0.0f);
  auto copy_slot = [&](const Image& src, ConditionSlot slot) {
    const Image rgb = to_rgb(src);
    const auto first = static_cast<std::uint32_t>(slot) * 3;
    for (int c = 0; c < 3; ++c) {
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          t.at(first + static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(y),
               static_cast<std::uint32_t>(x)) = rgb.at(x, y, c);
        }
      }
    }
  };
  if (texture) copy_slot(*texture, ConditionSlot::kTexture);
  copy_slot(pose, ConditionSlot::kPose);
  copy_slot(background, ConditionSlot::kBackground);
  return ConditionStack(std::move(t));
}

Image remove_garment(const Image& img, const Mask& garment_mask, float fill) {
  if (garment_mask.width() != img.width() || garment_mask.height() != img.height()) {
    throw Error(ErrorCode::kShapeMismatch, "garment mask differs from image extent");
  }
  if (!(fill >= 0.0f && fill <= 1.0f)) {
    throw Error(ErrorCode::kInvalidArgument, "fill value must lie in [0, 1]");
  }
  Image out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!garment_mask.at(x, y)) continue;
      for (float& v : out.pixel(x, y)) v = fill;
    }
  }
  return out;
}

LabelEmbeddings parse_label_embeddings(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("label embeddings: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedInput, "label embeddings must be a JSON object");
  }
  LabelEmbeddings out;
  for (const auto& [name, value] : doc.items()) {
    const auto label = part_label_from_name(name);
    if (!label || *label == 0) {
      throw Error(ErrorCode::kMalformedInput, "unknown part label '" + name + "'");
    }
    try {
      out[*label] = value.get<std::vector<float>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedInput,
                  "embedding for '" + name + "' must be a float array");
    }
  }
  return out;
}

std::size_t PartFeatureSet::token_count() const {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.tokens.size();
  return n;
}

std::vector<std::uint8_t> downsample_labels(const PartSegmentation& seg, int grid_height,
                                            int grid_width) {
  if (grid_height <= 0 || grid_width <= 0 || seg.width() == 0 || seg.height() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "empty segmentation or feature grid");
  }
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(grid_height) * grid_width);
  auto span_of = [](int i, int cells_n, int pixels_n) {
    int lo = static_cast<int>(static_cast<long long>(i) * pixels_n / cells_n);
    int hi = static_cast<int>(static_cast<long long>(i + 1) * pixels_n / cells_n);
    if (hi <= lo) {
      lo = std::min(pixels_n - 1, static_cast<int>((i + 0.5) * pixels_n / cells_n));
      hi = lo + 1;
    }
    return std::pair{lo, hi};
  };
  for (int r = 0; r < grid_height; ++r) {
    const auto [y0, y1] = span_of(r, grid_height, seg.height());
    for (int c = 0; c < grid_width; ++c) {
      const auto [x0, x1] = span_of(c, grid_width, seg.width());
      std::array<int, kPartLabelCount> counts{};
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) ++counts[static_cast<std::size_t>(seg.at(x, y))];
      }
      // max_element returns the first maximum, i.e. the lowest label id.
      cells[static_cast<std::size_t>(r) * grid_width + c] = static_cast<std::uint8_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
    }
  }
  return cells;
}

PartFeatureSet extract_part_features(const FeatureGrid& grid, const PartSegmentation& seg,
                                     const LabelEmbeddings& embeddings) {
  if (grid.channels <= 0 ||
      grid.data.size() != static_cast<std::size_t>(grid.height) * grid.width * grid.channels) {
    throw Error(ErrorCode::kShapeMismatch, "feature grid data does not match its shape");
  }
  std::size_t embed_dim = 0;
  for (int label = 1; label <= kPartCount; ++label) {
    auto it = embeddings.find(label);
    if (it == embeddings.end()) {
      throw Error(ErrorCode::kShapeMismatch, "missing label embedding for '" +
                                                 std::string(part_label_name(label)) + "'");
    }
    if (label == 1) embed_dim = it->second.size();
    if (it->second.empty() || it->second.size() != embed_dim) {
      throw Error(ErrorCode::kShapeMismatch, "label embeddings differ in dimension");
    }
  }

  const auto cells = downsample_labels(seg, grid.height, grid.width);
  const auto channels = static_cast<std::size_t>(grid.channels);
  PartFeatureSet out;
  out.token_dim = static_cast<int>(channels + embed_dim);
  std::array<std::vector<double>, kPartCount> sums;
  for (int label = 1; label <= kPartCount; ++label) {
    out.parts[static_cast<std::size_t>(label - 1)].label = label;
    sums[static_cast<std::size_t>(label - 1)].assign(channels, 0.0);
  }

  for (int r = 0; r < grid.height; ++r) {
    for (int c = 0; c < grid.width; ++c) {
      const int label = cells[static_cast<std::size_t>(r) * grid.width + c];
      if (label == 0) continue;
      auto& part = out.parts[static_cast<std::size_t>(label - 1)];
      const auto token = grid.token(r, c);
      const auto& embed = embeddings.at(label);
      std::vector<float> joined(token.begin(), token.end());
      joined.insert(joined.end(), embed.begin(), embed.end());
      part.tokens.push_back(std::move(joined));
      auto& sum = sums[static_cast<std::size_t>(label - 1)];
      for (std::size_t k = 0; k < channels; ++k) sum[k] += token[k];
    }
  }

  for (auto& part : out.parts) {
    part.present = !part.tokens.empty();
    if (!part.present) continue;
    const auto& sum = sums[static_cast<std::size_t>(part.label - 1)];
    part.pooled.reserve(static_cast<std::size_t>(out.token_dim));
    for (double s : sum) {
      part.pooled.push_back(static_cast<float>(s / static_cast<double>(part.tokens.size())));
    }
    const auto& embed = embeddings.at(part.label);
    part.pooled.insert(part.pooled.end(), embed.begin(), embed.end());
  }
  return out;
}

PartTransform draw_part_transform(std::uint64_t seed, int label) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(label))));
  PartTransform t;
  t.quarter_turns = static_cast<int>(rng() >> 62);
  t.jitter_deg = -kMaxJitterDeg + 2.0 * kMaxJitterDeg * unit_interval(rng);
  t.flip = (rng() >> 63) != 0;
  return t;
}

Image apply_part_transforms(const Image& img, const PartSegmentation& seg,
                            const std::map<int, PartTransform>& transforms) {
  if (!img.same_extent(seg.width(), seg.height())) {
    throw Error(ErrorCode::kShapeMismatch, "segmentation differs from image extent");
  }
  struct Bounds {
    int x0, y0, x1, y1;
  };
  std::array<std::optional<Bounds>, kPartLabelCount> bounds;
  for (int y = 0; y < seg.height(); ++y) {
    for (int x = 0; x < seg.width(); ++x) {
      auto& b = bounds[static_cast<std::size_t>(seg.at(x, y))];
      if (!b) {
        b = Bounds{x, y, x, y};
      } else {
        b->x0 = std::min(b->x0, x);
        b->y0 = std::min(b->y0, y);
        b->x1 = std::max(b->x1, x);
        b->y1 = std::max(b->y1, y);
      }
    }
  }

  Image out = img;
  for (const auto& [label, t] : transforms) {
    if (label <= 0 || label >= kPartLabelCount) continue;
    const auto& b = bounds[static_cast<std::size_t>(label)];
    if (!b) continue;

    // Inverse rotation R(-angle). Quarter turns use exact integer entries.
    double cos_a = 0.0;
    double sin_a = 0.0;
    const int turns = ((t.quarter_turns % 4) + 4) % 4;
    constexpr std::array<int, 4> kCos = {1, 0, -1, 0};
    constexpr std::array<int, 4> kSin = {0, 1, 0, -1};
    if (t.jitter_deg == 0.0) {
      cos_a = kCos[static_cast<std::size_t>(turns)];
      sin_a = kSin[static_cast<std::size_t>(turns)];
    } else {
      const double rad = (90.0 * turns + t.jitter_deg) * std::numbers::pi / 180.0;
      cos_a = std::cos(rad);
      sin_a = std::sin(rad);
    }
    const double cx = 0.5 * (b->x0 + b->x1);
    const double cy = 0.5 * (b->y0 + b->y1);

    for (int y = b->y0; y <= b->y1; ++y) {
      for (int x = b->x0; x <= b->x1; ++x) {
        const double dx = x - cx;
        const double dy = y - cy;
        double rx = cos_a * dx + sin_a * dy;
        const double ry = -sin_a * dx + cos_a * dy;
        if (t.flip) rx = -rx;
        const double qx = cx + rx;
        const double qy = cy + ry;
        const long nx = std::lround(qx);
        const long ny = std::lround(qy);
        if (nx < b->x0 || nx > b->x1 || ny < b->y0 || ny > b->y1) continue;
        if (seg.at(static_cast<int>(nx), static_cast<int>(ny)) != label) continue;
        bilinear_sample(img, qx, qy, out.pixel(x, y));
      }
    }
  }
  return out;
}

Image augment_parts(const Image& img, const PartSegmentation& seg, std::uint64_t seed) {
  if (!img.same_extent(seg.width(), seg.height())) {
    throw Error(ErrorCode::kShapeMismatch, "segmentation differs from image extent");
  }
  std::array<bool, kPartLabelCount> present{};
  for (auto l : seg.labels()) present[l] = true;
  std::map<int, PartTransform> transforms;
  for (int label = 1; label < kPartLabelCount; ++label) {
    if (present[static_cast<std::size_t>(label)]) {
      transforms[label] = draw_part_transform(seed, label);
    }
  }
  return apply_part_transforms(img, seg, transforms);
}

}  // namespace humanedit
