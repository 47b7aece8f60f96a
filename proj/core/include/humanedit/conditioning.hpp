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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "humanedit/image.hpp"
#include "humanedit/tensor_file.hpp"

namespace humanedit {

// ---------------------------------------------------------------------------
// Part segmentation

enum class PartLabel : std::uint8_t {
  kBackground = 0,
  kFace = 1,
  kHair = 2,
  kHeadwear = 3,
  kUpperClothing = 4,
  kCoat = 5,
  kLowerClothing = 6,
  kShoes = 7,
  kAccessories = 8,
  kPerson = 9,
};

inline constexpr int kPartLabelCount = 10;  // including background
inline constexpr int kPartCount = 9;         // labels 1..9

/// "face", "hair", ..., "person"; "background" for 0.
std::string_view part_label_name(int label);
/// Inverse of part_label_name; nullopt for unknown names.
std::optional<int> part_label_from_name(std::string_view name);

class PartSegmentation {
 public:
  PartSegmentation() = default;
  PartSegmentation(int width, int height, std::vector<std::uint8_t> labels);
  PartSegmentation(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, int label);

  std::span<const std::uint8_t> labels() const { return labels_; }
  /// Pixels carrying any non-background label.
  Mask person_mask() const;
  Mask label_mask(int label) const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> labels_;
};

PartSegmentation read_segmentation_png(const std::filesystem::path& path);
void write_segmentation_png(const std::filesystem::path& path, const PartSegmentation& seg);

// ---------------------------------------------------------------------------
// Partial background

struct BackgroundOptions {
  double margin = 0.1;
  float fill = 0.0f;
  double min_score = 0.3;
};

struct Box {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

/// Bounding box of keypoints with score >= min_score, grown on every side by
/// margin * max(box width, box height). nullopt when no keypoint qualifies.
std::optional<Box> pose_box(const KeypointSet& kps, double min_score, double margin);

/// Zero-fills (or `fill`s) the union of the source and target pose boxes.
/// A pixel is covered when its unit square overlaps a box. Throws EmptyPose
/// when neither set has a usable keypoint.
Image extract_background(const Image& img, const KeypointSet& src_kps,
                         const KeypointSet& tgt_kps, const BackgroundOptions& options = {});

// ---------------------------------------------------------------------------
// Pose rasters

/// The 18-joint body skeleton used for keypoint rendering.
std::span<const std::string_view> skeleton_joint_names();
std::span<const std::array<int, 2>> skeleton_limbs();
std::array<float, 3> limb_color(std::size_t limb);

/// Line thickness: 3 px at 256^2, scaled by min(width, height) / 256.
int skeleton_thickness(int width, int height);

/// Draws each limb whose two joints reach `min_score` as a Bresenham line
/// stamped with a square brush, limb palette color on black. Throws EmptyPose
/// when no keypoint reaches the floor.
Image render_pose(const KeypointSet& kps, int width, int height, double min_score = 0.3);

/// The IUV encoding as RGB (nearest-neighbor resampled if the extent differs).
Image render_pose(const DensePoseMap& pose, int width, int height);

// ---------------------------------------------------------------------------
// Conditioning stack

enum class ConditionSlot { kTexture = 0, kPose = 1, kBackground = 2 };

/// Nine planes: texture RGB, pose RGB, background RGB, in that order.
class ConditionStack {
 public:
  static constexpr std::uint32_t kChannels = 9;

  explicit ConditionStack(Tensor3 tensor);

  int width() const { return static_cast<int>(tensor_.width); }
  int height() const { return static_cast<int>(tensor_.height); }
  const Tensor3& tensor() const { return tensor_; }

  /// The three planes of one slot as an RGB image.
  Image slot(ConditionSlot slot) const;

 private:
  Tensor3 tensor_;
};

/// Concatenates [texture; pose; background]. A missing texture packs zero
/// planes (full text-driven editing). Inputs are converted to RGB; extents
/// must agree or ShapeMismatch is thrown.
ConditionStack pack_condition(const std::optional<Image>& texture, const Image& pose,
                              const Image& background);

/// Image as a 3-plane tensor and back; both directions are exact.
Tensor3 image_to_tensor(const Image& img);
Image tensor_to_image(const Tensor3& t);

// ---------------------------------------------------------------------------
// Garment removal

inline constexpr float kNeutralGray = 0.5f;

Image remove_garment(const Image& img, const Mask& garment_mask, float fill = kNeutralGray);

// ---------------------------------------------------------------------------
// Part features

/// Hf x Wf grid of C-dimensional tokens, row-major.
struct FeatureGrid {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;

  std::span<const float> token(int row, int col) const {
    return {data.data() + (static_cast<std::size_t>(row) * width + col) * channels,
            static_cast<std::size_t>(channels)};
  }
};

/// One embedding vector per part label 1..9, all of the same dimension.
using LabelEmbeddings = std::map<int, std::vector<float>>;

/// JSON object mapping label name ("face", ...) to a float array.
LabelEmbeddings parse_label_embeddings(const std::string& json_text);

struct PartFeatures {
  int label = 0;
  bool present = false;
  /// Tokens in row-major cell order, each C + E long.
  std::vector<std::vector<float>> tokens;
  /// Mean of the raw C-dim tokens followed by the label embedding.
  std::vector<float> pooled;
};

struct PartFeatureSet {
  int token_dim = 0;
  std::array<PartFeatures, kPartCount> parts;

  const PartFeatures& part(int label) const { return parts.at(label - 1); }
  std::size_t token_count() const;
};

/// Per-cell majority label of `seg` over the feature grid; ties go to the
/// lowest label id, so background wins any tie it takes part in.
std::vector<std::uint8_t> downsample_labels(const PartSegmentation& seg, int grid_height,
                                            int grid_width);

PartFeatureSet extract_part_features(const FeatureGrid& grid, const PartSegmentation& seg,
                                     const LabelEmbeddings& embeddings);

// ---------------------------------------------------------------------------
// Part-wise orientation augmentation

struct PartTransform {
  int quarter_turns = 0;     // 0..3
  double jitter_deg = 0.0;   // added to the quarter turns
  bool flip = false;         // horizontal mirror before rotation

  double angle_deg() const { return 90.0 * quarter_turns + jitter_deg; }
};

inline constexpr double kMaxJitterDeg = 15.0;

/// Deterministic transform for one part, drawn from a stream seeded by
/// (seed, label): quarter turn uniform in {0..3}, jitter uniform in
/// [-15, 15] degrees, fair-coin flip.
PartTransform draw_part_transform(std::uint64_t seed, int label);

/// Applies each transform about its part's bounding-box center. Output pixel
/// p inside the box takes the part's color from q = c + F(R(-angle)(p - c))
/// when the nearest pixel to q lies in the box and carries the label. Parts
/// are computed from the original image and composited in label order.
Image apply_part_transforms(const Image& img, const PartSegmentation& seg,
                            const std::map<int, PartTransform>& transforms);

Image augment_parts(const Image& img, const PartSegmentation& seg, std::uint64_t seed);

}  // namespace humanedit
