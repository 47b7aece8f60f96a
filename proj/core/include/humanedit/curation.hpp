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
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "humanedit/image.hpp"

namespace humanedit {

struct DetectionBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double score = 0.0;
};

/// One curation candidate with precomputed annotations. Optional fields are
/// absent in the source record; absent annotations fail their criterion.
struct AnnotationRecord {
  std::string id;
  std::optional<int> width;
  std::optional<int> height;
  std::optional<std::vector<DetectionBox>> person_boxes;
  std::optional<std::vector<DetectionBox>> face_boxes;
  std::optional<KeypointSet> keypoints;
  std::optional<double> person_mask_area;
  std::optional<double> other_instance_overlap_area;
  std::optional<double> clothing_pixel_area;
  std::string caption;
  std::optional<double> clip_similarity;
};

/// Parses one JSON line. Throws RecordError for malformed input (not an
/// object, wrong field types, negative areas, similarity outside [-1, 1]).
AnnotationRecord parse_annotation_record(std::string_view json_line);

struct CurationConfig {
  int min_side = 512;
  double person_score_floor = 0.5;
  double face_score_floor = 0.5;
  int min_joints = 8;
  double joint_confidence = 0.3;
  double max_occlusion_ratio = 0.05;
  double min_clothing_ratio = 0.1;
  /// Strict: similarity must exceed this value.
  double min_clip_similarity = 0.2;
};

enum class Criterion {
  kResolution = 0,
  kSinglePerson,
  kHeadVisible,
  kPoseDetected,
  kOcclusion,
  kClothingCoverage,
  kClipSimilarity,
};

inline constexpr std::size_t kCriterionCount = 7;

/// Reason string for a failed criterion: "resolution", "single_person",
/// "head_visible", "pose_detected", "occlusion", "clothing_coverage",
/// "clip_similarity".
std::string_view criterion_name(Criterion c);

enum class Verdict { kPass, kFail, kIndeterminate };

struct CriterionReport {
  std::string id;
  std::array<Verdict, kCriterionCount> verdicts{};
  bool accepted = false;
  /// One entry per failed criterion, in criterion order: the criterion name,
  /// or "missing:<field>" when a needed annotation was absent.
  std::vector<std::string> fail_reasons;
  /// Set when the record could not be parsed; verdicts are then meaningless.
  std::optional<std::string> record_error;
};

CriterionReport evaluate_record(const AnnotationRecord& rec, const CurationConfig& cfg = {});

/// Parses and evaluates one line. Malformed input yields a rejected report
/// with `record_error` set and the single reason "malformed".
CriterionReport evaluate_line(std::string_view json_line, const CurationConfig& cfg = {});

struct CurationStats {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t malformed = 0;
  std::map<std::string, std::size_t> fail_reasons;

  /// accepted / total, 0 for an empty manifest.
  double acceptance_rate() const;
  std::string to_json() const;
};

/// Streams newline-delimited records from `in`, writing each accepted line
/// verbatim to `accepted` in input order. Blank lines are skipped; lines that
/// fail to parse count as malformed and processing continues.
CurationStats curate_manifest(std::istream& in, std::ostream& accepted,
                              const CurationConfig& cfg = {});

}  // namespace humanedit
