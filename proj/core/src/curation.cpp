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

#include "humanedit/curation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>

#include "humanedit/error.hpp"
#include "json.hpp"

namespace humanedit {

namespace {

using nlohmann::json;

[[noreturn]] void record_error(const std::string& what) {
  throw Error(ErrorCode::kRecordError, what);
}

// Returns nullptr for absent or null fields.
const json* field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

std::optional<double> number_field(const json& obj, const char* name) {
  const json* f = field(obj, name);
  if (f == nullptr) return std::nullopt;
  if (!f->is_number()) record_error(std::string("field '") + name + "' must be a number");
  const double v = f->get<double>();
  if (!std::isfinite(v)) record_error(std::string("field '") + name + "' must be finite");
  return v;
}

std::optional<double> area_field(const json& obj, const char* name) {
  auto v = number_field(obj, name);
  if (v && *v < 0.0) record_error(std::string("field '") + name + "' must be >= 0");
  return v;
}

std::optional<int> extent_field(const json& obj, const char* name) {
  const json* f = field(obj, name);
  if (f == nullptr) return std::nullopt;
  if (!f->is_number_integer() || f->get<long long>() < 0 || f->get<long long>() > (1 << 30)) {
    record_error(std::string("field '") + name + "' must be a non-negative integer");
  }
  return f->get<int>();
}

std::optional<std::vector<DetectionBox>> box_field(const json& obj, const char* name) {
  const json* f = field(obj, name);
  if (f == nullptr) return std::nullopt;
  if (!f->is_array()) record_error(std::string("field '") + name + "' must be an array");
  std::vector<DetectionBox> boxes;
  for (const auto& item : *f) {
    if (!item.is_array() || item.size() != 5 ||
        !std::all_of(item.begin(), item.end(), [](const json& v) { return v.is_number(); })) {
      record_error(std::string("entries of '") + name + "' must be [x, y, w, h, score]");
    }
    DetectionBox b{item[0].get<double>(), item[1].get<double>(), item[2].get<double>(),
                   item[3].get<double>(), item[4].get<double>()};
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.w) ||
        !std::isfinite(b.h) || !std::isfinite(b.score) || b.w < 0.0 || b.h < 0.0) {
      record_error(std::string("invalid box in '") + name + "'");
    }
    boxes.push_back(b);
  }
  return boxes;
}

std::optional<KeypointSet> keypoint_field(const json& obj) {
  const json* f = field(obj, "keypoints");
  if (f == nullptr) return std::nullopt;
  const json* list = f;
  if (f->is_object()) {
    list = field(*f, "keypoints");
    if (list == nullptr) return std::nullopt;
  }
  if (!list->is_array()) record_error("field 'keypoints' must be an array");
  KeypointSet kps;
  try {
    for (const auto& item : *list) {
      Keypoint kp;
      kp.name = item.at("name").get<std::string>();
      kp.x = item.at("x").get<double>();
      kp.y = item.at("y").get<double>();
      kp.score = item.value("score", 1.0);
      kps.add(std::move(kp));
    }
  } catch (const json::exception& e) {
    record_error(std::string("bad keypoint entry: ") + e.what());
  } catch (const Error& e) {
    record_error(e.what());
  }
  return kps;
}

DetectionBox clamp_box(const DetectionBox& b, const AnnotationRecord& rec) {
  if (!rec.width || !rec.height) return b;
  const double w = *rec.width;
  const double h = *rec.height;
  const double x0 = std::clamp(b.x, 0.0, w);
  const double y0 = std::clamp(b.y, 0.0, h);
  const double x1 = std::clamp(b.x + b.w, 0.0, w);
  const double y1 = std::clamp(b.y + b.h, 0.0, h);
  return {x0, y0, x1 - x0, y1 - y0, b.score};
}

bool boxes_intersect(const DetectionBox& a, const DetectionBox& b) {
  const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  return ix > 0.0 && iy > 0.0;
}

std::vector<DetectionBox> confident_boxes(const std::vector<DetectionBox>& boxes,
                                          double floor, const AnnotationRecord& rec) {
  std::vector<DetectionBox> out;
  for (const auto& b : boxes) {
    if (b.score >= floor) out.push_back(clamp_box(b, rec));
  }
  return out;
}

}  // namespace

AnnotationRecord parse_annotation_record(std::string_view json_line) {
  json doc;
  try {
    doc = json::parse(json_line);
  } catch (const json::parse_error& e) {
    record_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) record_error("record must be a JSON object");
  const json* id = field(doc, "id");
  if (id == nullptr || !id->is_string()) record_error("record lacks a string 'id'");

  AnnotationRecord rec;
  rec.id = id->get<std::string>();
  rec.width = extent_field(doc, "width");
  rec.height = extent_field(doc, "height");
  rec.person_boxes = box_field(doc, "person_boxes");
  rec.face_boxes = box_field(doc, "face_boxes");
  rec.keypoints = keypoint_field(doc);
  rec.person_mask_area = area_field(doc, "person_mask_area");
  rec.other_instance_overlap_area = area_field(doc, "other_instance_overlap_area");
  rec.clothing_pixel_area = area_field(doc, "clothing_pixel_area");
  if (const json* caption = field(doc, "caption")) {
    if (!caption->is_string()) record_error("field 'caption' must be a string");
    rec.caption = caption->get<std::string>();
  }
  rec.clip_similarity = number_field(doc, "clip_similarity");
  if (rec.clip_similarity && std::abs(*rec.clip_similarity) > 1.0) {
    record_error("field 'clip_similarity' must lie in [-1, 1]");
  }
  return rec;
}

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kResolution: return "resolution";
    case Criterion::kSinglePerson: return "single_person";
    case Criterion::kHeadVisible: return "head_visible";
    case Criterion::kPoseDetected: return "pose_detected";
    case Criterion::kOcclusion: return "occlusion";
    case Criterion::kClothingCoverage: return "clothing_coverage";
    case Criterion::kClipSimilarity: return "clip_similarity";
  }
  return "unknown";
}

CriterionReport evaluate_record(const AnnotationRecord& rec, const CurationConfig& cfg) {
  CriterionReport report;
  report.id = rec.id;

  auto judge = [&](Criterion c, bool pass) {
    report.verdicts[static_cast<std::size_t>(c)] = pass ? Verdict::kPass : Verdict::kFail;
    if (!pass) report.fail_reasons.emplace_back(criterion_name(c));
  };
  auto missing = [&](Criterion c, std::string_view field_name) {
    report.verdicts[static_cast<std::size_t>(c)] = Verdict::kIndeterminate;
    std::string reason = "missing:" + std::string(field_name);
    if (std::find(report.fail_reasons.begin(), report.fail_reasons.end(), reason) ==
        report.fail_reasons.end()) {
      report.fail_reasons.push_back(std::move(reason));
    }
  };

  if (!rec.width) {
    missing(Criterion::kResolution, "width");
  } else if (!rec.height) {
    missing(Criterion::kResolution, "height");
  } else {
    judge(Criterion::kResolution, std::min(*rec.width, *rec.height) >= cfg.min_side);
  }

  std::vector<DetectionBox> persons;
  if (!rec.person_boxes) {
    missing(Criterion::kSinglePerson, "person_boxes");
  } else {
    persons = confident_boxes(*rec.person_boxes, cfg.person_score_floor, rec);
    judge(Criterion::kSinglePerson, persons.size() == 1);
  }

  if (!rec.face_boxes) {
    missing(Criterion::kHeadVisible, "face_boxes");
  } else if (!rec.person_boxes) {
    missing(Criterion::kHeadVisible, "person_boxes");
  } else {
    const auto faces = confident_boxes(*rec.face_boxes, cfg.face_score_floor, rec);
    const bool head = std::any_of(faces.begin(), faces.end(), [&](const DetectionBox& f) {
      return std::any_of(persons.begin(), persons.end(),
                         [&](const DetectionBox& p) { return boxes_intersect(f, p); });
    });
    judge(Criterion::kHeadVisible, head);
  }

  if (!rec.keypoints) {
    missing(Criterion::kPoseDetected, "keypoints");
  } else {
    judge(Criterion::kPoseDetected,
          rec.keypoints->confident(cfg.joint_confidence).size() >=
              static_cast<std::size_t>(std::max(cfg.min_joints, 0)));
  }

  if (!rec.other_instance_overlap_area) {
    missing(Criterion::kOcclusion, "other_instance_overlap_area");
  } else if (!rec.person_mask_area) {
    missing(Criterion::kOcclusion, "person_mask_area");
  } else {
    judge(Criterion::kOcclusion,
          *rec.person_mask_area > 0.0 &&
              *rec.other_instance_overlap_area / *rec.person_mask_area <=
                  cfg.max_occlusion_ratio);
  }

  if (!rec.clothing_pixel_area) {
    missing(Criterion::kClothingCoverage, "clothing_pixel_area");
  } else if (!rec.person_mask_area) {
    missing(Criterion::kClothingCoverage, "person_mask_area");
  } else {
    judge(Criterion::kClothingCoverage,
          *rec.person_mask_area > 0.0 &&
              *rec.clothing_pixel_area / *rec.person_mask_area >= cfg.min_clothing_ratio);
  }

  if (!rec.clip_similarity) {
    missing(Criterion::kClipSimilarity, "clip_similarity");
  } else {
    judge(Criterion::kClipSimilarity, *rec.clip_similarity > cfg.min_clip_similarity);
  }

  report.accepted = std::all_of(report.verdicts.begin(), report.verdicts.end(),
                                [](Verdict v) { return v == Verdict::kPass; });
  return report;
}

CriterionReport evaluate_line(std::string_view json_line, const CurationConfig& cfg) {
  try {
    return evaluate_record(parse_annotation_record(json_line), cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRecordError) throw;
    CriterionReport report;
    report.verdicts.fill(Verdict::kIndeterminate);
    report.fail_reasons.emplace_back("malformed");
    report.record_error = e.what();
    return report;
  }
}

double CurationStats::acceptance_rate() const {
  return total == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(total);
}

std::string CurationStats::to_json() const {
  json reasons = json::object();
  for (const auto& [reason, count] : fail_reasons) reasons[reason] = count;
  json j = {{"total", total},
            {"accepted", accepted},
            {"rejected", rejected},
            {"malformed", malformed},
            {"acceptance_rate", acceptance_rate()},
            {"fail_reasons", reasons}};
  return j.dump(2);
}

CurationStats curate_manifest(std::istream& in, std::ostream& accepted,
                              const CurationConfig& cfg) {
  CurationStats stats;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    ++stats.total;
    const CriterionReport report = evaluate_line(line, cfg);
    if (report.record_error) {
      ++stats.malformed;
      continue;
    }
    if (report.accepted) {
      ++stats.accepted;
      accepted << line << '\n';
    } else {
      ++stats.rejected;
      for (const auto& reason : report.fail_reasons) ++stats.fail_reasons[reason];
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "failed reading manifest");
  return stats;
}

}  // namespace humanedit
