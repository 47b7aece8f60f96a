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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "humanedit/curation.hpp"
#include "humanedit/error.hpp"
#include "humanedit/io.hpp"
#include "json.hpp"
#include "support/error_code.hpp"
#include "support/synthetic.hpp"

namespace humanedit {
namespace {

using nlohmann::json;
using testing::code_of;

json passing_record() {
  json kps = json::array();
  for (int i = 0; i < 10; ++i) {
    kps.push_back({{"name", "j" + std::to_string(i)}, {"x", 10 * i}, {"y", 20}, {"score", 0.9}});
  }
  return {{"id", "ok"},
          {"width", 600},
          {"height", 800},
          {"person_boxes", {{50, 50, 400, 700, 0.9}}},
          {"face_boxes", {{200, 60, 80, 80, 0.8}}},
          {"keypoints", kps},
          {"person_mask_area", 1000.0},
          {"other_instance_overlap_area", 10.0},
          {"clothing_pixel_area", 300.0},
          {"caption", "a person"},
          {"clip_similarity", 0.3}};
}

CriterionReport eval(const json& rec, const CurationConfig& cfg = {}) {
  return evaluate_line(rec.dump(), cfg);
}

std::vector<std::string> reasons(const json& rec) { return eval(rec).fail_reasons; }

TEST(EvaluateRecord, AllPass) {
  CriterionReport r = eval(passing_record());
  EXPECT_TRUE(r.accepted);
  EXPECT_TRUE(r.fail_reasons.empty());
  EXPECT_EQ(r.id, "ok");
}

TEST(EvaluateRecord, PublishedThresholds) {
  json rec = passing_record();
  rec["width"] = 480;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"resolution"});
  rec = passing_record();
  rec["width"] = 512;
  rec["height"] = 512;
  EXPECT_TRUE(eval(rec).accepted);
  rec = passing_record();
  rec["clip_similarity"] = 0.19;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"clip_similarity"});
  rec["clip_similarity"] = 0.2;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"clip_similarity"});
  CurationConfig defaults;
  EXPECT_EQ(defaults.min_side, 512);
  EXPECT_EQ(defaults.min_clip_similarity, 0.2);
}

TEST(EvaluateRecord, EachCriterion) {
  json rec = passing_record();
  rec["person_boxes"].push_back({300, 300, 100, 100, 0.7});
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"single_person"});

  rec = passing_record();
  rec["person_boxes"] = json::array();
  EXPECT_EQ(reasons(rec), (std::vector<std::string>{"single_person", "head_visible"}));

  rec = passing_record();
  rec["face_boxes"] = {{500, 760, 30, 30, 0.9}};
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"head_visible"});

  rec = passing_record();
  rec["face_boxes"] = {{200, 60, 80, 80, 0.4}};
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"head_visible"});

  rec = passing_record();
  for (int i = 7; i < 10; ++i) rec["keypoints"][static_cast<std::size_t>(i)]["score"] = 0.29;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"pose_detected"});

  rec = passing_record();
  rec["other_instance_overlap_area"] = 51.0;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"occlusion"});

  rec = passing_record();
  rec["clothing_pixel_area"] = 99.0;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"clothing_coverage"});

  rec = passing_record();
  rec["person_mask_area"] = 0.0;
  EXPECT_EQ(reasons(rec), (std::vector<std::string>{"occlusion", "clothing_coverage"}));
}

TEST(EvaluateRecord, BoxesAreClampedBeforeIntersection) {
  json rec = passing_record();
  rec["person_boxes"] = {{-100, -100, 300, 300, 0.9}};
  rec["face_boxes"] = {{-50, -50, 40, 40, 0.9}};
  // Both boxes clamp to the image; the face then collapses to nothing.
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"head_visible"});
  rec["face_boxes"] = {{-50, -50, 80, 80, 0.9}};
  EXPECT_TRUE(eval(rec).accepted);
}

TEST(EvaluateRecord, MissingFieldsFailConservatively) {
  json rec = passing_record();
  rec.erase("keypoints");
  CriterionReport r = eval(rec);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.verdicts[static_cast<std::size_t>(Criterion::kPoseDetected)],
            Verdict::kIndeterminate);
  EXPECT_EQ(r.fail_reasons, std::vector<std::string>{"missing:keypoints"});

  rec = passing_record();
  rec["clip_similarity"] = nullptr;
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"missing:clip_similarity"});

  rec = passing_record();
  rec.erase("person_mask_area");
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"missing:person_mask_area"});

  rec = passing_record();
  rec.erase("height");
  EXPECT_EQ(reasons(rec), std::vector<std::string>{"missing:height"});
}

TEST(EvaluateRecord, KeypointObjectFormAccepted) {
  json rec = passing_record();
  rec["keypoints"] = {{"keypoints", rec["keypoints"]}};
  EXPECT_TRUE(eval(rec).accepted);
}

TEST(ParseAnnotationRecord, Malformed) {
  for (const char* line :
       {"not json", "[1,2]", R"({"width":600})", R"({"id":3})", R"({"id":"a","width":"x"})",
        R"({"id":"a","person_boxes":[[1,2,3]]})", R"({"id":"a","person_boxes":[[1,2,-3,4,1]]})",
        R"({"id":"a","clip_similarity":1.5})", R"({"id":"a","person_mask_area":-1})",
        R"({"id":"a","keypoints":[{"name":"n"}]})", R"({"id":"a","caption":5})"}) {
    EXPECT_EQ(code_of([&] { parse_annotation_record(line); }), ErrorCode::kRecordError) << line;
    CriterionReport r = evaluate_line(line);
    EXPECT_TRUE(r.record_error.has_value());
    EXPECT_FALSE(r.accepted);
    EXPECT_EQ(r.fail_reasons, std::vector<std::string>{"malformed"});
  }
}

TEST(CurateManifest, EmptyManifest) {
  std::istringstream in("");
  std::ostringstream out;
  CurationStats s = curate_manifest(in, out);
  EXPECT_EQ(s.total, 0u);
  EXPECT_EQ(s.accepted, 0u);
  EXPECT_EQ(s.acceptance_rate(), 0.0);
  EXPECT_TRUE(s.fail_reasons.empty());
  EXPECT_EQ(out.str(), "");
}

TEST(CurateManifest, DuplicatesCountTwiceAndOrderIsKept) {
  json a = passing_record();
  json b = passing_record();
  b["id"] = "second";
  json c = passing_record();
  c["width"] = 100;
  std::string text = a.dump() + "\n" + c.dump() + "\r\n\n" + b.dump() + "\n" + a.dump() + "\n";
  std::istringstream in(text);
  std::ostringstream out;
  CurationStats s = curate_manifest(in, out);
  EXPECT_EQ(s.total, 4u);
  EXPECT_EQ(s.accepted, 3u);
  EXPECT_EQ(s.rejected, 1u);
  EXPECT_EQ(s.fail_reasons.at("resolution"), 1u);
  EXPECT_EQ(out.str(), a.dump() + "\n" + b.dump() + "\n" + a.dump() + "\n");
}

struct Golden {
  std::vector<std::string> lines;
  json expected;
};

Golden load_golden() {
  Golden g;
  std::ifstream in(testing::fixture_path("curation_golden.jsonl"));
  for (std::string line; std::getline(in, line);) g.lines.push_back(line);
  g.expected = json::parse(io::read_text_file(testing::fixture_path("curation_golden_expected.json")));
  return g;
}

TEST(CurationGolden, VerdictsMatchLabels) {
  Golden g = load_golden();
  ASSERT_EQ(g.lines.size(), 20u);
  std::set<std::size_t> malformed;
  for (const auto& n : g.expected.at("malformed_lines")) malformed.insert(n.get<std::size_t>());
  for (std::size_t i = 0; i < g.lines.size(); ++i) {
    CriterionReport r = evaluate_line(g.lines[i]);
    if (malformed.count(i + 1)) {
      EXPECT_TRUE(r.record_error.has_value()) << "line " << i + 1;
      continue;
    }
    ASSERT_TRUE(g.expected.at("records").contains(r.id)) << r.id;
    auto want = g.expected.at("records").at(r.id).get<std::vector<std::string>>();
    EXPECT_EQ(r.fail_reasons, want) << r.id;
    EXPECT_EQ(r.accepted, want.empty()) << r.id;
  }
}

TEST(CurationGolden, StatsMatchHistogram) {
  Golden g = load_golden();
  std::ifstream in(testing::fixture_path("curation_golden.jsonl"));
  std::ostringstream out;
  CurationStats s = curate_manifest(in, out);
  json want = g.expected.at("stats");
  EXPECT_EQ(s.total, want.at("total").get<std::size_t>());
  EXPECT_EQ(s.accepted, want.at("accepted").get<std::size_t>());
  EXPECT_EQ(s.rejected, want.at("rejected").get<std::size_t>());
  EXPECT_EQ(s.malformed, want.at("malformed").get<std::size_t>());
  EXPECT_EQ(s.fail_reasons, (want.at("fail_reasons").get<std::map<std::string, std::size_t>>()));
  json stats = json::parse(s.to_json());
  EXPECT_DOUBLE_EQ(stats.at("acceptance_rate").get<double>(), 7.0 / 20.0);
}

std::set<std::string> accepted_ids(const std::vector<std::string>& lines,
                                   const CurationConfig& cfg) {
  std::set<std::string> ids;
  for (const auto& l : lines) {
    CriterionReport r = evaluate_line(l, cfg);
    if (r.accepted) ids.insert(r.id);
  }
  return ids;
}

TEST(CurationProperties, TighteningNeverGrowsAcceptedSet) {
  std::mt19937_64 rng(2024);
  std::vector<std::string> lines;
  for (int i = 0; i < 1000; ++i) lines.push_back(testing::random_annotation_line(rng, i));
  CurationConfig base;
  base.min_side = 450;
  base.face_score_floor = 0.35;
  base.min_joints = 5;
  base.joint_confidence = 0.2;
  base.max_occlusion_ratio = 0.1;
  base.min_clothing_ratio = 0.05;
  base.min_clip_similarity = 0.15;
  std::set<std::string> loose = accepted_ids(lines, base);
  ASSERT_GT(loose.size(), 0u);
  for (int trial = 0; trial < 20; ++trial) {
    std::set<std::string> tight = accepted_ids(lines, testing::tighten(base, rng));
    EXPECT_TRUE(std::includes(loose.begin(), loose.end(), tight.begin(), tight.end()));
  }
}

TEST(CurationProperties, PersonFloorIsNotMonotone) {
  // Two confident people: raising the person floor past the weaker one
  // leaves a single person and the record becomes acceptable.
  json rec = passing_record();
  rec["person_boxes"].push_back({300, 300, 100, 100, 0.6});
  CurationConfig strict;
  strict.person_score_floor = 0.7;
  EXPECT_FALSE(eval(rec).accepted);
  EXPECT_TRUE(eval(rec, strict).accepted);
}

TEST(CurationProperties, ShufflePermutesButKeepsStats) {
  std::mt19937_64 rng(7);
  std::vector<std::string> lines;
  for (int i = 0; i < 200; ++i) lines.push_back(testing::random_annotation_line(rng, i));
  auto run = [](const std::vector<std::string>& ls) {
    std::string text;
    for (const auto& l : ls) text += l + "\n";
    std::istringstream in(text);
    std::ostringstream out;
    return curate_manifest(in, out).to_json();
  };
  std::string before = run(lines);
  std::shuffle(lines.begin(), lines.end(), rng);
  EXPECT_EQ(run(lines), before);
}

TEST(CurationProperties, AcceptedImpliesAllPassAndRejectionsHaveReasons) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    CriterionReport r = evaluate_line(testing::random_annotation_line(rng, i));
    if (r.accepted) {
      for (Verdict v : r.verdicts) EXPECT_EQ(v, Verdict::kPass);
      EXPECT_TRUE(r.fail_reasons.empty());
    } else {
      EXPECT_FALSE(r.fail_reasons.empty());
    }
  }
}

}  // namespace
}  // namespace humanedit
