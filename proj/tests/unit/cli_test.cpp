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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "humanedit/attention.hpp"
#include "humanedit/conditioning.hpp"
#include "humanedit/curation.hpp"
#include "humanedit/dense_warp.hpp"
#include "humanedit/io.hpp"
#include "humanedit/tensor_file.hpp"
#include "json.hpp"
#include "support/synthetic.hpp"

namespace humanedit {
namespace {

using nlohmann::json;
using namespace cli;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.status = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return testing::fixture_path(name).string(); }

class CliTest : public ::testing::Test {
 protected:
  testing::TempDir tmp_;
};

TEST_F(CliTest, HelpAndVersionSucceed) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("warp-dense"), std::string::npos);
  EXPECT_EQ(run({"--version"}).status, kExitOk);
  EXPECT_EQ(run({"curate", "--help"}).status, kExitOk);
}

TEST_F(CliTest, ArgumentErrors) {
  EXPECT_EQ(run({}).status, kExitArgument);
  EXPECT_EQ(run({"no-such-command"}).status, kExitArgument);
  EXPECT_EQ(run({"warp-dense", "--src", "x.png"}).status, kExitArgument);
  EXPECT_EQ(run({"augment", "--image", "a", "--seg", "b", "--out", "c", "--seed", "abc"}).status,
            kExitArgument);
  EXPECT_EQ(run({"render-pose", "--out", tmp_.file("p.png")}).status, kExitArgument);
  CliRun r = run({"--json-errors", "pack", "--bogus"});
  EXPECT_EQ(r.status, kExitArgument);
  json j = json::parse(r.err);
  EXPECT_EQ(j["error"]["category"], "argument");
  EXPECT_EQ(j["error"]["exit_status"], kExitArgument);
}

TEST_F(CliTest, MissingInputIsIoError) {
  CliRun r = run({"remove-garment", "--image", tmp_.file("absent.png"), "--mask",
               tmp_.file("absent_mask.png"), "--out", tmp_.file("o.png")});
  EXPECT_EQ(r.status, kExitIo);
  EXPECT_NE(r.err.find("IoError"), std::string::npos);
  EXPECT_EQ(run({"curate", "--in", tmp_.file("absent.jsonl")}).status, kExitIo);
}

TEST_F(CliTest, WarpDenseIdentityMatchesSourceOnMask) {
  CliRun r = run({"warp-dense", "--src", fixture("person.png"), "--src-pose",
               fixture("person_iuv.png"), "--tgt-pose", fixture("person_iuv.png"), "--out-tex",
               tmp_.file("tex.png"), "--out-mask", tmp_.file("mask.png")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Image src = io::read_png(fixture("person.png"));
  Image tex = io::read_png(tmp_.file("tex.png"));
  Mask mask = io::read_mask_png(tmp_.file("mask.png"));
  DensePoseMap pose = io::read_iuv_png(fixture("person_iuv.png"));
  EXPECT_LE(testing::max_abs_diff(src, tex, mask), 2.0 / 255.0 + 1e-6);
  EXPECT_GE(static_cast<double>(mask.count()),
            0.99 * static_cast<double>(pose.foreground_mask().count()));

  // Same bytes as the library call.
  WarpResult lib = repose(src, pose, pose);
  EXPECT_EQ(lib.visibility, mask);
}

TEST_F(CliTest, WarpSparse) {
  CliRun r = run({"warp-sparse", "--garment", fixture("garment.png"), "--garment-mask",
               fixture("garment_mask.png"), "--garment-kps", fixture("garment_kps.json"),
               "--body-kps", fixture("body_kps.json"), "--out-tex", tmp_.file("g.png"),
               "--out-mask", tmp_.file("gm.png"), "--width", "256", "--height", "256",
               "--homography", tmp_.file("h.json")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(io::read_png(tmp_.file("g.png")).width(), 256);
  json h = json::parse(io::read_text_file(tmp_.file("h.json")));
  ASSERT_TRUE(h.is_array());
  EXPECT_EQ(h.size(), 9u);
  EXPECT_GT(io::read_mask_png(tmp_.file("gm.png")).count(), 0u);
}

TEST_F(CliTest, WarpSparseThreeLandmarksIsInsufficientPoints) {
  CliRun r = run({"--json-errors", "warp-sparse", "--garment", fixture("garment.png"),
               "--garment-mask", fixture("garment_mask.png"), "--garment-kps",
               fixture("garment_kps_three.json"), "--body-kps", fixture("body_kps.json"),
               "--out-tex", tmp_.file("g.png"), "--out-mask", tmp_.file("gm.png")});
  EXPECT_EQ(r.status, kExitData);
  json j = json::parse(r.err);
  EXPECT_EQ(j["error"]["code"], "InsufficientPoints");
  EXPECT_EQ(j["error"]["category"], "data");
  EXPECT_FALSE(std::filesystem::exists(tmp_.file("g.png")));
}

TEST_F(CliTest, BgExtractAndRenderPose) {
  ASSERT_EQ(run({"bg-extract", "--image", fixture("person.png"), "--src-kps",
                 fixture("body_kps.json"), "--tgt-kps", fixture("body_kps_shifted.json"),
                 "--out", tmp_.file("bg.png")})
                .status,
            kExitOk);
  Image img = io::read_png(fixture("person.png"));
  KeypointSet a = io::read_keypoints_json(fixture("body_kps.json"));
  KeypointSet b = io::read_keypoints_json(fixture("body_kps_shifted.json"));
  Image want = extract_background(img, a, b);
  EXPECT_LE(testing::max_abs_diff(io::read_png(tmp_.file("bg.png")), want,
                                  Mask(img.width(), img.height(), 1)),
            0.5 / 255.0 + 1e-6);

  ASSERT_EQ(run({"render-pose", "--kps", fixture("body_kps.json"), "--width", "256", "--height",
                 "256", "--out", tmp_.file("skel.png")})
                .status,
            kExitOk);
  EXPECT_EQ(io::read_png(tmp_.file("skel.png")), io::read_png([&] {
              io::write_png(tmp_.file("want.png"), render_pose(a, 256, 256));
              return tmp_.file("want.png");
            }()));

  ASSERT_EQ(run({"render-pose", "--densepose", fixture("person_iuv.png"), "--out",
                 tmp_.file("dp.png")})
                .status,
            kExitOk);
  EXPECT_EQ(io::decode_iuv(io::read_png(tmp_.file("dp.png"))),
            io::read_iuv_png(fixture("person_iuv.png")));
  EXPECT_EQ(run({"render-pose", "--kps", fixture("body_kps.json"), "--out", tmp_.file("x.png")})
                .status,
            kExitArgument);
}

TEST_F(CliTest, PackFloatIoIsBitExact) {
  Image tex = testing::random_image(32, 24, 3, 1);
  Image pose = testing::random_image(32, 24, 3, 2);
  Image bg = testing::random_image(32, 24, 3, 3);
  write_tensor(tmp_.file("tex.bin"), image_to_tensor(tex));
  write_tensor(tmp_.file("pose.bin"), image_to_tensor(pose));
  write_tensor(tmp_.file("bg.bin"), image_to_tensor(bg));
  CliRun r = run({"pack", "--float-io", "--tex", tmp_.file("tex.bin"), "--pose",
               tmp_.file("pose.bin"), "--bg", tmp_.file("bg.bin"), "--out",
               tmp_.file("stack.bin")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Tensor3 t = read_tensor(tmp_.file("stack.bin"));
  ConditionStack stack(t);
  EXPECT_EQ(stack.slot(ConditionSlot::kTexture), tex);
  EXPECT_EQ(stack.slot(ConditionSlot::kPose), pose);
  EXPECT_EQ(stack.slot(ConditionSlot::kBackground), bg);

  r = run({"pack", "--float-io", "--pose", tmp_.file("pose.bin"), "--bg", tmp_.file("bg.bin"),
           "--out", tmp_.file("zero.bin")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  ConditionStack zero(read_tensor(tmp_.file("zero.bin")));
  EXPECT_EQ(zero.slot(ConditionSlot::kTexture), Image(32, 24, 3));

  write_tensor(tmp_.file("small.bin"), image_to_tensor(testing::random_image(8, 8, 3, 4)));
  EXPECT_EQ(run({"pack", "--float-io", "--pose", tmp_.file("pose.bin"), "--bg",
                 tmp_.file("small.bin"), "--out", tmp_.file("bad.bin")})
                .status,
            kExitData);
}

TEST_F(CliTest, PackPngInputs) {
  CliRun r = run({"pack", "--pose", fixture("person.png"), "--bg", fixture("person.png"), "--out",
               tmp_.file("stack.bin")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Tensor3 t = read_tensor(tmp_.file("stack.bin"));
  EXPECT_EQ(t.channels, ConditionStack::kChannels);
  EXPECT_EQ(t.width, 256u);
}

TEST_F(CliTest, RemoveGarmentAndAugment) {
  ASSERT_EQ(run({"remove-garment", "--image", fixture("person.png"), "--mask",
                 fixture("garment_region.png"), "--out", tmp_.file("rg.png")})
                .status,
            kExitOk);
  Image rg = io::read_png(tmp_.file("rg.png"));
  EXPECT_NEAR(rg.at(100, 100, 0), kNeutralGray, 0.5 / 255.0 + 1e-6);

  std::vector<std::string> args = {"augment", "--image", fixture("person.png"), "--seg",
                                   fixture("segmentation.png"), "--seed", "42", "--out",
                                   tmp_.file("a1.png")};
  ASSERT_EQ(run(args).status, kExitOk);
  args.back() = tmp_.file("a2.png");
  ASSERT_EQ(run(args).status, kExitOk);
  EXPECT_EQ(io::read_text_file(tmp_.file("a1.png")), io::read_text_file(tmp_.file("a2.png")));
}

TEST_F(CliTest, AttnMatchesLibrary) {
  CliRun r = run({"attn", "--q", fixture("attn_q.bin"), "--k", fixture("attn_k.bin"), "--v",
               fixture("attn_v.bin"), "--out-output", tmp_.file("o.bin"), "--out-map",
               tmp_.file("m.bin")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  AttentionResult want =
      cross_attention(matrix_from_tensor(read_tensor(fixture("attn_q.bin"))),
                      matrix_from_tensor(read_tensor(fixture("attn_k.bin"))),
                      matrix_from_tensor(read_tensor(fixture("attn_v.bin"))));
  EXPECT_EQ(read_tensor(tmp_.file("o.bin")), matrix_to_tensor(want.output));
  EXPECT_EQ(read_tensor(tmp_.file("m.bin")), matrix_to_tensor(want.attention));

  EXPECT_EQ(run({"attn", "--q", fixture("attn_q.bin"), "--k", fixture("attn_v.bin"), "--v",
                 fixture("attn_v.bin"), "--out-output", tmp_.file("o.bin"), "--out-map",
                 tmp_.file("m.bin")})
                .status,
            kExitData);
}

TEST_F(CliTest, LossJsonMatchesTotalLoss) {
  CliRun r = run({"loss", "--attn", fixture("attn_map.bin"), "--mask", fixture("attn_mask.png"),
               "--part-attn", fixture("attn_map.bin"), "--part-mask", fixture("attn_mask_b.png"),
               "--eps", fixture("eps.bin"), "--eps-hat", fixture("eps_hat.bin")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Matrix a = matrix_from_tensor(read_tensor(fixture("attn_map.bin")));
  Matrix m = matrix_from_mask(io::read_mask_png(fixture("attn_mask.png")));
  Matrix mb = matrix_from_mask(io::read_mask_png(fixture("attn_mask_b.png")));
  double l_e = localization_loss(a, m);
  AttentionMaskPair pair{&a, &mb};
  double l_b = part_localization_loss(std::span<const AttentionMaskPair>(&pair, 1));
  double l_sd = noise_mse(matrix_from_tensor(read_tensor(fixture("eps.bin"))),
                          matrix_from_tensor(read_tensor(fixture("eps_hat.bin"))));
  LossBreakdown want = total_loss(l_sd, l_b, l_e);
  json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j.at("total").get<double>(), want.total);
  EXPECT_DOUBLE_EQ(j.at("l_e").get<double>(), l_e);
  EXPECT_DOUBLE_EQ(j.at("l_b").get<double>(), l_b);
  EXPECT_DOUBLE_EQ(j.at("l_sd").get<double>(), l_sd);
}

TEST_F(CliTest, LossFlags) {
  CliRun r = run({"loss", "--l-sd", "0.5", "--lambda1", "0", "--lambda2", "1"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_DOUBLE_EQ(json::parse(r.out).at("total").get<double>(), 0.5);

  r = run({"loss", "--attn", fixture("attn_map.bin"), "--mask", fixture("attn_mask.png"),
           "--no-region-normalized", "--out", tmp_.file("l.json")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Matrix a = matrix_from_tensor(read_tensor(fixture("attn_map.bin")));
  Matrix m = matrix_from_mask(io::read_mask_png(fixture("attn_mask.png")));
  EXPECT_DOUBLE_EQ(json::parse(io::read_text_file(tmp_.file("l.json"))).at("l_e").get<double>(),
                   localization_loss(a, m, LossNormalization::kAllCells));

  r = run({"loss", "--q", fixture("attn_q.bin"), "--k", fixture("attn_k.bin"), "--token", "2",
           "--map-width", "8", "--mask", fixture("attn_mask.png"), "--scale", "0.5"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  Matrix q = matrix_from_tensor(read_tensor(fixture("attn_q.bin")));
  Matrix k = matrix_from_tensor(read_tensor(fixture("attn_k.bin")));
  AttentionResult att = cross_attention(q, k, Matrix(k.rows(), 1, 0.0), 0.5);
  Matrix column(8, 8);
  for (std::size_t i = 0; i < q.rows(); ++i) column.data()[i] = att.attention(i, 2);
  EXPECT_DOUBLE_EQ(json::parse(r.out).at("l_e").get<double>(), localization_loss(column, m));

  EXPECT_EQ(run({"loss", "--l-sd", "0.1", "--lambda1", "-1"}).status, kExitArgument);
  EXPECT_EQ(run({"loss", "--part-attn", fixture("attn_map.bin")}).status, kExitArgument);
  EXPECT_EQ(run({"loss", "--attn", fixture("attn_map.bin")}).status, kExitArgument);
  EXPECT_EQ(run({"loss", "--q", fixture("attn_q.bin"), "--k", fixture("attn_k.bin"), "--token",
                 "9", "--mask", fixture("attn_mask.png")})
                .status,
            kExitArgument);
}

TEST_F(CliTest, CurateGoldenAndAllRejected) {
  CliRun r = run({"curate", "--in", fixture("curation_golden.jsonl"), "--out",
               tmp_.file("acc.jsonl"), "--stats", tmp_.file("stats.json")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  json stats = json::parse(io::read_text_file(tmp_.file("stats.json")));
  EXPECT_EQ(stats["accepted"], 7);
  EXPECT_EQ(stats["malformed"], 1);
  std::ifstream acc(tmp_.file("acc.jsonl"));
  int lines = 0;
  for (std::string l; std::getline(acc, l);) ++lines;
  EXPECT_EQ(lines, 7);

  r = run({"curate", "--in", fixture("curation_golden.jsonl"), "--min-side", "100000"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out, "");

  r = run({"curate", "--in", fixture("curation_golden.jsonl"), "--out", tmp_.file("a.jsonl")});
  ASSERT_EQ(r.status, kExitOk);
  EXPECT_EQ(json::parse(r.out)["total"], 20);
}

}  // namespace
}  // namespace humanedit
