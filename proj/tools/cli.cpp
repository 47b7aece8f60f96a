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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "humanedit/attention.hpp"
#include "humanedit/conditioning.hpp"
#include "humanedit/curation.hpp"
#include "humanedit/dense_warp.hpp"
#include "humanedit/error.hpp"
#include "humanedit/image.hpp"
#include "humanedit/io.hpp"
#include "humanedit/sparse_warp.hpp"
#include "humanedit/tensor_file.hpp"
#include "humanedit/version.hpp"
#include "json.hpp"

namespace humanedit::cli {

namespace {

using nlohmann::json;

int exit_status(ErrorCode code) {
  switch (error_category(code)) {
    case ErrorCategory::kArgument: return kExitArgument;
    case ErrorCategory::kIo: return kExitIo;
    case ErrorCategory::kData: return kExitData;
  }
  return kExitData;
}

void report_error(std::ostream& err, bool as_json, std::string_view code,
                  std::string_view category, const std::string& message, int status) {
  if (as_json) {
    json j = {{"error",
               {{"code", code},
                {"category", category},
                {"message", message},
                {"exit_status", status}}}};
    err << j.dump() << '\n';
  } else {
    err << "humanedit: " << code << ": " << message << '\n';
  }
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kArgument: return "argument";
    case ErrorCategory::kData: return "data";
    case ErrorCategory::kIo: return "io";
  }
  return "data";
}

// Float-io inputs are 3-channel tensors; values outside [0,1] are bad file
// contents rather than bad flags.
Image read_float_image(const std::string& path) {
  Tensor3 t = read_tensor(path);
  try {
    return tensor_to_image(t);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) {
      throw Error(ErrorCode::kMalformedInput, path + ": " + e.what());
    }
    throw;
  }
}

Image read_image(const std::string& path, bool float_io) {
  return float_io ? read_float_image(path) : io::read_png(path);
}

KeypointSet read_optional_keypoints(const std::string& path) {
  return path.empty() ? KeypointSet{} : io::read_keypoints_json(path);
}

Matrix read_matrix(const std::string& path) {
  return matrix_from_tensor(read_tensor(path));
}

Matrix mask_matrix(const std::string& path, const Matrix& like) {
  Mask m = io::read_mask_png(path);
  if (static_cast<std::size_t>(m.width()) != like.cols() ||
      static_cast<std::size_t>(m.height()) != like.rows()) {
    m = resize_nearest(m, static_cast<int>(like.cols()), static_cast<int>(like.rows()));
  }
  return matrix_from_mask(m);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, path + ": cannot open for writing");
  return f;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

struct WarpDenseArgs {
  std::string src, src_pose, tgt_pose, src_valid, out_tex, out_mask;
  DenseWarpOptions options;
};

void run_warp_dense(const WarpDenseArgs& a) {
  Image src = io::read_png(a.src);
  DensePoseMap src_pose = io::read_iuv_png(a.src_pose);
  DensePoseMap tgt_pose = io::read_iuv_png(a.tgt_pose);
  std::optional<Mask> valid;
  if (!a.src_valid.empty()) valid = io::read_mask_png(a.src_valid);
  WarpResult r = repose(src, src_pose, tgt_pose, a.options, valid ? &*valid : nullptr);
  io::write_png(a.out_tex, r.texture);
  io::write_mask_png(a.out_mask, r.visibility);
}

struct WarpSparseArgs {
  std::string garment, garment_mask, garment_kps, body_kps, out_tex, out_mask, homography;
  int width = 0;
  int height = 0;
  double min_score = kDefaultLandmarkFloor;
};

void run_warp_sparse(const WarpSparseArgs& a) {
  Image garment = io::read_png(a.garment);
  Mask mask = io::read_mask_png(a.garment_mask);
  KeypointSet garment_kps = io::read_keypoints_json(a.garment_kps);
  KeypointSet body_kps = io::read_keypoints_json(a.body_kps);
  int w = a.width > 0 ? a.width : garment.width();
  int h = a.height > 0 ? a.height : garment.height();
  GarmentWarp g = warp_garment(garment, mask, garment_kps, body_kps, w, h, a.min_score);
  io::write_png(a.out_tex, g.warp.texture);
  io::write_mask_png(a.out_mask, g.warp.visibility);
  if (!a.homography.empty()) {
    json arr = json::array();
    for (double v : g.homography.matrix()) arr.push_back(v);
    io::write_text_file(a.homography, arr.dump() + "\n");
  }
}

struct BgExtractArgs {
  std::string image, src_kps, tgt_kps, out;
  BackgroundOptions options;
};

void run_bg_extract(const BgExtractArgs& a) {
  Image img = io::read_png(a.image);
  Image bg = extract_background(img, read_optional_keypoints(a.src_kps),
                                read_optional_keypoints(a.tgt_kps), a.options);
  io::write_png(a.out, bg);
}

struct RenderPoseArgs {
  std::string kps, densepose, out;
  int width = 0;
  int height = 0;
  double min_score = 0.3;
};

void run_render_pose(const RenderPoseArgs& a) {
  if (a.kps.empty() && a.densepose.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "one of --kps or --densepose is required");
  }
  if (!a.kps.empty()) {
    if (a.width <= 0 || a.height <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "--width and --height are required with --kps");
    }
    io::write_png(a.out, render_pose(io::read_keypoints_json(a.kps), a.width, a.height,
                                     a.min_score));
    return;
  }
  DensePoseMap pose = io::read_iuv_png(a.densepose);
  int w = a.width > 0 ? a.width : pose.width();
  int h = a.height > 0 ? a.height : pose.height();
  io::write_png(a.out, render_pose(pose, w, h));
}

struct PackArgs {
  std::string tex, pose, bg, out;
  bool float_io = false;
};

void run_pack(const PackArgs& a) {
  std::optional<Image> tex;
  if (!a.tex.empty()) tex = read_image(a.tex, a.float_io);
  Image pose = read_image(a.pose, a.float_io);
  Image bg = read_image(a.bg, a.float_io);
  write_tensor(a.out, pack_condition(tex, pose, bg).tensor());
}

struct RemoveGarmentArgs {
  std::string image, mask, out;
  float fill = kNeutralGray;
};

void run_remove_garment(const RemoveGarmentArgs& a) {
  Image img = io::read_png(a.image);
  Mask mask = io::read_mask_png(a.mask);
  io::write_png(a.out, remove_garment(img, mask, a.fill));
}

struct AugmentArgs {
  std::string image, seg, out;
  std::uint64_t seed = 0;
};

void run_augment(const AugmentArgs& a) {
  Image img = io::read_png(a.image);
  PartSegmentation seg = read_segmentation_png(a.seg);
  io::write_png(a.out, augment_parts(img, seg, a.seed));
}

struct AttnArgs {
  std::string q, k, v, out_output, out_map;
  std::optional<double> scale;
};

void run_attn(const AttnArgs& a) {
  AttentionResult r = cross_attention(read_matrix(a.q), read_matrix(a.k), read_matrix(a.v),
                                      a.scale);
  write_tensor(a.out_output, matrix_to_tensor(r.output));
  write_tensor(a.out_map, matrix_to_tensor(r.attention));
}

struct LossArgs {
  std::string attn, q, k, mask, eps, eps_hat, out;
  int token = 0;
  int map_width = 0;
  std::vector<std::string> part_attn, part_mask;
  std::optional<double> l_sd;
  std::optional<double> scale;
  double lambda1 = kDefaultLambda1;
  double lambda2 = kDefaultLambda2;
  bool region_normalized = true;
};

// Attention of every query toward one key token, laid out as a map.
Matrix attention_column(const LossArgs& a) {
  Matrix q = read_matrix(a.q);
  Matrix k = read_matrix(a.k);
  AttentionResult r = cross_attention(q, k, Matrix(k.rows(), 1, 0.0), a.scale);
  if (a.token < 0 || static_cast<std::size_t>(a.token) >= k.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "--token is outside the key rows");
  }
  std::size_t n = q.rows();
  std::size_t w = a.map_width > 0 ? static_cast<std::size_t>(a.map_width) : n;
  if (n % w != 0) {
    throw Error(ErrorCode::kShapeMismatch, "query count is not a multiple of --map-width");
  }
  Matrix map(n / w, w);
  for (std::size_t i = 0; i < n; ++i) map.data()[i] = r.attention(i, a.token);
  return map;
}

void run_loss(const LossArgs& a, std::ostream& out) {
  LossNormalization norm =
      a.region_normalized ? LossNormalization::kRegion : LossNormalization::kAllCells;

  double l_e = 0.0;
  if (!a.attn.empty() || !a.q.empty()) {
    if (a.mask.empty()) throw Error(ErrorCode::kInvalidArgument, "--mask is required");
    Matrix attention = a.attn.empty() ? attention_column(a) : read_matrix(a.attn);
    l_e = localization_loss(attention, mask_matrix(a.mask, attention), norm);
  }

  if (a.part_attn.size() != a.part_mask.size()) {
    throw Error(ErrorCode::kInvalidArgument, "--part-attn and --part-mask must pair up");
  }
  std::vector<Matrix> attns, masks;
  attns.reserve(a.part_attn.size());
  masks.reserve(a.part_attn.size());
  for (std::size_t i = 0; i < a.part_attn.size(); ++i) {
    attns.push_back(read_matrix(a.part_attn[i]));
    masks.push_back(mask_matrix(a.part_mask[i], attns.back()));
  }
  std::vector<AttentionMaskPair> pairs;
  for (std::size_t i = 0; i < attns.size(); ++i) pairs.push_back({&attns[i], &masks[i]});
  double l_b = part_localization_loss(pairs, norm);

  double l_sd = a.l_sd.value_or(0.0);
  if (!a.eps.empty()) {
    l_sd = noise_mse(read_matrix(a.eps), read_matrix(a.eps_hat));
  }

  LossBreakdown b = total_loss(l_sd, l_b, l_e, a.lambda1, a.lambda2);
  write_or_print(a.out, loss_breakdown_json(b) + "\n", out);
}

struct CurateArgs {
  std::string in = "-";
  std::string out, stats;
  CurationConfig cfg;
};

void run_curate(const CurateArgs& a, std::ostream& out) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (a.in != "-") {
    file.open(a.in, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIoError, a.in + ": cannot open for reading");
    in = &file;
  }
  CurationStats stats;
  if (a.out.empty() || a.out == "-") {
    stats = curate_manifest(*in, out, a.cfg);
  } else {
    std::ofstream accepted = open_output(a.out);
    stats = curate_manifest(*in, accepted, a.cfg);
    if (!accepted) throw Error(ErrorCode::kIoError, a.out + ": write failed");
  }
  if (in->bad()) throw Error(ErrorCode::kIoError, a.in + ": read failed");
  if (!a.stats.empty()) {
    io::write_text_file(a.stats, stats.to_json() + "\n");
  } else if (!a.out.empty() && a.out != "-") {
    out << stats.to_json() << '\n';
  }
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  bool json_errors = std::find(args.begin(), args.end(), "--json-errors") != args.end();

  CLI::App app{"Human image editing primitives", "humanedit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.add_flag("--json-errors", json_errors, "Emit errors as JSON on stderr");
  app.require_subcommand(1);

  WarpDenseArgs wd;
  auto* c_wd = app.add_subcommand("warp-dense", "Repose a texture through dense-pose UV space");
  c_wd->add_option("--src", wd.src, "Source PNG")->required();
  c_wd->add_option("--src-pose", wd.src_pose, "Source IUV PNG")->required();
  c_wd->add_option("--tgt-pose", wd.tgt_pose, "Target IUV PNG")->required();
  c_wd->add_option("--src-valid", wd.src_valid, "Mask of source pixels to sample");
  c_wd->add_option("--out-tex", wd.out_tex, "Output texture PNG")->required();
  c_wd->add_option("--out-mask", wd.out_mask, "Output visibility mask PNG")->required();
  c_wd->add_option("--atlas-res", wd.options.atlas_resolution, "UV atlas resolution")
      ->capture_default_str();
  c_wd->add_option("--fill-iters", wd.options.fill_iterations, "Hole-fill iterations")
      ->capture_default_str();
  c_wd->add_option("--fill-weight", wd.options.fill_weight, "Weight of filled texels")
      ->capture_default_str();
  c_wd->add_option("--vis-threshold", wd.options.visibility_threshold,
                   "Coverage needed for visibility")
      ->capture_default_str();

  WarpSparseArgs ws;
  auto* c_ws = app.add_subcommand("warp-sparse", "Warp a garment onto body keypoints");
  c_ws->add_option("--garment", ws.garment, "Garment PNG")->required();
  c_ws->add_option("--garment-mask", ws.garment_mask, "Garment mask PNG")->required();
  c_ws->add_option("--garment-kps", ws.garment_kps, "Garment landmark JSON")->required();
  c_ws->add_option("--body-kps", ws.body_kps, "Body keypoint JSON")->required();
  c_ws->add_option("--out-tex", ws.out_tex, "Output texture PNG")->required();
  c_ws->add_option("--out-mask", ws.out_mask, "Output mask PNG")->required();
  c_ws->add_option("--width", ws.width, "Output width (0: garment width)");
  c_ws->add_option("--height", ws.height, "Output height (0: garment height)");
  c_ws->add_option("--min-score", ws.min_score, "Landmark score floor")->capture_default_str();
  c_ws->add_option("--homography", ws.homography, "Write the homography as JSON");

  BgExtractArgs bg;
  auto* c_bg = app.add_subcommand("bg-extract", "Blank the pose regions of an image");
  c_bg->add_option("--image", bg.image, "Input PNG")->required();
  c_bg->add_option("--src-kps", bg.src_kps, "Source keypoint JSON");
  c_bg->add_option("--tgt-kps", bg.tgt_kps, "Target keypoint JSON");
  c_bg->add_option("--out", bg.out, "Output PNG")->required();
  c_bg->add_option("--margin", bg.options.margin, "Box margin")->capture_default_str();
  c_bg->add_option("--fill", bg.options.fill, "Fill value")->capture_default_str();
  c_bg->add_option("--min-score", bg.options.min_score, "Keypoint score floor")
      ->capture_default_str();

  RenderPoseArgs rp;
  auto* c_rp = app.add_subcommand("render-pose", "Rasterize a skeleton or IUV map");
  auto* o_kps = c_rp->add_option("--kps", rp.kps, "Keypoint JSON");
  auto* o_dp = c_rp->add_option("--densepose", rp.densepose, "IUV PNG");
  o_kps->excludes(o_dp);
  c_rp->add_option("--width", rp.width, "Output width");
  c_rp->add_option("--height", rp.height, "Output height");
  c_rp->add_option("--out", rp.out, "Output PNG")->required();
  c_rp->add_option("--min-score", rp.min_score, "Keypoint score floor")->capture_default_str();

  PackArgs pk;
  auto* c_pk = app.add_subcommand("pack", "Stack texture, pose and background into a tensor");
  c_pk->add_option("--tex", pk.tex, "Texture image (zeros when omitted)");
  c_pk->add_option("--pose", pk.pose, "Pose image")->required();
  c_pk->add_option("--bg", pk.bg, "Background image")->required();
  c_pk->add_option("--out", pk.out, "Output tensor file")->required();
  c_pk->add_flag("--float-io", pk.float_io, "Inputs are 3-channel tensor files");

  RemoveGarmentArgs rg;
  auto* c_rg = app.add_subcommand("remove-garment", "Gray out a garment region");
  c_rg->add_option("--image", rg.image, "Input PNG")->required();
  c_rg->add_option("--mask", rg.mask, "Garment mask PNG")->required();
  c_rg->add_option("--out", rg.out, "Output PNG")->required();
  c_rg->add_option("--fill", rg.fill, "Fill value")->capture_default_str();

  AugmentArgs ag;
  auto* c_ag = app.add_subcommand("augment", "Rotate and flip each body part");
  c_ag->add_option("--image", ag.image, "Input PNG")->required();
  c_ag->add_option("--seg", ag.seg, "Part segmentation PNG")->required();
  c_ag->add_option("--seed", ag.seed, "Random seed")->required();
  c_ag->add_option("--out", ag.out, "Output PNG")->required();

  AttnArgs at;
  auto* c_at = app.add_subcommand("attn", "Cross-attention on tensor files");
  c_at->add_option("--q", at.q, "Queries (n x d)")->required();
  c_at->add_option("--k", at.k, "Keys (m x d)")->required();
  c_at->add_option("--v", at.v, "Values (m x c)")->required();
  c_at->add_option("--out-output", at.out_output, "Output tensor (n x c)")->required();
  c_at->add_option("--out-map", at.out_map, "Attention tensor (n x m)")->required();
  c_at->add_option("--scale", at.scale, "Logit scale (default 1/sqrt(d))");

  LossArgs ls;
  auto* c_ls = app.add_subcommand("loss", "Combined training loss breakdown");
  auto* o_attn = c_ls->add_option("--attn", ls.attn, "Attention map tensor for the E term");
  auto* o_q = c_ls->add_option("--q", ls.q, "Queries; the map is the --token column");
  o_attn->excludes(o_q);
  c_ls->add_option("--k", ls.k, "Keys")->needs(o_q);
  c_ls->add_option("--token", ls.token, "Key row whose attention is constrained");
  c_ls->add_option("--map-width", ls.map_width, "Width of the query grid");
  c_ls->add_option("--mask", ls.mask, "Mask PNG for the E term");
  c_ls->add_option("--part-attn", ls.part_attn, "Per-part attention tensor (repeatable)");
  c_ls->add_option("--part-mask", ls.part_mask, "Per-part mask PNG (repeatable)");
  auto* o_eps = c_ls->add_option("--eps", ls.eps, "Noise tensor");
  auto* o_eps_hat = c_ls->add_option("--eps-hat", ls.eps_hat, "Predicted noise tensor");
  o_eps->needs(o_eps_hat);
  o_eps_hat->needs(o_eps);
  c_ls->add_option("--l-sd", ls.l_sd, "Precomputed denoising loss")->excludes(o_eps);
  c_ls->add_option("--lambda1", ls.lambda1, "Weight of the part term")->capture_default_str();
  c_ls->add_option("--lambda2", ls.lambda2, "Weight of the E term")->capture_default_str();
  c_ls->add_flag("--region-normalized,!--no-region-normalized", ls.region_normalized,
                 "Normalize each mean by its own region (default on)");
  c_ls->add_option("--scale", ls.scale, "Logit scale when using --q/--k");
  c_ls->add_option("--out", ls.out, "Output JSON (default stdout)");

  CurateArgs cu;
  auto* c_cu = app.add_subcommand("curate", "Filter an annotation manifest");
  c_cu->add_option("--in", cu.in, "Input JSONL, '-' for stdin")->capture_default_str();
  c_cu->add_option("--out", cu.out, "Accepted JSONL (default stdout)");
  c_cu->add_option("--stats", cu.stats, "Statistics JSON");
  c_cu->add_option("--min-side", cu.cfg.min_side, "Minimum image side")->capture_default_str();
  c_cu->add_option("--person-score", cu.cfg.person_score_floor, "Person box score floor")
      ->capture_default_str();
  c_cu->add_option("--face-score", cu.cfg.face_score_floor, "Face box score floor")
      ->capture_default_str();
  c_cu->add_option("--min-joints", cu.cfg.min_joints, "Minimum confident joints")
      ->capture_default_str();
  c_cu->add_option("--joint-conf", cu.cfg.joint_confidence, "Joint confidence floor")
      ->capture_default_str();
  c_cu->add_option("--max-occlusion", cu.cfg.max_occlusion_ratio, "Maximum occlusion ratio")
      ->capture_default_str();
  c_cu->add_option("--min-clothing", cu.cfg.min_clothing_ratio, "Minimum clothing ratio")
      ->capture_default_str();
  c_cu->add_option("--min-clip", cu.cfg.min_clip_similarity,
                   "CLIP similarity must exceed this")
      ->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("humanedit");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, json_errors, "InvalidArgument", "argument", e.what(), kExitArgument);
    return kExitArgument;
  }

  try {
    if (c_wd->parsed()) run_warp_dense(wd);
    else if (c_ws->parsed()) run_warp_sparse(ws);
    else if (c_bg->parsed()) run_bg_extract(bg);
    else if (c_rp->parsed()) run_render_pose(rp);
    else if (c_pk->parsed()) run_pack(pk);
    else if (c_rg->parsed()) run_remove_garment(rg);
    else if (c_ag->parsed()) run_augment(ag);
    else if (c_at->parsed()) run_attn(at);
    else if (c_ls->parsed()) run_loss(ls, out);
    else if (c_cu->parsed()) run_curate(cu, out);
  } catch (const Error& e) {
    int status = exit_status(e.code());
    report_error(err, json_errors, error_code_name(e.code()),
                 category_name(error_category(e.code())), e.what(), status);
    return status;
  } catch (const std::exception& e) {
    report_error(err, json_errors, "Internal", "data", e.what(), kExitData);
    return kExitData;
  }
  return kExitOk;
}

}  // namespace humanedit::cli
