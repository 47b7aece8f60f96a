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

#include "synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace humanedit::testing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bent(double t, double bend) { return t + bend * std::sin(kTwoPi * t) / kTwoPi; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void place_rows(std::vector<PartRegion>& layout, int size, std::mt19937_64& rng) {
  int min_width = (2 * size + 2) / 3;
  int half = size / 2;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    PartRegion& r = layout[i];
    r.width = uniform_int(rng, min_width, size);
    r.x0 = uniform_int(rng, 0, size - r.width);
    r.y0 = i == 0 ? 0 : half;
    r.height = i == 0 ? half : size - half;
    r.bend = uniform(rng, -0.3, 0.3);
  }
}

}  // namespace

Image random_image(int width, int height, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  Image img(width, height, channels);
  for (float& v : img.data()) v = dist(rng);
  return img;
}

DensePoseMap rasterize_parts(int width, int height, const std::vector<PartRegion>& parts) {
  DensePoseMap pose(width, height);
  for (const PartRegion& r : parts) {
    for (int y = r.y0; y < r.y0 + r.height; ++y) {
      for (int x = r.x0; x < r.x0 + r.width; ++x) {
        double s = bent(static_cast<double>(x - r.x0) / (r.width - 1), r.bend);
        double t = static_cast<double>(y - r.y0) / (r.height - 1);
        double u = r.swap_uv ? t : s;
        double v = r.swap_uv ? s : t;
        if (r.flip_u) u = 1.0 - u;
        if (r.flip_v) v = 1.0 - v;
        pose.set(x, y, r.part, static_cast<float>(u), static_cast<float>(v));
      }
    }
  }
  return pose;
}

std::vector<PartRegion> random_layout(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> ids(kDensePoseParts);
  for (int i = 0; i < kDensePoseParts; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<PartRegion> layout(2);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    layout[i].part = ids[i];
    layout[i].swap_uv = (rng() & 1) != 0;
    layout[i].flip_u = (rng() & 1) != 0;
    layout[i].flip_v = (rng() & 1) != 0;
  }
  place_rows(layout, size, rng);
  return layout;
}

std::vector<PartRegion> relayout(const std::vector<PartRegion>& layout, int size,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PartRegion> out = layout;
  if ((rng() & 1) != 0) std::reverse(out.begin(), out.end());
  place_rows(out, size, rng);
  return out;
}

Image surface_texture(const DensePoseMap& pose, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Wave {
    double a, b, phase;
  };
  std::vector<std::array<Wave, 3>> waves(kDensePoseParts + 1);
  for (auto& part : waves) {
    for (Wave& w : part) {
      w = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, 0.0, kTwoPi)};
    }
  }
  Image img(pose.width(), pose.height(), 3);
  std::uniform_real_distribution<float> noise(0.0f, 1.0f);
  for (int y = 0; y < pose.height(); ++y) {
    for (int x = 0; x < pose.width(); ++x) {
      const auto& s = pose.at(x, y);
      for (int c = 0; c < 3; ++c) {
        if (s.part == 0) {
          img.at(x, y, c) = noise(rng);
          continue;
        }
        const Wave& w = waves[s.part][static_cast<std::size_t>(c)];
        img.at(x, y, c) = static_cast<float>(
            0.5 + 0.15 * std::sin(kTwoPi * (w.a * s.u + w.b * s.v) + w.phase));
      }
    }
  }
  return img;
}

PoseFixture pose_fixture(int size, std::uint64_t seed) {
  PoseFixture f;
  f.layout = random_layout(size, seed);
  f.pose = rasterize_parts(size, size, f.layout);
  f.image = surface_texture(f.pose, seed ^ 0x9E3779B97F4A7C15ULL);
  return f;
}

PartSegmentation random_segmentation(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PartSegmentation seg(width, height);
  int count = uniform_int(rng, 2, 4);
  for (int i = 0; i < count; ++i) {
    int label = uniform_int(rng, 1, kPartLabelCount - 1);
    int w = uniform_int(rng, std::max(2, width / 6), std::max(2, width / 2));
    int h = uniform_int(rng, std::max(2, height / 6), std::max(2, height / 2));
    int x0 = uniform_int(rng, 0, width - w);
    int y0 = uniform_int(rng, 0, height - h);
    for (int y = y0; y < y0 + h; ++y) {
      for (int x = x0; x < x0 + w; ++x) seg.set(x, y, label);
    }
  }
  return seg;
}

KeypointSet standing_figure(int width, int height) {
  // Normalized joint positions, COCO-18 order.
  static constexpr std::array<std::array<double, 2>, 18> kPose = {{
      {0.50, 0.12}, {0.50, 0.22}, {0.38, 0.22}, {0.33, 0.38}, {0.30, 0.52},
      {0.62, 0.22}, {0.67, 0.38}, {0.70, 0.52}, {0.42, 0.52}, {0.41, 0.72},
      {0.40, 0.92}, {0.58, 0.52}, {0.59, 0.72}, {0.60, 0.92}, {0.47, 0.10},
      {0.53, 0.10}, {0.44, 0.11}, {0.56, 0.11},
  }};
  KeypointSet kps;
  auto names = skeleton_joint_names();
  for (std::size_t i = 0; i < kPose.size(); ++i) {
    kps.add({std::string(names[i]), kPose[i][0] * (width - 1), kPose[i][1] * (height - 1), 1.0});
  }
  return kps;
}

KeypointSet garment_landmarks(int width, int height, double inset) {
  double x0 = inset;
  double y0 = inset;
  double x1 = width - 1 - inset;
  double y1 = height - 1 - inset;
  KeypointSet kps;
  kps.add({"right_shoulder", x0 + 0.2 * (x1 - x0), y0, 1.0});
  kps.add({"left_shoulder", x0 + 0.8 * (x1 - x0), y0, 1.0});
  kps.add({"right_hip", x0 + 0.25 * (x1 - x0), y1, 1.0});
  kps.add({"left_hip", x0 + 0.75 * (x1 - x0), y1, 1.0});
  kps.add({"top_right_corner", x0, y0 + 0.1 * (y1 - y0), 1.0});
  kps.add({"top_left_corner", x1, y0 + 0.1 * (y1 - y0), 1.0});
  kps.add({"bottom_right_corner", x0, y1 - 0.05 * (y1 - y0), 1.0});
  kps.add({"bottom_left_corner", x1, y1 - 0.05 * (y1 - y0), 1.0});
  return kps;
}

KeypointSet map_keypoints(const KeypointSet& kps, const Homography& h) {
  KeypointSet out;
  for (const Keypoint& k : kps.points()) {
    Point2 p = h.apply({k.x, k.y});
    out.add({k.name, p.x, p.y, k.score});
  }
  return out;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo,
                     double hi) {
  Matrix m(rows, cols);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

std::string random_annotation_line(std::mt19937_64& rng, int index) {
  auto chance = [&](double p) { return uniform(rng, 0.0, 1.0) < p; };
  nlohmann::json r;
  r["id"] = "rec" + std::to_string(index);
  int w = uniform_int(rng, 400, 900);
  int h = uniform_int(rng, 400, 900);
  if (!chance(0.05)) r["width"] = w;
  if (!chance(0.05)) r["height"] = h;
  auto box = [&](double score) {
    double bw = uniform(rng, 20, w * 0.8), bh = uniform(rng, 20, h * 0.8);
    return nlohmann::json::array(
        {uniform(rng, -10, w - bw), uniform(rng, -10, h - bh), bw, bh, score});
  };
  nlohmann::json persons = nlohmann::json::array();
  int n_persons = chance(0.7) ? 1 : uniform_int(rng, 0, 3);
  for (int i = 0; i < n_persons; ++i) persons.push_back(box(uniform(rng, 0.3, 1.0)));
  if (!chance(0.05)) r["person_boxes"] = persons;
  if (!chance(0.05)) {
    nlohmann::json faces = nlohmann::json::array();
    if (!persons.empty() && chance(0.7)) {
      const auto& p = persons[0];
      double px = p[0].get<double>(), py = p[1].get<double>();
      double pw = p[2].get<double>(), ph = p[3].get<double>();
      faces.push_back({px + pw * 0.3, py + ph * 0.05, pw * 0.3, ph * 0.15,
                       uniform(rng, 0.3, 1.0)});
    }
    int n = uniform_int(rng, 0, 1);
    for (int i = 0; i < n; ++i) faces.push_back(box(uniform(rng, 0.3, 1.0)));
    r["face_boxes"] = faces;
  }
  if (!chance(0.05)) {
    nlohmann::json kps = nlohmann::json::array();
    auto names = skeleton_joint_names();
    for (const auto& name : names) {
      kps.push_back({{"name", std::string(name)},
                     {"x", uniform(rng, 0, w)},
                     {"y", uniform(rng, 0, h)},
                     {"score", uniform(rng, 0.0, 1.0)}});
    }
    r["keypoints"] = kps;
  }
  double area = uniform(rng, 0, 4e5);
  if (!chance(0.05)) r["person_mask_area"] = area;
  if (!chance(0.05)) r["other_instance_overlap_area"] = area * uniform(rng, 0.0, 0.12);
  if (!chance(0.05)) r["clothing_pixel_area"] = area * uniform(rng, 0.0, 0.3);
  r["caption"] = "a person";
  if (!chance(0.05)) r["clip_similarity"] = uniform(rng, 0.1, 0.4);
  return r.dump();
}

CurationConfig tighten(const CurationConfig& base, std::mt19937_64& rng) {
  CurationConfig c = base;
  auto maybe = [&] { return (rng() & 1) != 0; };
  if (maybe()) c.min_side += uniform_int(rng, 1, 300);
  if (maybe()) c.face_score_floor += uniform(rng, 0.0, 0.4);
  if (maybe()) c.min_joints += uniform_int(rng, 1, 6);
  if (maybe()) c.joint_confidence += uniform(rng, 0.0, 0.5);
  if (maybe()) c.max_occlusion_ratio *= uniform(rng, 0.2, 1.0);
  if (maybe()) c.min_clothing_ratio += uniform(rng, 0.0, 0.15);
  if (maybe()) c.min_clip_similarity += uniform(rng, 0.0, 0.15);
  return c;
}

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(HUMANEDIT_FIXTURE_DIR) / name;
}

double max_abs_diff(const Image& a, const Image& b, const Mask& where) {
  double worst = 0.0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!where.at(x, y)) continue;
      for (int c = 0; c < a.channels(); ++c) {
        worst = std::max(worst, static_cast<double>(std::fabs(a.at(x, y, c) - b.at(x, y, c))));
      }
    }
  }
  return worst;
}

double psnr(const Image& a, const Image& b, const Mask& where) {
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!where.at(x, y)) continue;
      for (int c = 0; c < a.channels(); ++c) {
        double d = static_cast<double>(a.at(x, y, c)) - b.at(x, y, c);
        sum += d * d;
        ++n;
      }
    }
  }
  if (n == 0) return 0.0;
  double mse = sum / static_cast<double>(n);
  return mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
}

TempDir::TempDir() {
  std::random_device rd;
  auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("humanedit-test-" + std::to_string(rd()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace humanedit::testing
