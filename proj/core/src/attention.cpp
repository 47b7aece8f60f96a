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

#include "humanedit/attention.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "humanedit/error.hpp"
#include "json.hpp"

namespace humanedit {

namespace {

void check_finite(std::span<const double> data) {
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "matrix entries must be finite");
    }
  }
}

struct RegionStats {
  std::size_t inside = 0;
  std::size_t outside = 0;
};

RegionStats region_stats(const Matrix& attention, const Matrix& mask) {
  if (!attention.same_shape(mask)) {
    throw Error(ErrorCode::kShapeMismatch,
                "attention map is " + std::to_string(attention.rows()) + "x" +
                    std::to_string(attention.cols()) + " but mask is " +
                    std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()));
  }
  RegionStats s;
  for (double m : mask.data()) {
    if (m == 1.0) {
      ++s.inside;
    } else if (m == 0.0) {
      ++s.outside;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "localization mask must be binary");
    }
  }
  return s;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  check_finite({&fill, 1});
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kShapeMismatch, "matrix data length does not match rows*cols");
  }
  check_finite(data_);
}

Matrix matrix_from_tensor(const Tensor3& t) {
  if (t.channels != 1 || t.data.size() != t.size()) {
    throw Error(ErrorCode::kShapeMismatch, "matrix tensors must have exactly one channel");
  }
  return Matrix(t.height, t.width, std::vector<double>(t.data.begin(), t.data.end()));
}

Tensor3 matrix_to_tensor(const Matrix& m) {
  Tensor3 t{static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols()), 1, {}};
  t.data.reserve(m.size());
  for (double v : m.data()) t.data.push_back(static_cast<float>(v));
  return t;
}

Matrix matrix_from_mask(const Mask& mask) {
  Matrix m(static_cast<std::size_t>(mask.height()), static_cast<std::size_t>(mask.width()));
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      m(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = mask.at(x, y);
    }
  }
  return m;
}

AttentionResult cross_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                                std::optional<double> scale) {
  if (q.cols() != k.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "query and key dimensions differ");
  }
  if (k.rows() != v.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "key and value counts differ");
  }
  if (k.rows() == 0 || q.cols() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "attention needs at least one key of nonzero width");
  }
  const double s = scale.value_or(1.0 / std::sqrt(static_cast<double>(q.cols())));
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidArgument, "attention scale must be positive");
  }

  const std::size_t n = q.rows();
  const std::size_t m = k.rows();
  const std::size_t d = q.cols();

  // Reductions run over keys in lexicographic (k, v) order, so permuting the
  // key/value rows permutes the attention columns bit for bit.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = k.row(a), kb = k.row(b);
    if (!std::equal(ka.begin(), ka.end(), kb.begin())) {
      return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
    }
    const auto va = v.row(a), vb = v.row(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
  });

  AttentionResult r{Matrix(n, v.cols()), Matrix(n, m)};
  std::vector<double> logits(m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto qi = q.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      const auto kj = k.row(j);
      double dot = 0.0;
      for (std::size_t t = 0; t < d; ++t) dot += qi[t] * kj[t];
      logits[j] = s * dot;
    }
    const double peak = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    for (std::size_t j : order) {
      logits[j] = std::exp(logits[j] - peak);
      denom += logits[j];
    }
    auto ai = r.attention.row(i);
    auto oi = r.output.row(i);
    for (std::size_t j : order) {
      ai[j] = logits[j] / denom;
      const auto vj = v.row(j);
      for (std::size_t c = 0; c < v.cols(); ++c) oi[c] += ai[j] * vj[c];
    }
  }
  return r;
}

double localization_loss(const Matrix& attention, const Matrix& mask, LossNormalization norm) {
  const RegionStats s = region_stats(attention, mask);
  // With both regions populated the means are taken about a common reference,
  // which cancels in the difference; a uniform map then scores exactly 0.
  const bool centered = norm == LossNormalization::kRegion && s.inside && s.outside;
  const double ref = centered ? attention.data()[0] : 0.0;
  double in_sum = 0.0;
  double out_sum = 0.0;
  for (std::size_t i = 0; i < attention.size(); ++i) {
    if (mask.data()[i] == 1.0) {
      in_sum += attention.data()[i] - ref;
    } else {
      out_sum += attention.data()[i] - ref;
    }
  }
  if (norm == LossNormalization::kAllCells) {
    const auto cells = static_cast<double>(attention.size());
    return cells == 0 ? 0.0 : out_sum / cells - in_sum / cells;
  }
  const double outside = s.outside ? out_sum / static_cast<double>(s.outside) : 0.0;
  const double inside = s.inside ? in_sum / static_cast<double>(s.inside) : 0.0;
  return outside - inside;
}

Matrix localization_loss_grad(const Matrix& attention, const Matrix& mask,
                              LossNormalization norm) {
  const RegionStats s = region_stats(attention, mask);
  double in_grad = 0.0;
  double out_grad = 0.0;
  if (norm == LossNormalization::kAllCells) {
    const auto cells = static_cast<double>(attention.size());
    in_grad = -1.0 / cells;
    out_grad = 1.0 / cells;
  } else {
    if (s.inside) in_grad = -1.0 / static_cast<double>(s.inside);
    if (s.outside) out_grad = 1.0 / static_cast<double>(s.outside);
  }
  Matrix g(attention.rows(), attention.cols());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.data()[i] = mask.data()[i] == 1.0 ? in_grad : out_grad;
  }
  return g;
}

double part_localization_loss(std::span<const AttentionMaskPair> parts,
                              LossNormalization norm) {
  double total = 0.0;
  for (const auto& p : parts) total += localization_loss(*p.attention, *p.mask, norm);
  return total;
}

double noise_mse(std::span<const double> eps, std::span<const double> eps_hat) {
  if (eps.size() != eps_hat.size()) {
    throw Error(ErrorCode::kShapeMismatch, "noise tensors differ in size");
  }
  if (eps.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double d = eps[i] - eps_hat[i];
    sum += d * d;
  }
  return sum / static_cast<double>(eps.size());
}

double noise_mse(const Matrix& eps, const Matrix& eps_hat) {
  if (!eps.same_shape(eps_hat)) {
    throw Error(ErrorCode::kShapeMismatch, "noise tensors differ in shape");
  }
  return noise_mse(eps.data(), eps_hat.data());
}

LossBreakdown total_loss(double l_sd, double l_b, double l_e, double lambda1,
                         double lambda2) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) {
    throw Error(ErrorCode::kInvalidWeight, "loss weights must be non-negative");
  }
  LossBreakdown b;
  b.l_sd = l_sd;
  b.l_b = l_b;
  b.l_e = l_e;
  b.lambda1 = lambda1;
  b.lambda2 = lambda2;
  b.total = l_sd + lambda1 * l_b + lambda2 * l_e;
  return b;
}

std::string loss_breakdown_json(const LossBreakdown& b) {
  nlohmann::json j = {{"l_sd", b.l_sd},       {"l_b", b.l_b},
                      {"l_e", b.l_e},         {"lambda1", b.lambda1},
                      {"lambda2", b.lambda2}, {"total", b.total}};
  return j.dump(2);
}

}  // namespace humanedit
