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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "humanedit/image.hpp"
#include "humanedit/tensor_file.hpp"

namespace humanedit {

/// Dense row-major matrix of finite doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Single-channel tensor (height = rows, width = cols) conversions.
Matrix matrix_from_tensor(const Tensor3& t);
Tensor3 matrix_to_tensor(const Matrix& m);

Matrix matrix_from_mask(const Mask& m);

struct AttentionResult {
  Matrix output;     // n x c
  Matrix attention;  // n x m, rows sum to 1
};

/// softmax(scale * Q K^T) V with a max-subtracted row softmax. `scale`
/// defaults to 1/sqrt(d); pass 1 for the unscaled form.
AttentionResult cross_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                                std::optional<double> scale = std::nullopt);

enum class LossNormalization {
  /// Each mean is taken over its own region (outside / inside the mask).
  kRegion,
  /// Both means are taken over all cells.
  kAllCells,
};

/// mean(A over outside M) - mean(A over inside M). An empty region
/// contributes 0. M must be binary; A non-negative.
double localization_loss(const Matrix& attention, const Matrix& mask,
                         LossNormalization norm = LossNormalization::kRegion);

/// d loss / d A. The loss is affine in A, so the gradient depends only on M.
Matrix localization_loss_grad(const Matrix& attention, const Matrix& mask,
                              LossNormalization norm = LossNormalization::kRegion);

struct AttentionMaskPair {
  const Matrix* attention;
  const Matrix* mask;
};

/// Sum of localization_loss over parts.
double part_localization_loss(std::span<const AttentionMaskPair> parts,
                              LossNormalization norm = LossNormalization::kRegion);

/// Mean squared difference between ground-truth and predicted noise.
double noise_mse(std::span<const double> eps, std::span<const double> eps_hat);
double noise_mse(const Matrix& eps, const Matrix& eps_hat);

inline constexpr double kDefaultLambda1 = 1e-3;
inline constexpr double kDefaultLambda2 = 2.5e-4;

struct LossBreakdown {
  double l_sd = 0.0;
  double l_b = 0.0;
  double l_e = 0.0;
  double lambda1 = kDefaultLambda1;
  double lambda2 = kDefaultLambda2;
  double total = 0.0;
};

/// l_sd + lambda1 * l_b + lambda2 * l_e. Negative weights throw InvalidWeight.
LossBreakdown total_loss(double l_sd, double l_b, double l_e,
                         double lambda1 = kDefaultLambda1, double lambda2 = kDefaultLambda2);

std::string loss_breakdown_json(const LossBreakdown& b);

}  // namespace humanedit
