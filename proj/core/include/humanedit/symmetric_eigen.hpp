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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace humanedit {

template <std::size_t N>
struct SymmetricEigen {
  /// Ascending.
  std::array<double, N> values{};
  /// vectors[k] is the unit eigenvector for values[k].
  std::array<std::array<double, N>, N> vectors{};
  int sweeps = 0;
};

/// Cyclic Jacobi eigen-decomposition of a symmetric row-major N x N matrix.
/// Iterates until the off-diagonal Frobenius norm falls to
/// `tolerance * ||A||_F` or `max_sweeps` is reached.
template <std::size_t N>
SymmetricEigen<N> symmetric_eigen(std::array<double, N * N> a, double tolerance = 1e-12,
                                  int max_sweeps = 100) {
  auto at = [&a](std::size_t r, std::size_t c) -> double& { return a[r * N + c]; };
  std::array<double, N * N> v{};
  for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1.0;

  double norm = 0.0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  const double target = tolerance * norm;

  SymmetricEigen<N> result;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = 0; q < N; ++q) {
        if (p != q) off += at(p, q) * at(p, q);
      }
    }
    if (std::sqrt(off) <= target) break;
    result.sweeps = sweep + 1;

    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v[k * N + p];
          const double vkq = v[k * N + q];
          v[k * N + p] = c * vkp - s * vkq;
          v[k * N + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return at(i, i) < at(j, j); });
  for (std::size_t k = 0; k < N; ++k) {
    result.values[k] = at(order[k], order[k]);
    for (std::size_t i = 0; i < N; ++i) result.vectors[k][i] = v[i * N + order[k]];
  }
  return result;
}

}  // namespace humanedit
