// Copyright 2026 The robust_loss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Seeded "contaminated line" benchmark used by the tests and the README.
//
// Generator, fully specified so the data is identical on every platform:
//   * engine: std::mt19937_64 seeded with `seed`
//   * uniform U in [0, 1): (engine() >> 11) * 2^-53
//   * for i = 0..n-1: x_i = x_max * U
//   * for i = 0..n-1: eps_i = sigma * sqrt(-2 log(1 - U1)) * cos(2 pi U2),
//     drawing U1 then U2 (Box-Muller, cosine half only)
//   * y_i = slope * x_i + intercept + eps_i
//   * outliers: partial Fisher-Yates over the index list 0..n-1; for
//     k = 0..n_outliers-1 swap position k with k + engine() % (n - k);
//     the first n_outliers indices get y += outlier_shift.
// Standard-library distributions are avoided because their output is
// implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "robust_loss/estimation.hpp"

namespace robust_loss::synthetic {

struct ContaminatedLineSpec {
  std::uint64_t seed = 42;
  int n = 100;
  double x_max = 10.0;
  double slope = 2.0;
  double intercept = 1.0;
  double sigma = 0.1;
  int n_outliers = 20;
  double outlier_shift = 50.0;
};

struct ContaminatedLine {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<bool> is_outlier;

  Dataset dataset() const {
    Eigen::MatrixXd features(static_cast<Eigen::Index>(x.size()), 1);
    Eigen::VectorXd targets(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      features(static_cast<Eigen::Index>(i), 0) = x[i];
      targets(static_cast<Eigen::Index>(i)) = y[i];
    }
    return Dataset(std::move(features), std::move(targets));
  }
};

inline ContaminatedLine contaminated_line(const ContaminatedLineSpec& spec = {}) {
  std::mt19937_64 engine(spec.seed);
  auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

  const auto n = static_cast<std::size_t>(spec.n);
  ContaminatedLine out;
  out.x.resize(n);
  out.y.resize(n);
  out.is_outlier.assign(n, false);
  for (auto& xi : out.x) xi = spec.x_max * uniform();
  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double eps = spec.sigma * std::sqrt(-2.0 * std::log(1.0 - u1)) *
                       std::cos(2.0 * std::numbers::pi * u2);
    out.y[i] = spec.slope * out.x[i] + spec.intercept + eps;
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t k = 0; k < static_cast<std::size_t>(spec.n_outliers) && k < n; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(engine() % (n - k));
    std::swap(order[k], order[j]);
    out.y[order[k]] += spec.outlier_shift;
    out.is_outlier[order[k]] = true;
  }
  return out;
}

}  // namespace robust_loss::synthetic
