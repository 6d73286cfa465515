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

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "robust_loss/errors.hpp"

namespace robust_loss {

/// Shape parameter alpha of the loss. Either a finite real or negative
/// infinity; NaN and +inf are rejected on construction.
class PowerParam {
 public:
  constexpr PowerParam() = default;

  /* implicit */ PowerParam(double value) : value_(value) {  // NOLINT
    if (std::isnan(value)) throw InvalidInput("alpha must not be NaN");
    if (value == std::numeric_limits<double>::infinity()) {
      throw InvalidInput("alpha must not be +inf");
    }
  }

  static PowerParam neg_inf() { return PowerParam(-std::numeric_limits<double>::infinity()); }

  constexpr double value() const { return value_; }
  constexpr bool is_neg_inf() const { return value_ == -std::numeric_limits<double>::infinity(); }
  constexpr bool is_finite() const { return !is_neg_inf(); }

  friend constexpr bool operator==(PowerParam a, PowerParam b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(PowerParam a, PowerParam b) {
    // Never NaN, so the partial order is total here.
    return a.value_ < b.value_   ? std::strong_ordering::less
           : a.value_ > b.value_ ? std::strong_ordering::greater
                                 : std::strong_ordering::equal;
  }

 private:
  double value_ = 2.0;
};

/// Positive, finite residual scale c.
class Scale {
 public:
  constexpr Scale() = default;

  /* implicit */ Scale(double c) : c_(c) {  // NOLINT
    if (!std::isfinite(c) || !(c > 0.0)) {
      throw InvalidInput("scale c must be finite and > 0, got " + std::to_string(c));
    }
  }

  constexpr double value() const { return c_; }

  friend constexpr bool operator==(Scale a, Scale b) { return a.c_ == b.c_; }

 private:
  double c_ = 1.0;
};

struct LossParams {
  PowerParam alpha;
  Scale c;

  friend bool operator==(const LossParams&, const LossParams&) = default;
};

}  // namespace robust_loss
