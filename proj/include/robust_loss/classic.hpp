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

// Closed forms of the classical losses that rho reduces to. These are kept
// independent of loss.hpp and serve as reference oracles for it.

#include <array>
#include <cmath>
#include <string_view>

#include "robust_loss/errors.hpp"

namespace robust_loss::classic {

enum class ClassicLossId {
  kCharbonnier,
  kCharbonnierReparam,
  kGeneralizedCharbonnier,
  kL2HalfScaled,
  kL1Asymptote,
  kCauchy,
  kGemanMcClure,
  kWelsch,
};

inline constexpr std::array<ClassicLossId, 8> kAllClassicLosses = {
    ClassicLossId::kCharbonnier,   ClassicLossId::kCharbonnierReparam,
    ClassicLossId::kGeneralizedCharbonnier, ClassicLossId::kL2HalfScaled,
    ClassicLossId::kL1Asymptote,   ClassicLossId::kCauchy,
    ClassicLossId::kGemanMcClure,  ClassicLossId::kWelsch,
};

constexpr std::string_view name(ClassicLossId id) {
  switch (id) {
    case ClassicLossId::kCharbonnier: return "charbonnier";
    case ClassicLossId::kCharbonnierReparam: return "charbonnier_reparam";
    case ClassicLossId::kGeneralizedCharbonnier: return "generalized_charbonnier";
    case ClassicLossId::kL2HalfScaled: return "l2_half_scaled";
    case ClassicLossId::kL1Asymptote: return "l1_asymptote";
    case ClassicLossId::kCauchy: return "cauchy";
    case ClassicLossId::kGemanMcClure: return "geman_mcclure";
    case ClassicLossId::kWelsch: return "welsch";
  }
  return "unknown";
}

namespace detail {
inline void check(double x, double c) {
  if (!std::isfinite(x)) throw InvalidInput("x must be finite");
  if (!std::isfinite(c) || !(c > 0.0)) throw InvalidInput("c must be finite and > 0");
}
}  // namespace detail

/// sqrt(x^2 + c^2)
inline double charbonnier(double x, double c) {
  detail::check(x, c);
  return std::hypot(x, c);
}

/// c * sqrt((x/c)^2 + 1), the "L1-L2" / pseudo-Huber form.
inline double charbonnier_reparam(double x, double c) {
  detail::check(x, c);
  const double s = x / c;
  return c * std::sqrt(s * s + 1.0);
}

/// ((x/c)^2 + 1)^(alpha/2)
inline double generalized_charbonnier(double x, double alpha, double c) {
  detail::check(x, c);
  if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
  const double s = x / c;
  return std::pow(s * s + 1.0, alpha / 2.0);
}

/// Named limit forms that depend only on (x, c). The Charbonnier variants are
/// evaluated with alpha fixed to 1 for kGeneralizedCharbonnier.
inline double classic(ClassicLossId id, double x, double c) {
  detail::check(x, c);
  const double s = x / c;
  const double t = s * s;
  switch (id) {
    case ClassicLossId::kCharbonnier: return charbonnier(x, c);
    case ClassicLossId::kCharbonnierReparam: return charbonnier_reparam(x, c);
    case ClassicLossId::kGeneralizedCharbonnier: return generalized_charbonnier(x, 1.0, c);
    case ClassicLossId::kL2HalfScaled: return 0.5 * t;
    case ClassicLossId::kL1Asymptote: return std::abs(x) / c - 1.0;
    case ClassicLossId::kCauchy: return std::log(0.5 * t + 1.0);
    // Denominator as (x/c)^2 + 4, matching the alpha = -2 reduction.
    case ClassicLossId::kGemanMcClure: return 2.0 * t / (t + 4.0);
    case ClassicLossId::kWelsch: return 1.0 - std::exp(-0.5 * t);
  }
  throw InvalidInput("unknown classic loss id");
}

}  // namespace robust_loss::classic
