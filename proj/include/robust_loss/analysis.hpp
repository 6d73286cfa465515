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

// Closed-form shape properties of rho. Quantities that are unbounded for a
// given alpha are reported as std::nullopt.

#include <cmath>
#include <optional>

#include "robust_loss/params.hpp"

namespace robust_loss {

/// |x| where the curvature changes sign and the loss starts to re-descend:
/// c * sqrt((alpha - 2) / (alpha - 1)) for alpha < 1, exactly c for
/// alpha = -inf, none for alpha >= 1.
inline std::optional<double> redescend_point(const LossParams& p) {
  const double c = p.c.value();
  if (p.alpha.is_neg_inf()) return c;
  const double a = p.alpha.value();
  if (a >= 1.0) return std::nullopt;
  return c * std::sqrt((a - 2.0) / (a - 1.0));
}

/// sup_x rho(x): (alpha - 2) / alpha for alpha < 0, 1 for alpha = -inf.
inline std::optional<double> loss_supremum(const LossParams& p) {
  if (p.alpha.is_neg_inf()) return 1.0;
  const double a = p.alpha.value();
  if (a >= 0.0) return std::nullopt;
  return (a - 2.0) / a;
}

/// sup_x d rho/dx, reached at the redescend point for alpha < 1.
inline std::optional<double> gradient_bound(const LossParams& p) {
  const double c = p.c.value();
  if (p.alpha.is_neg_inf()) return std::exp(-0.5) / c;
  const double a = p.alpha.value();
  if (a > 1.0) return std::nullopt;
  // The closed form is 0 * log(inf) at alpha = 1; its limit is 1/c, the
  // asymptote of the alpha = 1 gradient.
  if (a == 1.0) return 1.0 / c;
  return std::pow((a - 2.0) / (a - 1.0), (a - 1.0) / 2.0) / c;
}

/// Upper bound 1/c^2 on d2 rho/dx2, attained at x = 0. Useful as a Jacobi
/// preconditioner entry. Only valid for alpha <= 2: above that the curvature
/// grows with |x| without bound.
inline std::optional<double> curvature_bound(const LossParams& p) {
  if (p.alpha > PowerParam(2.0)) return std::nullopt;
  const double c = p.c.value();
  return 1.0 / (c * c);
}

}  // namespace robust_loss
