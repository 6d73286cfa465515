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

// The general robust loss rho(x, alpha, c) together with its derivative
// (influence function psi), IRLS weight w = psi / x, and second derivative.
//
// With t = (x/c)^2 and z = max(1, 2 - alpha):
//
//   alpha == 0     rho = log(t/2 + 1)
//   alpha == -inf  rho = 1 - exp(-t/2)
//   otherwise      rho = (z/alpha) * ((t/z + 1)^(alpha/2) - 1)
//
// All kernels are templated on the scalar type so the same code path can be
// evaluated in extended precision (e.g. boost::multiprecision types found
// through ADL). The public API is used with double everywhere else.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "robust_loss/errors.hpp"
#include "robust_loss/params.hpp"

namespace robust_loss {

template <class Real>
concept RealScalar = !std::is_integral_v<Real> && requires(Real a, Real b) {
  { a + b };
  { a * b };
  { a / b };
};

/// Loss, gradient, weight and curvature at one point.
template <class Real = double>
struct BasicKernelEval {
  Real value{};
  Real gradient{};
  Real weight{};
  Real curvature{};
  /// The loss or weight exceeded the floating range and was returned as +inf.
  bool saturated = false;
};

using KernelEval = BasicKernelEval<double>;

/// z(alpha) = max(1, 2 - alpha). Undefined for alpha = -inf; the -inf branch
/// of every kernel bypasses it.
inline double z_of_alpha(PowerParam alpha) {
  if (alpha.is_neg_inf()) {
    throw ContractViolation("z_of_alpha is not defined for alpha = -inf");
  }
  return std::max(1.0, 2.0 - alpha.value());
}

namespace detail {

enum class Branch { kCauchy, kWelsch, kQuadratic, kGeneral };

// Exact-value dispatch. alpha == 2 is the pure quadratic; it is the general
// formula with z = 1, evaluated without the expm1/log1p round trip so that
// rho(x, 2, c) is exactly (x/c)^2 / 2.
inline Branch branch_of(PowerParam alpha) {
  if (alpha.is_neg_inf()) return Branch::kWelsch;
  if (alpha.value() == 0.0) return Branch::kCauchy;
  if (alpha.value() == 2.0) return Branch::kQuadratic;
  return Branch::kGeneral;
}

template <class Real>
void require_finite(const Real& x) {
  using std::isfinite;
  if (!isfinite(x)) throw InvalidInput("residual x must be finite");
}

template <class Real>
Real squared_ratio(const Real& x, const LossParams& p) {
  const Real s = x / Real(p.c.value());
  return s * s;
}

template <class Real>
Real inv_c2(const LossParams& p) {
  const Real c(p.c.value());
  return Real(1) / (c * c);
}

// (1/c^2) * unit weight; a vanished unit weight stays 0 even if 1/c^2 overflows.
template <class Real>
Real scaled_weight(const Real& unit, const LossParams& p) {
  if (unit == Real(0)) return Real(0);
  return inv_c2<Real>(p) * unit;
}

template <class Real>
Real value_from_t(const Real& t, const LossParams& p) {
  using std::expm1;
  using std::log1p;
  switch (branch_of(p.alpha)) {
    case Branch::kCauchy:
      return log1p(t / 2);
    case Branch::kWelsch:
      return -expm1(-t / 2);
    case Branch::kQuadratic:
      return t / 2;
    case Branch::kGeneral:
      break;
  }
  // (t/z + 1)^(alpha/2) - 1 == expm1(alpha/2 * log1p(t/z)), which keeps full
  // relative precision for small |alpha| and small t.
  const Real alpha(p.alpha.value());
  const Real z(z_of_alpha(p.alpha));
  return (z / alpha) * expm1((alpha / 2) * log1p(t / z));
}

// w / (1/c^2) as a function of t.
template <class Real>
Real unit_weight_from_t(const Real& t, const LossParams& p) {
  using std::exp;
  using std::log1p;
  switch (branch_of(p.alpha)) {
    case Branch::kCauchy:
      return Real(1) / (t / 2 + 1);
    case Branch::kWelsch:
      return exp(-t / 2);
    case Branch::kQuadratic:
      return Real(1);
    case Branch::kGeneral:
      break;
  }
  const Real alpha(p.alpha.value());
  const Real z(z_of_alpha(p.alpha));
  return exp((alpha / 2 - 1) * log1p(t / z));
}

// d2rho/dx2 = w * r(t), obtained by differentiating psi = x * w:
//
//   general (incl. alpha = 0 with z = 2), u = t/z:
//     psi' = (1/c^2) (u + 1)^(alpha/2 - 2) * (1 + (alpha - 1) u)
//     r    = (1 + (alpha - 1) u) / (1 + u)
//   alpha = -inf:
//     psi' = (1/c^2) exp(-t/2) * (1 - t)
//     r    = 1 - t
//
// r(0) = 1 exactly, so the curvature at the origin is exactly 1/c^2.
template <class Real>
Real curvature_factor(const Real& t, const LossParams& p) {
  const Branch b = branch_of(p.alpha);
  if (b == Branch::kQuadratic) return Real(1);
  if (b == Branch::kWelsch) return Real(1) - t;
  const Real alpha = b == Branch::kCauchy ? Real(0) : Real(p.alpha.value());
  const Real z = b == Branch::kCauchy ? Real(2) : Real(z_of_alpha(p.alpha));
  const Real u = t / z;
  if (u > Real(1)) {
    // Same ratio, rearranged so that u -> inf stays finite.
    return (alpha - 1) + (Real(2) - alpha) / (u + 1);
  }
  return (Real(1) + (alpha - 1) * u) / (u + 1);
}

template <class Real>
Real curvature_from(const Real& t, const Real& weight, const LossParams& p) {
  // exp(-t/2) underflows before (1 - t) overflows; 0 * -inf would be NaN.
  if (weight == Real(0)) return Real(0);
  return weight * curvature_factor(t, p);
}

}  // namespace detail

/// rho(x, alpha, c). Always >= 0 and exactly 0 at x = 0. Returns +inf when
/// the value leaves the floating range (only possible for alpha > 2).
template <RealScalar Real>
Real rho(const Real& x, const LossParams& p) {
  detail::require_finite(x);
  return detail::value_from_t(detail::squared_ratio(x, p), p);
}

/// IRLS weight w(x) = psi(x) / x, evaluated in closed form (defined at 0).
template <RealScalar Real>
Real weight(const Real& x, const LossParams& p) {
  detail::require_finite(x);
  return detail::scaled_weight(detail::unit_weight_from_t(detail::squared_ratio(x, p), p), p);
}

/// d rho / dx, computed as x * weight(x) so the two agree bit for bit.
template <RealScalar Real>
Real gradient(const Real& x, const LossParams& p) {
  return x * weight(x, p);
}

/// d2 rho / dx2. Bounded above by 1/c^2, attained at x = 0.
template <RealScalar Real>
Real curvature(const Real& x, const LossParams& p) {
  detail::require_finite(x);
  const Real t = detail::squared_ratio(x, p);
  const Real w = detail::scaled_weight(detail::unit_weight_from_t(t, p), p);
  return detail::curvature_from(t, w, p);
}

template <RealScalar Real>
BasicKernelEval<Real> eval_all(const Real& x, const LossParams& p) {
  using std::isinf;
  detail::require_finite(x);
  const Real t = detail::squared_ratio(x, p);
  BasicKernelEval<Real> out;
  out.value = detail::value_from_t(t, p);
  out.weight = detail::scaled_weight(detail::unit_weight_from_t(t, p), p);
  out.gradient = x * out.weight;
  out.curvature = detail::curvature_from(t, out.weight, p);
  out.saturated = isinf(out.value) || isinf(out.weight);
  return out;
}

// Non-template overloads so integer literals (rho(0, p)) resolve to double.
inline double rho(double x, const LossParams& p) { return rho<double>(x, p); }
inline double weight(double x, const LossParams& p) { return weight<double>(x, p); }
inline double gradient(double x, const LossParams& p) { return gradient<double>(x, p); }
inline double curvature(double x, const LossParams& p) { return curvature<double>(x, p); }
inline KernelEval eval_all(double x, const LossParams& p) { return eval_all<double>(x, p); }

}  // namespace robust_loss
