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

// Implementations of the command-line subcommands, writing TSV to a stream.
// Each returns the process exit code: 0 ok, 1 error, 2 fit did not converge.

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "robust_loss/analysis.hpp"
#include "robust_loss/csv.hpp"
#include "robust_loss/estimation.hpp"
#include "robust_loss/format.hpp"
#include "robust_loss/loss.hpp"

namespace robust_loss::commands {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

enum class Quantity { kLoss, kGradient, kWeight };

inline Quantity parse_quantity(const std::string& s) {
  if (s == "loss") return Quantity::kLoss;
  if (s == "gradient") return Quantity::kGradient;
  if (s == "weight") return Quantity::kWeight;
  throw InvalidInput("quantity must be one of loss, gradient, weight; got '" + s + "'");
}

/// Default sweep curves: L2, ~L1, Cauchy, Geman-McClure, Welsch.
inline std::vector<PowerParam> default_sweep_alphas() {
  return {2.0, 1.0, 0.0, -2.0, PowerParam::neg_inf()};
}

struct SweepSpec {
  std::vector<PowerParam> alphas = default_sweep_alphas();
  Scale c = 1.0;
  /// Range of x / c.
  double x_min = -6.0;
  double x_max = 6.0;
  int samples = 601;
  Quantity quantity = Quantity::kLoss;
  /// log10 of the weight; only valid with Quantity::kWeight.
  bool log10 = false;

  void validate() const {
    if (alphas.empty()) throw InvalidInput("sweep needs at least one alpha");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
      throw InvalidInput("sweep requires finite x_min < x_max");
    }
    if (samples < 2) throw InvalidInput("sweep requires samples >= 2");
    if (log10 && quantity != Quantity::kWeight) {
      throw InvalidInput("--log10 is only valid with quantity=weight");
    }
  }

  /// i-th grid point in units of c; endpoints are exact.
  double x_over_c(int i) const {
    return x_min + (static_cast<double>(i) * (x_max - x_min)) / static_cast<double>(samples - 1);
  }
};

inline double sweep_value(const SweepSpec& spec, PowerParam alpha, double x_over_c) {
  const LossParams p{alpha, spec.c};
  const double x = x_over_c * spec.c.value();
  switch (spec.quantity) {
    case Quantity::kLoss: return rho(x, p);
    case Quantity::kGradient: return gradient(x, p);
    case Quantity::kWeight: {
      const double w = weight(x, p);
      return spec.log10 ? std::log10(w) : w;
    }
  }
  return 0.0;
}

inline int cmd_eval(double x, PowerParam alpha, Scale c, std::ostream& out) {
  const KernelEval e = eval_all(x, LossParams{alpha, c});
  out << text::format_number(x) << '\t' << text::format_alpha(alpha) << '\t'
      << text::format_number(c.value()) << '\t' << text::format_number(e.value) << '\t'
      << text::format_number(e.gradient) << '\t' << text::format_number(e.weight) << '\t'
      << text::format_number(e.curvature) << '\n';
  return kExitOk;
}

inline int cmd_sweep(const SweepSpec& spec, std::ostream& out) {
  spec.validate();
  out << "x_over_c";
  for (const auto a : spec.alphas) out << '\t' << text::format_alpha(a);
  out << '\n';
  for (int i = 0; i < spec.samples; ++i) {
    const double u = spec.x_over_c(i);
    out << text::format_number(u);
    for (const auto a : spec.alphas) out << '\t' << text::format_number(sweep_value(spec, a, u));
    out << '\n';
  }
  return kExitOk;
}

inline int cmd_props(PowerParam alpha, Scale c, std::ostream& out) {
  const LossParams p{alpha, c};
  auto opt = [](const std::optional<double>& v, const char* absent) {
    return v ? text::format_number(*v) : std::string(absent);
  };
  out << "alpha\t" << text::format_alpha(alpha) << '\n'
      << "c\t" << text::format_number(c.value()) << '\n'
      << "redescend_point\t" << opt(redescend_point(p), "none") << '\n'
      << "loss_supremum\t" << opt(loss_supremum(p), "unbounded") << '\n'
      << "gradient_bound\t" << opt(gradient_bound(p), "unbounded") << '\n'
      << "curvature_bound\t" << opt(curvature_bound(p), "unbounded") << '\n';
  return kExitOk;
}

struct FitOptions {
  std::string csv_path;
  PowerParam alpha = 2.0;
  Scale c = 1.0;
  bool gnc = false;
  int steps = 4;
  IRLSConfig config;
};

inline void write_fit_report(const FitReport& r, std::ostream& out) {
  for (Eigen::Index j = 0; j < r.model.coefficients.size(); ++j) {
    out << "coefficient\t" << j << '\t' << text::format_number(r.model.coefficients(j)) << '\n';
  }
  out << "intercept\t" << text::format_number(r.model.intercept) << '\n'
      << "iterations\t" << r.iterations << '\n'
      << "objective\t" << text::format_number(r.final_objective) << '\n'
      << "converged\t" << (r.converged ? "true" : "false") << '\n';
  for (const auto& s : r.per_stage) {
    out << "stage\t" << text::format_alpha(s.alpha) << '\t' << text::format_number(s.objective)
        << '\t' << s.iterations << '\t' << (s.converged ? "true" : "false") << '\n';
  }
}

/// Errors propagate as exceptions; the CLI front end maps them to exit 1.
inline int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err) {
  const Dataset data = csv::read_dataset(opts.csv_path);
  if (data.underdetermined()) {
    err << "warning: " << data.size() << " observations for " << data.dim()
        << " features; solution is determined by the ridge term\n";
  }
  const FitReport report =
      opts.gnc ? gnc_fit(data, make_linear_schedule(opts.alpha, opts.steps, opts.c), opts.config)
               : irls_fit(data, LossParams{opts.alpha, opts.c}, opts.config);
  if (report.anti_robust) {
    err << "warning: alpha > 2 weights large residuals more heavily (anti-robust)\n";
  }
  if (report.monotonicity_violations > 0) {
    err << "warning: objective increased in " << report.monotonicity_violations
        << " IRLS iteration(s)\n";
  }
  write_fit_report(report, out);
  return report.converged ? kExitOk : kExitNotConverged;
}

}  // namespace robust_loss::commands
