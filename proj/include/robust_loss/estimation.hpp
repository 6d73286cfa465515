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

// Robust linear regression: y ~ features . coefficients + intercept, fitted
// by minimizing sum_i rho(r_i, alpha, c) with iteratively reweighted least
// squares, plus a graduated non-convexity driver that anneals alpha from the
// convex alpha = 2 problem down to a robust target.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "robust_loss/errors.hpp"
#include "robust_loss/loss.hpp"
#include "robust_loss/params.hpp"

namespace robust_loss {

struct Observation {
  std::vector<double> features;
  double target = 0.0;
};

/// n observations of d features (no implicit bias column) and a target.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd features, Eigen::VectorXd targets)
      : features_(std::move(features)), targets_(std::move(targets)) {
    if (features_.rows() == 0) throw InvalidInput("dataset must not be empty");
    if (features_.rows() != targets_.size()) {
      throw DimensionMismatch("feature rows (" + std::to_string(features_.rows()) +
                              ") != targets (" + std::to_string(targets_.size()) + ")");
    }
    if (!features_.allFinite() || !targets_.allFinite()) {
      throw InvalidInput("dataset entries must be finite");
    }
  }

  explicit Dataset(const std::vector<Observation>& observations)
      : Dataset(pack_features(observations), pack_targets(observations)) {}

  std::size_t size() const { return static_cast<std::size_t>(targets_.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(features_.cols()); }
  const Eigen::MatrixXd& features() const { return features_; }
  const Eigen::VectorXd& targets() const { return targets_; }

  /// Fewer observations than features; fits are then ridge-determined.
  bool underdetermined() const { return size() < dim(); }

 private:
  static Eigen::MatrixXd pack_features(const std::vector<Observation>& obs) {
    if (obs.empty()) throw InvalidInput("dataset must not be empty");
    const std::size_t d = obs.front().features.size();
    Eigen::MatrixXd x(static_cast<Eigen::Index>(obs.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < obs.size(); ++i) {
      if (obs[i].features.size() != d) {
        throw DimensionMismatch("observation " + std::to_string(i) + " has " +
                                std::to_string(obs[i].features.size()) + " features, expected " +
                                std::to_string(d));
      }
      for (std::size_t j = 0; j < d; ++j) {
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = obs[i].features[j];
      }
    }
    return x;
  }

  static Eigen::VectorXd pack_targets(const std::vector<Observation>& obs) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(obs.size()));
    for (std::size_t i = 0; i < obs.size(); ++i) y(static_cast<Eigen::Index>(i)) = obs[i].target;
    return y;
  }

  Eigen::MatrixXd features_;
  Eigen::VectorXd targets_;
};

struct LinearModel {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& features) const {
    return features.dot(coefficients.transpose()) + intercept;
  }
};

struct IRLSConfig {
  int max_iters = 100;
  /// Stop once the max-norm of the parameter update falls below this.
  double param_tol = 1e-10;
  /// Relative Tikhonov term: ridge * trace(A^T W A) / p is added to the diagonal.
  double ridge = 1e-12;

  void validate() const {
    if (max_iters < 1) throw InvalidInput("max_iters must be >= 1");
    if (!(param_tol > 0.0) || !std::isfinite(param_tol)) throw InvalidInput("param_tol must be > 0");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw InvalidInput("ridge must be >= 0");
  }
};

struct StageReport {
  PowerParam alpha;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct FitReport {
  LinearModel model;
  int iterations = 0;
  double final_objective = 0.0;
  bool converged = false;
  /// Objective of the initial model followed by one entry per iteration
  /// (last stage only for GNC fits).
  std::vector<double> objective_trace;
  /// Iterations whose objective rose by more than 1e-9 relative.
  int monotonicity_violations = 0;
  /// alpha > 2: weights grow with |r|, so outliers gain influence.
  bool anti_robust = false;
  std::vector<StageReport> per_stage;
};

/// Strictly decreasing alpha sequence sharing one scale c.
class GNCSchedule {
 public:
  GNCSchedule(std::vector<PowerParam> alphas, Scale c) : alphas_(std::move(alphas)), c_(c) {
    if (alphas_.empty()) throw InvalidInput("GNC schedule must not be empty");
    for (std::size_t k = 1; k < alphas_.size(); ++k) {
      if (!(alphas_[k] < alphas_[k - 1])) {
        throw InvalidInput("GNC schedule must be strictly decreasing in alpha");
      }
    }
  }

  const std::vector<PowerParam>& alphas() const { return alphas_; }
  Scale c() const { return c_; }

 private:
  std::vector<PowerParam> alphas_;
  Scale c_;
};

inline constexpr double kGncNegInfCutIn = -16.0;

/// Linear alpha schedule from 2 down to the target. A -inf target descends
/// linearly to -16 over steps - 1 stages and then appends -inf.
inline GNCSchedule make_linear_schedule(PowerParam target, int steps, Scale c) {
  if (!(target < PowerParam(2.0))) throw InvalidInput("schedule target alpha must be < 2");
  if (steps < 1) throw InvalidInput("schedule steps must be >= 1");
  // count values from 2 to last inclusive; a single value is `single`.
  std::vector<PowerParam> alphas;
  auto linear = [&](int count, double last, double single) {
    if (count == 1) {
      alphas.emplace_back(single);
      return;
    }
    for (int k = 0; k < count; ++k) {
      alphas.emplace_back(k == count - 1 ? last : 2.0 - (2.0 - last) * k / (count - 1));
    }
  };
  if (target.is_neg_inf()) {
    if (steps > 1) linear(steps - 1, kGncNegInfCutIn, 2.0);
    alphas.push_back(PowerParam::neg_inf());
  } else {
    linear(steps, target.value(), target.value());
  }
  return GNCSchedule(std::move(alphas), c);
}

namespace detail {

inline void check_model(const Dataset& data, const LinearModel& model) {
  if (static_cast<std::size_t>(model.coefficients.size()) != data.dim()) {
    throw DimensionMismatch("model has " + std::to_string(model.coefficients.size()) +
                            " coefficients, dataset has " + std::to_string(data.dim()) +
                            " features");
  }
}

inline Eigen::VectorXd residuals(const Dataset& data, const LinearModel& model) {
  Eigen::VectorXd r = data.targets() - data.features() * model.coefficients;
  r.array() -= model.intercept;
  return r;
}

inline double max_abs_change(const LinearModel& a, const LinearModel& b) {
  double m = std::abs(a.intercept - b.intercept);
  if (a.coefficients.size() > 0) {
    m = std::max(m, (a.coefficients - b.coefficients).cwiseAbs().maxCoeff());
  }
  return m;
}

/// argmin sum_i w_i (y_i - a_i . theta)^2 with a_i = [x_i, 1], accumulated in
/// row order so repeated runs are bit-identical.
inline LinearModel solve_weighted(const Dataset& data, const Eigen::VectorXd& w, double ridge) {
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index d = static_cast<Eigen::Index>(data.dim());
  const Eigen::Index p = d + 1;
  if (!w.allFinite()) throw SingularSystem("IRLS weights are not finite (loss saturated)");

  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd a(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.head(d) = data.features().row(i).transpose();
    a(d) = 1.0;
    normal.noalias() += w(i) * a * a.transpose();
    rhs.noalias() += (w(i) * data.targets()(i)) * a;
  }
  const double trace = normal.trace();
  if (!(trace > 0.0) || !std::isfinite(trace)) {
    throw SingularSystem("weighted normal matrix has zero or non-finite trace (all weights vanished?)");
  }
  normal.diagonal().array() += ridge * trace / static_cast<double>(p);

  const Eigen::LLT<Eigen::MatrixXd> llt(normal);
  const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw SingularSystem("weighted normal equations are singular (rcond " + std::to_string(rcond) +
                         ", ridge " + std::to_string(ridge) + ")");
  }
  const Eigen::VectorXd theta = llt.solve(rhs);
  if (!theta.allFinite()) throw SingularSystem("weighted least-squares solution is not finite");

  LinearModel model;
  model.coefficients = theta.head(d);
  model.intercept = theta(d);
  return model;
}

}  // namespace detail

/// sum_i rho(r_i, alpha, c), r_i = y_i - (x_i . coefficients + intercept).
inline double objective(const Dataset& data, const LinearModel& model, const LossParams& p) {
  detail::check_model(data, model);
  const Eigen::VectorXd r = detail::residuals(data, model);
  double total = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) total += rho(r(i), p);
  return total;
}

/// d objective / d [coefficients, intercept].
inline Eigen::VectorXd objective_gradient(const Dataset& data, const LinearModel& model,
                                          const LossParams& p) {
  detail::check_model(data, model);
  const Eigen::VectorXd r = detail::residuals(data, model);
  const Eigen::Index d = static_cast<Eigen::Index>(data.dim());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(d + 1);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double psi = gradient(r(i), p);
    g.head(d) -= psi * data.features().row(i).transpose();
    g(d) -= psi;
  }
  return g;
}

/// Ordinary least squares (the alpha = 2 fit), with the relative ridge.
inline LinearModel ordinary_least_squares(const Dataset& data, double ridge = IRLSConfig{}.ridge) {
  return detail::solve_weighted(data, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(data.size())),
                                ridge);
}

inline FitReport irls_fit(const Dataset& data, const LossParams& p, const IRLSConfig& config = {},
                          const std::optional<LinearModel>& init = std::nullopt) {
  config.validate();
  FitReport report;
  report.anti_robust = p.alpha > PowerParam(2.0);
  if (init) detail::check_model(data, *init);
  LinearModel model = init ? *init : ordinary_least_squares(data, config.ridge);

  double current = objective(data, model, p);
  report.objective_trace.push_back(current);
  Eigen::VectorXd w(static_cast<Eigen::Index>(data.size()));
  for (int it = 1; it <= config.max_iters; ++it) {
    const Eigen::VectorXd r = detail::residuals(data, model);
    for (Eigen::Index i = 0; i < r.size(); ++i) w(i) = weight(r(i), p);
    LinearModel next = detail::solve_weighted(data, w, config.ridge);

    const double change = detail::max_abs_change(model, next);
    const double next_objective = objective(data, next, p);
    if (next_objective - current > 1e-9 * std::max(std::abs(current), 1e-300)) {
      ++report.monotonicity_violations;
    }
    model = std::move(next);
    current = next_objective;
    report.objective_trace.push_back(current);
    report.iterations = it;
    if (change < config.param_tol) {
      report.converged = true;
      break;
    }
  }
  report.model = std::move(model);
  report.final_objective = current;
  return report;
}

namespace detail {
inline std::string alpha_label(PowerParam a) {
  return a.is_neg_inf() ? std::string("-inf") : std::to_string(a.value());
}
}  // namespace detail

/// Runs irls_fit for each alpha of the schedule, warm-starting every stage
/// from the previous one. The first stage starts from ordinary least squares.
inline FitReport gnc_fit(const Dataset& data, const GNCSchedule& schedule,
                         const IRLSConfig& config = {}) {
  config.validate();
  FitReport total;
  std::optional<LinearModel> warm;
  for (const PowerParam alpha : schedule.alphas()) {
    const std::string where = "GNC stage alpha=" + detail::alpha_label(alpha) + ": ";
    FitReport stage;
    try {
      stage = irls_fit(data, LossParams{alpha, schedule.c()}, config, warm);
    } catch (const SingularSystem& e) {
      throw SingularSystem(where + e.what());
    } catch (const DimensionMismatch& e) {
      throw DimensionMismatch(where + e.what());
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + e.what());
    }
    total.per_stage.push_back({alpha, stage.final_objective, stage.iterations, stage.converged});
    total.iterations += stage.iterations;
    total.monotonicity_violations += stage.monotonicity_violations;
    total.anti_robust = total.anti_robust || stage.anti_robust;
    total.objective_trace = std::move(stage.objective_trace);
    total.final_objective = stage.final_objective;
    total.converged = stage.converged;
    warm = stage.model;
    total.model = std::move(stage.model);
  }
  return total;
}

}  // namespace robust_loss
