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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "robust_loss/estimation.hpp"
#include "robust_loss/synthetic.hpp"
#include "support/oracle.hpp"

namespace robust_loss {
namespace {

const PowerParam kNegInf = PowerParam::neg_inf();

// 2 log(1.5) + log(3), 50-digit evaluation.
constexpr double kThreeResidualCauchyObjective = 1.9095425048844384554;

Dataset Line(const std::vector<double>& x, const std::vector<double>& y) {
  Eigen::MatrixXd f(static_cast<Eigen::Index>(x.size()), 1);
  Eigen::VectorXd t(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    f(static_cast<Eigen::Index>(i), 0) = x[i];
    t(static_cast<Eigen::Index>(i)) = y[i];
  }
  return Dataset(f, t);
}

LinearModel Model(std::vector<double> coefficients, double intercept) {
  LinearModel m;
  m.coefficients = Eigen::Map<Eigen::VectorXd>(coefficients.data(),
                                               static_cast<Eigen::Index>(coefficients.size()));
  m.intercept = intercept;
  return m;
}

Dataset NoiselessLine() {
  std::vector<double> x, y;
  for (int i = 0; i < 30; ++i) {
    x.push_back(0.37 * i - 2.0);
    y.push_back(2.0 * x.back() + 1.0);
  }
  return Line(x, y);
}

struct Random3d {
  Dataset data;
  LinearModel truth;
};

Random3d RandomWellConditioned(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXd x(50, 3);
  Eigen::VectorXd y(50);
  const LinearModel truth = Model({1.5, -0.7, 3.0}, 0.25);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = n01(rng);
    y(i) = truth.predict(x.row(i)) + 0.3 * n01(rng);
  }
  return {Dataset(x, y), truth};
}

TEST(Dataset, Validation) {
  EXPECT_THROW(Dataset(std::vector<Observation>{}), InvalidInput);
  EXPECT_THROW(Dataset(std::vector<Observation>{{{1.0, 2.0}, 3.0}, {{1.0}, 2.0}}),
               DimensionMismatch);
  EXPECT_THROW(Dataset(std::vector<Observation>{{{std::nan("")}, 3.0}}), InvalidInput);
  EXPECT_THROW(Dataset(Eigen::MatrixXd(3, 1), Eigen::VectorXd(2)), DimensionMismatch);
  const Dataset d(std::vector<Observation>{{{1.0, 2.0, 3.0}, 1.0}});
  EXPECT_TRUE(d.underdetermined());
  EXPECT_EQ(d.dim(), 3u);
}

TEST(Objective, Examples) {
  const LossParams cauchy{0.0, 1.0};
  EXPECT_EQ(objective(NoiselessLine(), Model({2.0}, 1.0), cauchy), 0.0);
  EXPECT_EQ(objective(Line({0.0}, {2.0}), Model({5.0}, 0.0), LossParams{2.0, 1.0}), 2.0);
  const Dataset three = Line({0.0, 0.0, 0.0}, {1.0, -1.0, 2.0});
  EXPECT_NEAR(objective(three, Model({0.0}, 0.0), cauchy), kThreeResidualCauchyObjective, 1e-14);
}

TEST(Objective, DimensionMismatch) {
  EXPECT_THROW(objective(NoiselessLine(), Model({1.0, 2.0}, 0.0), LossParams{}), DimensionMismatch);
}

TEST(IrlsFit, RecoversNoiselessLine) {
  for (PowerParam a : {PowerParam(2.0), PowerParam(1.0), PowerParam(0.0), PowerParam(-2.0), kNegInf}) {
    const FitReport r = irls_fit(NoiselessLine(), LossParams{a, 1.0});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.model.coefficients(0), 2.0, 1e-8);
    EXPECT_NEAR(r.model.intercept, 1.0, 1e-8);
  }
}

TEST(IrlsFit, AlphaTwoIsOrdinaryLeastSquares) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Random3d d = RandomWellConditioned(seed);
    Eigen::MatrixXd a(50, 4);
    a << d.data.features(), Eigen::VectorXd::Ones(50);
    const Eigen::VectorXd ls = a.colPivHouseholderQr().solve(d.data.targets());

    const FitReport r = irls_fit(d.data, LossParams{2.0, 0.7});
    EXPECT_TRUE(r.converged);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(r.model.coefficients(j), ls(j), 1e-10);
    EXPECT_NEAR(r.model.intercept, ls(3), 1e-10);
    EXPECT_LE(r.iterations, 2);
  }
}

TEST(IrlsFit, ContaminatedLineMatchesGridOracle) {
  const auto cl = synthetic::contaminated_line();
  const LossParams p{-2.0, 1.0};
  // alpha = -2 is the Geman-McClure closed form, evaluated independently.
  const auto grid = oracle::grid_search_line(
      cl.x, cl.y, [](double r) { return 2 * r * r / (r * r + 4); }, 0, 4, -2, 4, 0.01);
  const FitReport r = irls_fit(cl.dataset(), p);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.model.coefficients(0), grid.slope, 0.05);
  EXPECT_NEAR(r.model.intercept, grid.intercept, 0.05);
}

TEST(IrlsFit, ObjectiveNeverIncreases) {
  const Dataset data = synthetic::contaminated_line().dataset();
  for (PowerParam a : {PowerParam(2.0), PowerParam(1.0), PowerParam(0.5), PowerParam(0.0),
                       PowerParam(-2.0), PowerParam(-8.0), kNegInf}) {
    const FitReport r = irls_fit(data, LossParams{a, 1.0});
    EXPECT_EQ(r.monotonicity_violations, 0);
    ASSERT_EQ(r.objective_trace.size(), static_cast<std::size_t>(r.iterations) + 1);
    for (std::size_t k = 1; k < r.objective_trace.size(); ++k) {
      EXPECT_LE(r.objective_trace[k], r.objective_trace[k - 1] * (1 + 1e-9));
    }
    EXPECT_EQ(r.final_objective, r.objective_trace.back());
  }
}

TEST(IrlsFit, ConvergedPointIsStationary) {
  const Dataset data = synthetic::contaminated_line().dataset();
  for (PowerParam a : {PowerParam(1.0), PowerParam(0.0), PowerParam(-2.0), kNegInf}) {
    const LossParams p{a, 1.0};
    const FitReport r = irls_fit(data, p);
    ASSERT_TRUE(r.converged);
    EXPECT_LT(objective_gradient(data, r.model, p).cwiseAbs().maxCoeff(), 1e-6 * data.size());
  }
}

TEST(IrlsFit, FinalObjectiveMatchesRecomputation) {
  const Dataset data = synthetic::contaminated_line().dataset();
  const LossParams p{0.0, 1.0};
  const FitReport r = irls_fit(data, p);
  EXPECT_NEAR(r.final_objective, objective(data, r.model, p), 1e-10 * r.final_objective);
}

TEST(IrlsFit, ScaleEquivariance) {
  const auto cl = synthetic::contaminated_line();
  const FitReport base = irls_fit(cl.dataset(), LossParams{-2.0, 1.0});
  for (double k : {0.5, 3.0, 10.0}) {
    std::vector<double> ky(cl.y);
    for (double& v : ky) v *= k;
    const FitReport scaled = irls_fit(Line(cl.x, ky), LossParams{-2.0, k});
    EXPECT_NEAR(scaled.model.coefficients(0), k * base.model.coefficients(0), 1e-6 * k);
    EXPECT_NEAR(scaled.model.intercept, k * base.model.intercept, 1e-6 * k);
  }
}

TEST(IrlsFit, AntiRobustRegimeIsFlagged) {
  const FitReport r = irls_fit(NoiselessLine(), LossParams{3.0, 1.0});
  EXPECT_TRUE(r.anti_robust);
  EXPECT_FALSE(irls_fit(NoiselessLine(), LossParams{2.0, 1.0}).anti_robust);
}

TEST(IrlsFit, SingularDesignWithoutRidge) {
  // Constant feature is collinear with the intercept.
  const Dataset data = Line({1.0, 1.0, 1.0, 1.0}, {1.0, 2.0, 3.0, 4.0});
  IRLSConfig no_ridge;
  no_ridge.ridge = 0.0;
  EXPECT_THROW(irls_fit(data, LossParams{0.0, 1.0}, no_ridge), SingularSystem);
  const FitReport r = irls_fit(data, LossParams{0.0, 1.0});
  EXPECT_TRUE(std::isfinite(r.model.intercept));
}

TEST(IrlsFit, VanishingWeightsAreReported) {
  const Dataset data = NoiselessLine();
  try {
    irls_fit(data, LossParams{kNegInf, 1e-3}, {}, Model({-50.0}, 400.0));
    FAIL() << "expected SingularSystem";
  } catch (const SingularSystem& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
}

TEST(IrlsFit, RejectsBadInitAndConfig) {
  EXPECT_THROW(irls_fit(NoiselessLine(), LossParams{}, {}, Model({1.0, 2.0}, 0.0)),
               DimensionMismatch);
  IRLSConfig bad;
  bad.max_iters = 0;
  EXPECT_THROW(irls_fit(NoiselessLine(), LossParams{}, bad), InvalidInput);
  bad = {};
  bad.param_tol = 0.0;
  EXPECT_THROW(irls_fit(NoiselessLine(), LossParams{}, bad), InvalidInput);
  bad = {};
  bad.ridge = -1.0;
  EXPECT_THROW(irls_fit(NoiselessLine(), LossParams{}, bad), InvalidInput);
}

TEST(IrlsFit, ReportsNonConvergence) {
  IRLSConfig one;
  one.max_iters = 1;
  const FitReport r = irls_fit(synthetic::contaminated_line().dataset(), LossParams{-2.0, 1.0}, one);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(Schedule, LinearExamples) {
  auto values = [](const GNCSchedule& s) {
    std::vector<double> v;
    for (auto a : s.alphas()) v.push_back(a.value());
    return v;
  };
  EXPECT_EQ(values(make_linear_schedule(-2.0, 3, 1.0)), (std::vector<double>{2, 0, -2}));
  const double ninf = kNegInf.value();
  EXPECT_EQ(values(make_linear_schedule(kNegInf, 4, 1.0)), (std::vector<double>{2, -7, -16, ninf}));
  EXPECT_EQ(values(make_linear_schedule(1.0, 1, 1.0)), (std::vector<double>{1}));
  EXPECT_EQ(values(make_linear_schedule(-16.0, 1, 1.0)), (std::vector<double>{-16}));
  EXPECT_EQ(values(make_linear_schedule(kNegInf, 1, 1.0)), (std::vector<double>{ninf}));
  EXPECT_EQ(values(make_linear_schedule(kNegInf, 2, 1.0)), (std::vector<double>{2, ninf}));
}

TEST(Schedule, Errors) {
  EXPECT_THROW(make_linear_schedule(2.0, 3, 1.0), InvalidInput);
  EXPECT_THROW(make_linear_schedule(2.5, 3, 1.0), InvalidInput);
  EXPECT_THROW(make_linear_schedule(0.0, 0, 1.0), InvalidInput);
  EXPECT_THROW(GNCSchedule({0.0, 1.0}, 1.0), InvalidInput);
  EXPECT_THROW(GNCSchedule({0.0, 0.0}, 1.0), InvalidInput);
  EXPECT_THROW(GNCSchedule({}, 1.0), InvalidInput);
}

TEST(GncFit, SingleStageEqualsIrls) {
  const Dataset data = synthetic::contaminated_line().dataset();
  const FitReport g = gnc_fit(data, GNCSchedule({2.0}, 1.0));
  const FitReport r = irls_fit(data, LossParams{2.0, 1.0});
  EXPECT_EQ(g.model.coefficients(0), r.model.coefficients(0));
  EXPECT_EQ(g.model.intercept, r.model.intercept);
  EXPECT_EQ(g.final_objective, r.final_objective);
  ASSERT_EQ(g.per_stage.size(), 1u);
}

TEST(GncFit, NotWorseThanColdStart) {
  const Dataset data = synthetic::contaminated_line().dataset();
  const FitReport g = gnc_fit(data, GNCSchedule({2.0, 0.0, -2.0, kNegInf}, 1.0));
  const FitReport cold = irls_fit(data, LossParams{kNegInf, 1.0});
  EXPECT_LE(g.final_objective, cold.final_objective);
  ASSERT_EQ(g.per_stage.size(), 4u);
  EXPECT_EQ(g.per_stage[0].alpha, PowerParam(2.0));
  EXPECT_EQ(g.per_stage[3].alpha, kNegInf);
  EXPECT_EQ(g.per_stage.back().objective, g.final_objective);
  int total = 0;
  for (const auto& s : g.per_stage) total += s.iterations;
  EXPECT_EQ(total, g.iterations);
  EXPECT_NEAR(g.final_objective, objective(data, g.model, LossParams{kNegInf, 1.0}),
              1e-10 * g.final_objective);
}

TEST(GncFit, RecoversContaminatedLine) {
  const FitReport g = gnc_fit(synthetic::contaminated_line().dataset(),
                              make_linear_schedule(-2.0, 3, 1.0));
  EXPECT_TRUE(g.converged);
  EXPECT_NEAR(g.model.coefficients(0), 2.0, 0.1);
  EXPECT_NEAR(g.model.intercept, 1.0, 0.1);
}

TEST(GncFit, ErrorsNameTheFailingStage) {
  // OLS residuals are tens of units; at c = 1e-3 every Welsch weight underflows.
  const Dataset data = synthetic::contaminated_line().dataset();
  try {
    gnc_fit(data, GNCSchedule({2.0, kNegInf}, 1e-3));
    FAIL() << "expected SingularSystem";
  } catch (const SingularSystem& e) {
    EXPECT_NE(std::string(e.what()).find("alpha=-inf"), std::string::npos) << e.what();
  }
}

TEST(Synthetic, DeterministicContaminatedLine) {
  const auto a = synthetic::contaminated_line();
  const auto b = synthetic::contaminated_line();
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  ASSERT_EQ(a.x.size(), 100u);
  int outliers = 0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    EXPECT_GE(a.x[i], 0.0);
    EXPECT_LT(a.x[i], 10.0);
    const double resid = a.y[i] - (2 * a.x[i] + 1);
    if (a.is_outlier[i]) {
      ++outliers;
      EXPECT_NEAR(resid, 50.0, 1.0);
    } else {
      EXPECT_LT(std::abs(resid), 1.0);
    }
  }
  EXPECT_EQ(outliers, 20);
  // mt19937_64 is fully specified, so the first draw is portable.
  EXPECT_NEAR(a.x[0], 7.5515553295453897, 1e-15);
  EXPECT_TRUE(a.is_outlier[2]);
  EXPECT_TRUE(a.is_outlier[99]);
}

}  // namespace
}  // namespace robust_loss
