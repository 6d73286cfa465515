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

// Fits a line to the seeded contaminated dataset with least squares, a
// single robust IRLS solve, and a GNC schedule, and prints the estimates.

#include <cstdio>

#include "robust_loss/estimation.hpp"
#include "robust_loss/synthetic.hpp"

int main() {
  using namespace robust_loss;
  const Dataset data = synthetic::contaminated_line().dataset();

  const LinearModel ols = ordinary_least_squares(data);
  std::printf("least squares    slope %.6f  intercept %.6f\n", ols.coefficients(0), ols.intercept);

  const FitReport irls = irls_fit(data, LossParams{PowerParam(-2.0), Scale(1.0)});
  std::printf("irls alpha=-2    slope %.6f  intercept %.6f  (%d iterations)\n",
              irls.model.coefficients(0), irls.model.intercept, irls.iterations);

  const FitReport gnc = gnc_fit(data, make_linear_schedule(PowerParam::neg_inf(), 5, Scale(1.0)));
  std::printf("gnc 2 -> -inf    slope %.6f  intercept %.6f  objective %.6f\n",
              gnc.model.coefficients(0), gnc.model.intercept, gnc.final_objective);
  return 0;
}
