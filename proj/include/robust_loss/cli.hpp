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

// Command-line front end. run() parses argv-style arguments (without the
// program name) and dispatches to robust_loss::commands.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robust_loss/commands.hpp"

namespace robust_loss::cli {

namespace detail {

inline std::vector<PowerParam> parse_alpha_list(const std::string& list) {
  std::vector<PowerParam> alphas;
  std::size_t start = 0;
  while (true) {
    const auto comma = list.find(',', start);
    alphas.push_back(text::parse_alpha(
        list.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return alphas;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate, plot and fit with the general robust loss rho(x, alpha, c)",
               "robust_loss"};
  app.require_subcommand(1);

  // Numbers are taken as strings so that "-inf" and range errors go through
  // one parser.
  std::string x_s, alpha_s = "2", c_s = "1";

  auto* eval = app.add_subcommand("eval", "Print x, alpha, c, loss, gradient, weight, curvature");
  eval->add_option("--x", x_s, "Residual x")->required();
  eval->add_option("--alpha", alpha_s, "Shape parameter (number or -inf)")->required();
  eval->add_option("--c", c_s, "Scale c > 0")->required();

  std::string alphas_s = "2,1,0,-2,-inf", x_min_s = "-6", x_max_s = "6", quantity_s = "loss";
  int samples = 601;
  bool log10 = false;
  auto* sweep = app.add_subcommand("sweep", "Tabulate loss/gradient/weight curves over x/c");
  sweep->add_option("--alphas", alphas_s, "Comma-separated alphas")->capture_default_str();
  sweep->add_option("--c", c_s, "Scale c > 0")->capture_default_str();
  sweep->add_option("--x-min", x_min_s, "Lower end of x/c")->capture_default_str();
  sweep->add_option("--x-max", x_max_s, "Upper end of x/c")->capture_default_str();
  sweep->add_option("--samples", samples, "Number of grid points (>= 2)")->capture_default_str();
  sweep->add_option("--quantity", quantity_s, "loss | gradient | weight")->capture_default_str();
  sweep->add_flag("--log10", log10, "Emit log10 of the weight");

  commands::FitOptions fit_opts;
  bool gnc = false;
  int steps = 4, max_iters = fit_opts.config.max_iters;
  double param_tol = fit_opts.config.param_tol, ridge = fit_opts.config.ridge;
  auto* fit = app.add_subcommand("fit", "Robust linear regression on a headered CSV (last column = target)");
  fit->add_option("csv", fit_opts.csv_path, "Input CSV file")->required();
  fit->add_option("--alpha", alpha_s, "Target alpha (number or -inf)")->capture_default_str();
  fit->add_option("--c", c_s, "Scale c > 0")->capture_default_str();
  fit->add_flag("--gnc", gnc, "Anneal alpha from 2 to the target");
  fit->add_option("--steps", steps, "Number of GNC stages")->capture_default_str();
  fit->add_option("--max-iters", max_iters, "IRLS iteration cap per stage")->capture_default_str();
  fit->add_option("--param-tol", param_tol, "Max-norm parameter change tolerance")
      ->capture_default_str();
  fit->add_option("--ridge", ridge, "Relative ridge term")->capture_default_str();

  auto* props = app.add_subcommand("props", "Print redescend point and loss/gradient/curvature bounds");
  props->add_option("--alpha", alpha_s, "Shape parameter (number or -inf)")->required();
  props->add_option("--c", c_s, "Scale c > 0")->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("robust_loss");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return commands::kExitError;
  }

  try {
    if (*eval) {
      return commands::cmd_eval(text::parse_number(x_s, "--x"), text::parse_alpha(alpha_s),
                                Scale(text::parse_number(c_s, "--c")), out);
    }
    if (*sweep) {
      commands::SweepSpec spec;
      spec.alphas = detail::parse_alpha_list(alphas_s);
      spec.c = Scale(text::parse_number(c_s, "--c"));
      spec.x_min = text::parse_number(x_min_s, "--x-min");
      spec.x_max = text::parse_number(x_max_s, "--x-max");
      spec.samples = samples;
      spec.quantity = commands::parse_quantity(quantity_s);
      spec.log10 = log10;
      return commands::cmd_sweep(spec, out);
    }
    if (*props) {
      return commands::cmd_props(text::parse_alpha(alpha_s), Scale(text::parse_number(c_s, "--c")),
                                 out);
    }
    if (*fit) {
      fit_opts.alpha = text::parse_alpha(alpha_s);
      fit_opts.c = Scale(text::parse_number(c_s, "--c"));
      fit_opts.gnc = gnc;
      fit_opts.steps = steps;
      fit_opts.config.max_iters = max_iters;
      fit_opts.config.param_tol = param_tol;
      fit_opts.config.ridge = ridge;
      return commands::cmd_fit(fit_opts, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return commands::kExitError;
  }
  return commands::kExitError;
}

}  // namespace robust_loss::cli
