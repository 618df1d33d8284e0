// Copyright 2026 The hitlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hitlab/report.hpp"

namespace {

int report_error(const char* kind, const std::string& message, int code) {
  const hitlab::Json j = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hitting-time densities of gap diffusions", "hitlab"};
  app.set_version_flag("--version", HITLAB_VERSION);
  app.require_subcommand(1);
  hitlab::cli::RunConfig config;
  std::string precision = "auto";
  std::string seed_text = "42";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", config.output, "Output directory")->default_val(".");
    sub->add_option("--format", config.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--precision", precision, "Polynomial arithmetic")
        ->check(CLI::IsMember({"auto", "double", "extended", "rational"}));
    sub->add_option("--k-list", config.k_list, "Discretization sizes for continuous pieces")->delimiter(',');
    sub->add_option("--max-order", config.max_order, "Highest derivative order");
  };
  auto input = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--input,-i", config.input, "String specification (JSON)");
    if (required) opt->required();
  };

  auto* analyze = app.add_subcommand("analyze", "Polynomials, rates, factorization and density table");
  input(analyze, true);
  common(analyze);

  auto* classify = app.add_subcommand("classify", "Certified zero counts and shape class");
  input(classify, false);
  common(classify);
  classify->add_option("--gig", config.gig, "Generalized inverse Gaussian lambda,chi,psi");
  classify->add_option("--grid-points", config.grid_points, "Initial scan grid size");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo hitting times against the analytic law");
  input(simulate, true);
  common(simulate);
  simulate->add_option("--samples", config.samples, "Number of samples");
  simulate->add_option("--seed", seed_text, "Master seed");
  simulate->add_option("--workers", config.workers, "Worker threads (outputs do not depend on it)");

  auto* converge = app.add_subcommand("converge", "Discretization sequence of a continuous string");
  input(converge, true);
  common(converge);
  converge->add_option("--grid-points", config.grid_points, "Initial scan grid size");

  auto* sweep = app.add_subcommand("sweep", "Property campaign over seeded random strings");
  common(sweep);
  sweep->add_option("--count", config.count, "Number of random strings");
  sweep->add_option("--max-atoms", config.max_atoms, "Largest atom count")->check(CLI::Range(2, 64));
  sweep->add_option("--two-sided", config.two_sided, "Alternate one- and two-sided strings");
  std::size_t sweep_samples = 0;
  sweep->add_option("--samples", sweep_samples, "Monte Carlo samples per string (0 skips)");
  sweep->add_option("--seed", seed_text, "Master seed");
  sweep->add_option("--workers", config.workers, "Worker threads");
  sweep->add_option("--extra", config.extra, "Additional string files appended to the campaign");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what(), 2);
  }
  config.command = app.get_subcommands().front()->get_name();
  if (config.command == "sweep") config.samples = sweep_samples;

  try {
    config.precision = hitlab::parse_precision(precision);
    std::size_t used = 0;
    config.seed = std::stoull(seed_text, &used, 0);
    if (used != seed_text.size()) throw hitlab::InputError("--seed must be an integer");
  } catch (const std::logic_error& e) {
    return report_error("input", e.what(), 2);
  }
  try {
    return hitlab::cli::run(config);
  } catch (const hitlab::InputError& e) {
    return report_error("input", e.what(), 2);
  } catch (const hitlab::NumericalError& e) {
    return report_error("numerical", e.what(), 1);
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error("input", e.what(), 2);
  }
}
