// Copyright 2026 The cpforge Authors
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

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "cpforge/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace cpforge::cli;

  CLI::App app{"cpforge: complete-positivity checks and depolarizer repair for qubit maps"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a JSON report");
  app.fallthrough();

  std::string file;
  double tol = 1e-10;
  auto* check = app.add_subcommand("check", "CP verdict, B-spectrum and trace preservation of a channel file");
  check->add_option("file", file, "Channel JSON file")->required();
  check->add_option("--tol", tol, "PSD tolerance")->capture_default_str();

  OptimizeOptions opt;
  auto* optimize = app.add_subcommand("optimize", "Search depolarizer factors that make a map CP");
  optimize->add_option("file", file, "Channel JSON file")->required();
  optimize->add_option("--objective", opt.objective, "m1 | fid-in | fid-out")
      ->check(CLI::IsMember({"m1", "fid-in", "fid-out"}))
      ->capture_default_str();
  optimize->add_option("--mode", opt.mode, "cube | nonneg | bounded")
      ->check(CLI::IsMember({"cube", "nonneg", "bounded"}))
      ->capture_default_str();
  optimize->add_option("--grid", opt.grid, "Grid points per axis")->check(CLI::Range(3, 1001))->capture_default_str();
  optimize->add_option("--refinement", opt.refinement, "Simplex restarts per seed")->capture_default_str();
  optimize->add_option("--tol", opt.tol, "PSD tolerance")->capture_default_str();
  std::string trace;
  optimize->add_option("--trace", trace, "Write the refinement trace as CSV");

  std::string example;
  auto* paper = app.add_subcommand("paper", "Reproduce a worked example and check it");
  paper->add_option("example", example, "Example id")->required()->check(CLI::IsMember(paper_example_ids()));

  std::string scenario;
  std::string out_path;
  auto* plotdata = app.add_subcommand("plotdata", "Write plot data as CSV");
  plotdata->add_option("scenario", scenario, "Scenario")->required()->check(CLI::IsMember(plot_scenarios()));
  plotdata->add_option("--out", out_path, "Output CSV path")->required();

  std::uint64_t seed = 1;
  std::size_t count = 20;
  auto* ensemble = app.add_subcommand("ensemble", "Property checks over seeded random NCP maps");
  ensemble->add_option("--seed", seed, "RNG seed")->capture_default_str();
  ensemble->add_option("--count", count, "Number of maps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  try {
    if (check->parsed()) {
      report = cmd_check(file, tol);
    } else if (optimize->parsed()) {
      if (!trace.empty()) opt.trace_csv = trace;
      report = cmd_optimize(file, opt);
    } else if (paper->parsed()) {
      report = cmd_paper(example);
    } else if (plotdata->parsed()) {
      report = cmd_plotdata(scenario, out_path);
    } else {
      report = cmd_ensemble(seed, count);
    }
  } catch (const cpforge::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (json) {
    write_json(std::cout, report.to_json());
  } else {
    write_plain(std::cout, report);
  }
  return report.all_pass() ? kExitOk : kExitAssertion;
}
