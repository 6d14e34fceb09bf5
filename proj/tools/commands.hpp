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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace cpforge::cli {

RunReport cmd_check(const std::filesystem::path& channel_file, double tol);

struct OptimizeOptions {
  std::string objective = "m1";  // m1 | fid-in | fid-out
  std::string mode = "cube";      // cube | nonneg | bounded
  std::size_t grid = 21;
  std::size_t refinement = 8;
  double tol = 1e-10;
  std::optional<std::filesystem::path> trace_csv;
};

RunReport cmd_optimize(const std::filesystem::path& channel_file, const OptimizeOptions& options);

/** Scripted reproductions of the worked examples; ids from paper_example_ids(). */
RunReport cmd_paper(const std::string& example_id);
const std::vector<std::string>& paper_example_ids();

/** fidelity-theta | bloch-image | robust-domain. */
RunReport cmd_plotdata(const std::string& scenario, const std::filesystem::path& out);
const std::vector<std::string>& plot_scenarios();

/** Property run over seeded random single-qubit TP NCP maps. */
RunReport cmd_ensemble(std::uint64_t seed, std::size_t count);

}  // namespace cpforge::cli
