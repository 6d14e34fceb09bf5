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

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cpforge::cli {

using Json = nlohmann::ordered_json;

/** One scripted comparison of a computed value against an exact expression. */
struct Assertion {
  enum class Relation { kNear, kAtLeast };

  std::string name;
  std::string expression;
  double expected = 0.0;
  double actual = 0.0;
  double tol = 1e-9;
  Relation relation = Relation::kNear;

  bool pass() const;
};

inline constexpr double kAssertTol = 1e-9;

/** Result of one CLI command: echoed inputs, outputs, assertions and wall-clock time. */
struct RunReport {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::vector<Assertion> assertions;
  double timing_ms = 0.0;

  void expect(std::string name, std::string expression, double expected, double actual,
              double tol = kAssertTol);
  /** Passes when actual >= bound - tol. */
  void expect_at_least(std::string name, std::string expression, double bound, double actual,
                       double tol = kAssertTol);
  void expect_true(std::string name, bool value);
  /** Compares sorted spectra; `expected` holds (expression, value) pairs in any order. */
  void expect_spectrum(const std::string& name, std::vector<std::pair<std::string, double>> expected,
                       std::span<const double> actual, double tol = kAssertTol);

  bool all_pass() const;
  Json to_json() const;
};

/** 15 significant digits; non-finite values print as nan / inf / -inf. */
std::string format_number(double v);

/** JSON with every float at 15 significant digits (non-finite floats become null). */
void write_json(std::ostream& out, const Json& j);

/**
 * Line format: `key: value` with nested keys joined by dots and scalar arrays
 * space-separated, then one `PASS|FAIL name: ...` line per assertion. Timing is
 * left out so the output is stable.
 */
void write_plain(std::ostream& out, const RunReport& report);

}  // namespace cpforge::cli
