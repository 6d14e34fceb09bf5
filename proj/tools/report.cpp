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

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace cpforge::cli {

bool Assertion::pass() const {
  if (relation == Relation::kAtLeast) return actual >= expected - tol;
  return std::abs(actual - expected) <= tol;
}

void RunReport::expect(std::string name, std::string expression, double expected, double actual,
                       double tol) {
  assertions.push_back({std::move(name), std::move(expression), expected, actual, tol});
}

void RunReport::expect_at_least(std::string name, std::string expression, double bound,
                                double actual, double tol) {
  assertions.push_back(
      {std::move(name), std::move(expression), bound, actual, tol, Assertion::Relation::kAtLeast});
}

void RunReport::expect_true(std::string name, bool value) {
  assertions.push_back({std::move(name), "true", 1.0, value ? 1.0 : 0.0, 0.0});
}

void RunReport::expect_spectrum(const std::string& name,
                                std::vector<std::pair<std::string, double>> expected,
                                std::span<const double> actual, double tol) {
  std::stable_sort(expected.begin(), expected.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<double> got(actual.begin(), actual.end());
  std::sort(got.begin(), got.end(), std::greater<>());
  if (got.size() != expected.size()) {
    expect(name + ".size", std::to_string(expected.size()), static_cast<double>(expected.size()),
           static_cast<double>(got.size()), 0.0);
    return;
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    expect(name + "[" + std::to_string(i) + "]", expected[i].first, expected[i].second, got[i], tol);
  }
}

bool RunReport::all_pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.pass(); });
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  if (!assertions.empty()) {
    Json list = Json::array();
    for (const auto& a : assertions) {
      list.push_back({{"name", a.name},
                      {"relation", a.relation == Assertion::Relation::kAtLeast ? ">=" : "~="},
                      {"expression", a.expression},
                      {"expected", a.expected},
                      {"actual", a.actual},
                      {"tol", a.tol},
                      {"pass", a.pass()}});
    }
    j["assertions"] = std::move(list);
    j["all_pass"] = all_pass();
  }
  j["timing_ms"] = timing_ms;
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

void dump(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out << (std::isfinite(v) ? format_number(v) : "null");
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(key).dump() << ": ";
        dump(out, value, indent + 2);
      }
      out << '\n' << close << '}';
      break;
    }
    case Json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (j.empty()) {
        out << "[]";
      } else if (flat) {
        out << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          dump(out, j[i], indent);
        }
        out << ']';
      } else {
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ",\n";
          out << pad;
          dump(out, j[i], indent + 2);
        }
        out << '\n' << close << ']';
      }
      break;
    }
    default:
      out << j.dump();
  }
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) return format_number(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void flatten(std::ostream& out, const std::string& prefix, const Json& j) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(out, prefix.empty() ? key : prefix + "." + key, value);
    return;
  }
  if (j.is_array() && !std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(out, prefix + "." + std::to_string(i), j[i]);
    return;
  }
  out << prefix << ':';
  if (j.is_array()) {
    for (const auto& e : j) out << ' ' << scalar_text(e);
  } else {
    out << ' ' << scalar_text(j);
  }
  out << '\n';
}

}  // namespace

void write_json(std::ostream& out, const Json& j) {
  dump(out, j, 0);
  out << '\n';
}

void write_plain(std::ostream& out, const RunReport& report) {
  out << "command: " << report.command << '\n';
  flatten(out, "input", report.inputs);
  flatten(out, "output", report.outputs);
  for (const auto& a : report.assertions) {
    out << (a.pass() ? "PASS " : "FAIL ") << a.name << ": expected "
        << (a.relation == Assertion::Relation::kAtLeast ? ">= " : "") << a.expression << " = "
        << format_number(a.expected) << ", actual " << format_number(a.actual) << ", tol "
        << format_number(a.tol) << '\n';
  }
  if (!report.assertions.empty()) {
    const auto passed = std::count_if(report.assertions.begin(), report.assertions.end(),
                                      [](const auto& a) { return a.pass(); });
    out << "summary: " << passed << "/" << report.assertions.size() << " passed\n";
  }
}

}  // namespace cpforge::cli
