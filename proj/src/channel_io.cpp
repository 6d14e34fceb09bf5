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

#include "cpforge/channel_io.hpp"

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "cpforge/errors.hpp"
#include "cpforge/maps.hpp"

namespace cpforge {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("channel file: expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("channel file: missing \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + ": expected a number");
  return j.get<double>();
}

std::size_t dimension(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(std::string("channel file: \"") + key + "\" must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

template <std::size_t N>
std::array<double, N> fixed_vector(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != N) {
    throw ParseError(what + ": expected " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], what);
  return out;
}

void expect_shape(const ComplexMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                     std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

Channel family_from_json(const json& j) {
  const json& family = field(j, "family");
  if (!family.is_string()) throw ParseError("channel file: \"family\" must be a string");
  const std::string name = family.get<std::string>();
  if (name == "adm") {
    const json& params = field(j, "params");
    if (!params.is_array() || params.empty()) throw ParseError("adm: \"params\" must be a non-empty list");
    std::vector<DepolarizerTriple> triples;
    for (const auto& t : params) triples.push_back(fixed_vector<3>(t, "adm params"));
    AdmOptions options;
    if (const auto it = j.find("allow_unphysical"); it != j.end()) {
      if (!it->is_boolean()) throw ParseError("adm: \"allow_unphysical\" must be a boolean");
      options.allow_unphysical = it->get<bool>();
    }
    return adm(DepolarizerParams(std::move(triples)), options);
  }
  if (name == "translation") return translation(fixed_vector<3>(field(j, "offset"), "translation offset"));
  if (name == "robust") return robust_map(number(field(j, "kappa"), "robust kappa"));
  throw ParseError("channel file: unknown family \"" + name + "\"");
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix: rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError("matrix: entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

json channel_to_json(const Channel& c) {
  json j;
  j["rep"] = std::string(to_string(c.source()));
  j["dim_in"] = c.dim_in();
  j["dim_out"] = c.dim_out();
  j["trace_preserving"] = c.trace_preserving();
  switch (c.source()) {
    case Representation::kAMatrix:
      j["data"] = matrix_to_json(c.a_matrix());
      break;
    case Representation::kBMatrix:
      j["data"] = matrix_to_json(c.b_matrix());
      break;
    case Representation::kChoi:
      j["data"] = matrix_to_json(choi(c));
      break;
    case Representation::kSignedKraus: {
      json ops = json::array();
      for (const auto& k : c.kraus()) ops.push_back({{"eta", k.eta}, {"matrix", matrix_to_json(k.op)}});
      j["data"] = std::move(ops);
      break;
    }
  }
  return j;
}

Channel channel_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("channel file: expected a JSON object");
  if (j.contains("family")) return family_from_json(j);

  const json& rep_field = field(j, "rep");
  if (!rep_field.is_string()) throw ParseError("channel file: \"rep\" must be a string");
  const std::string rep = rep_field.get<std::string>();
  const json& data = field(j, "data");

  std::optional<Channel> channel;
  if (rep == "kraus") {
    if (!data.is_array() || data.empty()) throw ParseError("kraus: \"data\" must be a non-empty list");
    SignedKraus ops;
    for (const auto& item : data) {
      const json& eta = field(item, "eta");
      if (!eta.is_number_integer() || (eta.get<int>() != 1 && eta.get<int>() != -1)) {
        throw ParseError("kraus: \"eta\" must be 1 or -1");
      }
      ops.push_back({eta.get<int>(), matrix_from_json(field(item, "matrix"))});
    }
    for (const auto& op : ops) expect_shape(op.op, ops[0].op.rows(), ops[0].op.cols(), "kraus operator");
    if (j.contains("dim_in")) expect_shape(ops[0].op, dimension(j, "dim_out"), dimension(j, "dim_in"), "kraus operator");
    channel = Channel::from_kraus(std::move(ops));
  } else {
    const std::size_t n = dimension(j, "dim_in");
    const std::size_t m = dimension(j, "dim_out");
    ComplexMatrix mat = matrix_from_json(data);
    if (rep == "a") {
      expect_shape(mat, m * m, n * n, "A-matrix");
      channel = Channel::from_a(std::move(mat), n, m);
    } else if (rep == "b") {
      expect_shape(mat, m * n, m * n, "B-matrix");
      channel = Channel::from_b(std::move(mat), n, m);
    } else if (rep == "choi") {
      expect_shape(mat, m * n, m * n, "Choi matrix");
      channel = Channel::from_choi(std::move(mat), n, m);
    } else {
      throw ParseError("channel file: unknown rep \"" + rep + "\"");
    }
  }

  if (const auto it = j.find("trace_preserving"); it != j.end() && !it->is_null()) {
    if (!it->is_boolean()) throw ParseError("channel file: \"trace_preserving\" must be a boolean or null");
    if (it->get<bool>() && !channel->trace_preserving()) {
      throw ParseError("channel file declares trace preservation but the residual is " +
                       std::to_string(channel->trace_preservation_residual()));
    }
  }
  return *channel;
}

std::string channel_to_string(const Channel& c) { return channel_to_json(c).dump(2); }

Channel channel_from_string(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("channel file: ") + e.what());
  }
  return channel_from_json(j);
}

Channel load_channel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return channel_from_string(buffer.str());
}

void save_channel(const Channel& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << channel_to_string(c) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace cpforge
