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

#include "cpforge/maps.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cpforge/errors.hpp"

namespace cpforge {

DepolarizerParams::DepolarizerParams(std::vector<DepolarizerTriple> per_qubit)
    : per_qubit_(std::move(per_qubit)) {}

DepolarizerParams::DepolarizerParams(std::initializer_list<DepolarizerTriple> per_qubit)
    : per_qubit_(per_qubit) {}

DepolarizerParams DepolarizerParams::symmetric(double tau, std::size_t qubits) {
  return DepolarizerParams(std::vector<DepolarizerTriple>(qubits, {tau, tau, tau}));
}

DepolarizerParams DepolarizerParams::from_flat(std::span<const double> values) {
  if (values.size() % 3 != 0) throw DimensionMismatch("depolarizer params: length not a multiple of 3");
  std::vector<DepolarizerTriple> triples;
  for (std::size_t i = 0; i < values.size(); i += 3) {
    triples.push_back({values[i], values[i + 1], values[i + 2]});
  }
  return DepolarizerParams(std::move(triples));
}

std::vector<double> DepolarizerParams::flat() const {
  std::vector<double> out;
  out.reserve(3 * per_qubit_.size());
  for (const auto& t : per_qubit_) out.insert(out.end(), t.begin(), t.end());
  return out;
}

DepolarizerParams operator*(const DepolarizerParams& a, const DepolarizerParams& b) {
  if (a.qubits() != b.qubits()) throw DimensionMismatch("depolarizer product: qubit counts differ");
  std::vector<DepolarizerTriple> out(a.qubits());
  for (std::size_t q = 0; q < a.qubits(); ++q)
    for (std::size_t i = 0; i < 3; ++i) out[q][i] = a[q][i] * b[q][i];
  return DepolarizerParams(std::move(out));
}

bool fujiwara_algoet_valid(const DepolarizerParams& params, double tol) {
  for (const auto& [alpha, beta, gamma] : params.per_qubit()) {
    if (std::abs(gamma + alpha) > 1.0 + beta + tol) return false;
    if (std::abs(gamma - alpha) > 1.0 - beta + tol) return false;
  }
  return true;
}

std::array<double, 4> adm_b_eigenvalues(const DepolarizerTriple& t) {
  const auto [alpha, beta, gamma] = t;
  return {0.5 * (1.0 + gamma + alpha + beta), 0.5 * (1.0 + gamma - alpha - beta),
          0.5 * (1.0 - gamma + alpha - beta), 0.5 * (1.0 - gamma - alpha + beta)};
}

namespace {

ComplexMatrix adm_a_matrix(const DepolarizerTriple& t, const AdmOptions& options) {
  const auto [alpha, beta, gamma] = t;
  if (!options.allow_unphysical) {
    for (double v : t) {
      if (!(std::abs(v) <= 1.0)) {
        throw ParamOutOfRange("depolarizer factor " + std::to_string(v) + " outside [-1, 1]");
      }
    }
  }
  return ComplexMatrix{
      {0.5 * (1.0 + gamma), 0.0, 0.0, 0.5 * (1.0 - gamma)},
      {0.0, 0.5 * (alpha + beta), 0.5 * (alpha - beta), 0.0},
      {0.0, 0.5 * (alpha - beta), 0.5 * (alpha + beta), 0.0},
      {0.5 * (1.0 - gamma), 0.0, 0.0, 0.5 * (1.0 + gamma)},
  };
}

}  // namespace

Channel adm(const DepolarizerTriple& triple, AdmOptions options) {
  return Channel::from_a(adm_a_matrix(triple, options), 2, 2);
}

Channel adm(const DepolarizerParams& params, AdmOptions options) {
  if (params.qubits() == 0) throw DimensionMismatch("adm: no qubits");
  if (params.qubits() == 1) return adm(params[0], options);
  std::vector<Channel> locals;
  locals.reserve(params.qubits());
  for (const auto& t : params.per_qubit()) locals.push_back(adm(t, options));
  return extend_local(locals);
}

Channel symmetric_depolarizer(double tau, std::size_t qubits) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ParamOutOfRange("symmetric depolarizer scale " + std::to_string(tau) + " outside [0, 1]");
  }
  return adm(DepolarizerParams::symmetric(tau, qubits));
}

Channel completely_depolarizing(std::size_t qubits) {
  return adm(DepolarizerParams::symmetric(0.0, qubits));
}

Channel translation(const std::array<double, 3>& offset) {
  using namespace std::complex_literals;
  const auto [x0, y0, z0] = offset;
  const Complex lower = 0.5 * (x0 - 1i * y0);
  const Complex upper = 0.5 * (x0 + 1i * y0);
  return Channel::from_a(
      ComplexMatrix{
          {1.0 + 0.5 * z0, 0.0, 0.0, 0.5 * z0},
          {lower, 1.0, 0.0, lower},
          {upper, 0.0, 1.0, upper},
          {-0.5 * z0, 0.0, 0.0, 1.0 - 0.5 * z0},
      },
      2, 2);
}

Channel robust_map(double kappa) {
  if (!(kappa > 0.0)) throw ParamOutOfRange("robust map requires kappa > 0");
  const double k = kappa;
  return Channel::from_a(
      ComplexMatrix{
          {k, k, k, k},
          {k, 0.0, k, 0.0},
          {k, k, 0.0, 0.0},
          {1.0 - k, -k, -k, 1.0 - k},
      },
      2, 2);
}

Channel invert(const Channel& c) {
  if (c.dim_in() != c.dim_out()) throw DimensionMismatch("invert: map changes dimension");
  ComplexMatrix inv = inverse(c.a_matrix());
  return Channel::from_a(std::move(inv), c.dim_in(), c.dim_out());
}

}  // namespace cpforge
