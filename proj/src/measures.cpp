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

#include "cpforge/measures.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cpforge/errors.hpp"

namespace cpforge {

namespace {

double dot(const BlochVector& a, const BlochVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

BlochVector scale(const DepolarizerTriple& d, const BlochVector& r) {
  return {d[0] * r[0], d[1] * r[1], d[2] * r[2]};
}

// 1 - |r|^2 for a unit r carries a few ulp of noise, which the square root
// would amplify to ~1e-8.
constexpr double kRoundingRadicand = 8.0 * std::numeric_limits<double>::epsilon();

double clamp_radicand(double v, bool clamp_all) {
  if (std::abs(v) <= kRoundingRadicand) return 0.0;
  if (v >= 0.0) return v;
  if (clamp_all || v > -kRadicandClamp) return 0.0;
  throw DomainError("fidelity radicand " + std::to_string(v) + " is negative");
}

const DepolarizerTriple& single_triple(const DepolarizerParams& p) {
  if (p.qubits() != 1) throw DimensionMismatch("fidelity measures are single-qubit only");
  return p[0];
}

void require_qubit(const Channel& map, const DensityMatrix& rho) {
  if (map.dim_in() != 2 || map.dim_out() != 2 || rho.dim() != 2) {
    throw DimensionMismatch("fidelity measures are single-qubit only");
  }
}

}  // namespace

BlochVector bloch_vector(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionMismatch("bloch_vector: not 2x2");
  // tr(rho sigma_x) = 2 Re rho_01, tr(rho sigma_y) = -2 Im rho_01 (Hermitian rho).
  return {(rho(0, 1) + rho(1, 0)).real(), (Complex(0.0, 1.0) * (rho(0, 1) - rho(1, 0))).real(),
          (rho(0, 0) - rho(1, 1)).real()};
}

BlochVector bloch_vector(const DensityMatrix& rho) { return bloch_vector(rho.matrix()); }

double m1(const DepolarizerParams& params) {
  if (params.qubits() == 0) throw DimensionMismatch("m1: no parameters");
  double s = 0.0;
  for (const auto& t : params.per_qubit())
    for (double c : t) s += std::abs(c);
  return s / (3.0 * static_cast<double>(params.qubits()));
}

double fidelity_from_bloch(const BlochVector& r, const BlochVector& r_image,
                           const DepolarizerTriple& d, bool clamp_all) {
  const BlochVector dr = scale(d, r_image);
  const double left = clamp_radicand(1.0 - dot(r, r), clamp_all);
  const double right = clamp_radicand(1.0 - dot(dr, dr), clamp_all);
  return 0.5 * (1.0 + dot(r, dr) + std::sqrt(left * right));
}

double fidelity_output_from_bloch(const BlochVector& r_image, const DepolarizerTriple& d,
                                  bool clamp_all) {
  return fidelity_from_bloch(r_image, r_image, d, clamp_all);
}

double fidelity_vs_input(const DensityMatrix& rho, const Channel& map,
                         const DepolarizerParams& adm_params) {
  require_qubit(map, rho);
  const BlochVector r = bloch_vector(rho);
  const BlochVector r_image = bloch_vector(apply(map, rho.matrix()));
  return fidelity_from_bloch(r, r_image, single_triple(adm_params));
}

double fidelity_vs_map_output(const DensityMatrix& rho, const Channel& map,
                              const DepolarizerParams& adm_params) {
  require_qubit(map, rho);
  const BlochVector r_image = bloch_vector(apply(map, rho.matrix()));
  return fidelity_output_from_bloch(r_image, single_triple(adm_params));
}

PauliChannelWeights::PauliChannelWeights(const std::array<double, 4>& kappa) : kappa_(kappa) {
  const double sum = kappa[0] + kappa[1] + kappa[2] + kappa[3];
  if (!(std::abs(sum - 1.0) <= 1e-12)) {
    throw WeightSumError("Pauli weights sum to " + std::to_string(sum));
  }
}

PauliChannelWeights pauli_weights(const DepolarizerTriple& t) {
  const auto [a, b, g] = t;
  return PauliChannelWeights({0.25 * (1.0 + a + b + g), 0.25 * (1.0 + a - b - g),
                              0.25 * (1.0 - a + b - g), 0.25 * (1.0 - a - b + g)});
}

double pauli_diamond_distance(const PauliChannelWeights& a, const PauliChannelWeights& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::abs(a.kappa()[i] - b.kappa()[i]);
  return s;
}

double linear_entropy(const ComplexMatrix& rho) { return 1.0 - (rho * rho).trace().real(); }

double linear_entropy(const DensityMatrix& rho) { return linear_entropy(rho.matrix()); }

}  // namespace cpforge
