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

#include <array>

#include "cpforge/channel.hpp"
#include "cpforge/maps.hpp"

namespace cpforge {

using BlochVector = std::array<double, 3>;

/** Fidelity radicands in (-kRadicandClamp, 0) are clamped to 0; below that DomainError. */
inline constexpr double kRadicandClamp = 1e-6;

/** r_i = tr(rho sigma_i) for a 2x2 matrix. */
BlochVector bloch_vector(const ComplexMatrix& rho);
BlochVector bloch_vector(const DensityMatrix& rho);

/** (1 / 3n) * sum |c_i| over all 3n factors. */
double m1(const DepolarizerParams& params);

/**
 * 1/2 {1 + r . D r' + sqrt[(1 - r.r)(1 - r'.D^2 r')]}, D = diag(alpha, beta, gamma),
 * r = Bloch(rho), r' = Bloch(map(rho)). Single qubit only.
 */
double fidelity_vs_input(const DensityMatrix& rho, const Channel& map,
                         const DepolarizerParams& adm_params);

/** As above with r' in both slots: 1/2 {1 + r'.D r' + sqrt[(1 - r'.r')(1 - r'.D^2 r')]}. */
double fidelity_vs_map_output(const DensityMatrix& rho, const Channel& map,
                              const DepolarizerParams& adm_params);

/** Bloch-vector forms of the two fidelities; `clamp_all` clamps any negative radicand. */
double fidelity_from_bloch(const BlochVector& r, const BlochVector& r_image,
                           const DepolarizerTriple& d, bool clamp_all = false);
double fidelity_output_from_bloch(const BlochVector& r_image, const DepolarizerTriple& d,
                                  bool clamp_all = false);

/** Operator-sum weights (kappa_0, kappa_x, kappa_y, kappa_z) of a Pauli channel. */
class PauliChannelWeights {
 public:
  /** Throws WeightSumError unless the weights sum to 1 within 1e-12. */
  explicit PauliChannelWeights(const std::array<double, 4>& kappa);

  const std::array<double, 4>& kappa() const { return kappa_; }

 private:
  std::array<double, 4> kappa_;
};

/** ((1+a+b+g), (1+a-b-g), (1-a+b-g), (1-a-b+g)) / 4. */
PauliChannelWeights pauli_weights(const DepolarizerTriple& t);

/** sum_i |kappa1_i - kappa2_i|. */
double pauli_diamond_distance(const PauliChannelWeights& a, const PauliChannelWeights& b);

/** 1 - tr(rho^2). */
double linear_entropy(const ComplexMatrix& rho);
double linear_entropy(const DensityMatrix& rho);

}  // namespace cpforge
