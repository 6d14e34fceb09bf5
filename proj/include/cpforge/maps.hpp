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
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cpforge/channel.hpp"

namespace cpforge {

/** Bloch-axis scale factors (alpha, beta, gamma) of one qubit's depolarizer. */
using DepolarizerTriple = std::array<double, 3>;

/**
 * Per-qubit scale factors of a local asymmetric depolarizer.
 *
 * The factors multiply the Bloch components: (x, y, z) -> (alpha x, beta y, gamma z).
 * The SPA mixing probability p corresponds to the symmetric triple (1-p, 1-p, 1-p).
 */
class DepolarizerParams {
 public:
  DepolarizerParams() = default;
  explicit DepolarizerParams(std::vector<DepolarizerTriple> per_qubit);
  DepolarizerParams(std::initializer_list<DepolarizerTriple> per_qubit);

  static DepolarizerParams symmetric(double tau, std::size_t qubits = 1);
  /** Inverse of flat(): consecutive triples. */
  static DepolarizerParams from_flat(std::span<const double> values);

  std::size_t qubits() const { return per_qubit_.size(); }
  const std::vector<DepolarizerTriple>& per_qubit() const { return per_qubit_; }
  const DepolarizerTriple& operator[](std::size_t q) const { return per_qubit_[q]; }
  /** alpha_1, beta_1, gamma_1, alpha_2, ... */
  std::vector<double> flat() const;

  friend bool operator==(const DepolarizerParams&, const DepolarizerParams&) = default;

 private:
  std::vector<DepolarizerTriple> per_qubit_;
};

/** Componentwise product: composing two depolarizers multiplies their factors. */
DepolarizerParams operator*(const DepolarizerParams& a, const DepolarizerParams& b);

/** |gamma + alpha| <= 1 + beta and |gamma - alpha| <= 1 - beta for every qubit. */
bool fujiwara_algoet_valid(const DepolarizerParams& params, double tol = 0.0);

/** Eigenvalues of the single-qubit depolarizer B-matrix, in closed form. */
std::array<double, 4> adm_b_eigenvalues(const DepolarizerTriple& t);

struct AdmOptions {
  /** Accept |factor| > 1 (inverse maps); otherwise ParamOutOfRange. */
  bool allow_unphysical = false;
};

/**
 * Local asymmetric depolarizer. Single-qubit A-matrix
 *   1/2 [[1+g, 0, 0, 1-g], [0, a+b, a-b, 0], [0, a-b, a+b, 0], [1-g, 0, 0, 1+g]],
 * multi-qubit maps via extend_local. Invalid (non-CP) factors are allowed.
 */
Channel adm(const DepolarizerParams& params, AdmOptions options = {});
Channel adm(const DepolarizerTriple& triple, AdmOptions options = {});

/** adm(tau, tau, tau) on each qubit; tau in [0, 1]. */
Channel symmetric_depolarizer(double tau, std::size_t qubits = 1);

/** rho -> tr(rho) I / d on `qubits` qubits. */
Channel completely_depolarizing(std::size_t qubits = 1);

/** Bloch translation (x, y, z) -> (x + x0, y + y0, z + z0). */
Channel translation(const std::array<double, 3>& offset);

/**
 * A-matrix [[k, k, k, k], [k, 0, k, 0], [k, k, 0, 0], [1-k, -k, -k, 1-k]].
 * Trace-preserving; NCP for k > (3 - sqrt 5)/2. Requires k > 0.
 */
Channel robust_map(double kappa);

/** Channel with A-matrix A^{-1}. No promise of complete positivity. */
Channel invert(const Channel& c);

}  // namespace cpforge
