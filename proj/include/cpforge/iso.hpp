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

#include <cstddef>
#include <vector>

#include "cpforge/matrix.hpp"

namespace cpforge {

/** Tensor product of Pauli matrices, factor indices in {0 (I), 1 (x), 2 (y), 3 (z)}. */
struct PauliString {
  std::vector<int> factors;

  /** +1 for an even number of sigma_y factors, -1 otherwise. */
  int weight() const;
  ComplexMatrix matrix() const;
};

/**
 * Rescaled 3x3 Gell-Mann basis: index 0 is I/sqrt(3), indices 1..8 are the
 * standard lambda_1..lambda_8 divided by sqrt(2). lambda_2, lambda_5, lambda_7
 * are the complex (antisymmetric) members.
 */
const ComplexMatrix& gellmann(int index);
bool gellmann_is_complex(int index);

struct GellMannString {
  std::vector<int> factors;

  /** +1 for an even number of complex factors, -1 otherwise. */
  int weight() const;
  ComplexMatrix matrix() const;
};

/** sum_{i,j<d} |ii><jj|, the unnormalized maximally entangled projector on C^d (x) C^d. */
ComplexMatrix max_entangled_projector(std::size_t d);
/** sum_{i<d} |ii> as a column. */
ComplexMatrix max_entangled_vector(std::size_t d);

/** (1/2^n) sum over Pauli strings of w * sigma (x) sigma; 1 <= n <= 3. */
ComplexMatrix pauli_form(std::size_t qubits);

/** sum over Gell-Mann strings of w * lambda (x) lambda; 1 <= n <= 2. */
ComplexMatrix gellmann_form(std::size_t qutrits);

/**
 * SWAP network on 2k qubits taking (|00> + |11>)^{(x) k}, ordered as ebit pairs
 * (a_1 b_1)(a_2 b_2)..., to sum_{i<2^k} |i>|i>, where the first k qubits hold the
 * first qudit (big-endian). Built from pairwise SWAPs for even k and a cyclic
 * shift followed by SWAPs for odd k. Supports 2 <= k <= 4.
 */
ComplexMatrix ebit_merge_unitary(std::size_t k);

/** Permutation matrix exchanging qubits a and b (1-indexed, qubit 1 most significant). */
ComplexMatrix qubit_swap(std::size_t qubits, std::size_t a, std::size_t b);

}  // namespace cpforge
