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

#include <vector>

#include "cpforge/matrix.hpp"

namespace cpforge {

/** Inputs whose Hermitian asymmetry exceeds this are rejected by eigh. */
inline constexpr double kHermitianInputTol = 1e-10;

/** Default PSD tolerance: a matrix is treated as PSD when min eigenvalue >= -kPsdTol. */
inline constexpr double kPsdTol = 1e-10;

struct EigenResult {
  /** Descending. */
  std::vector<double> eigenvalues;
  /** Column k is the unit eigenvector for eigenvalues[k]. */
  ComplexMatrix eigenvectors;
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * The input is symmetrized as (M + M^dagger)/2 before iterating. Sweeps stop once
 * the off-diagonal Frobenius norm drops below 1e-14 ||M||_F or after 100 sweeps.
 * Throws NonHermitianInput when the asymmetry exceeds kHermitianInputTol
 * (relative to max(1, max|M_ij|)).
 */
EigenResult eigh(const ComplexMatrix& m);

/** Eigenvalues only (descending); same algorithm without accumulating vectors. */
std::vector<double> eigvalsh(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

inline bool is_psd(const ComplexMatrix& m, double tol = kPsdTol) {
  return min_eigenvalue(m) >= -tol;
}

}  // namespace cpforge
