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

#include "cpforge/ensemble.hpp"

#include <cmath>

namespace cpforge {

Channel random_tp_ncp_qubit_map(Rng& rng) {
  constexpr std::size_t n = 2;
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    ComplexMatrix b(n * n, n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      b(i, i) = 0.5 + 0.5 * normal(rng);
      for (std::size_t j = i + 1; j < n * n; ++j) {
        const Complex z(normal(rng), normal(rng));
        b(i, j) = 0.5 * z / std::sqrt(2.0);
        b(j, i) = std::conj(b(i, j));
      }
    }
    // Rows are indexed r' n + r (output first); tr_out B must be the identity.
    ComplexMatrix excess(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t rp = 0; rp < n; ++rp) excess(r, s) += b(rp * n + r, rp * n + s);
        if (r == s) excess(r, s) -= 1.0;
      }
    b -= kron(ComplexMatrix::identity(n), excess) * (1.0 / static_cast<double>(n));
    if (min_eigenvalue(b) < -1e-6) return Channel::from_b(std::move(b), n, n);
  }
}

DensityMatrix random_qubit_state(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::array<double, 3> dir{normal(rng), normal(rng), normal(rng)};
  const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  const double radius = std::cbrt(uniform(rng));
  for (double& v : dir) v *= radius / norm;
  return DensityMatrix::from_bloch(dir);
}

}  // namespace cpforge
