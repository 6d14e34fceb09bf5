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

#include "cpforge/iso.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "cpforge/errors.hpp"

namespace cpforge {

namespace {

// All index strings of the given length over {0, ..., base-1}, first index most significant.
std::vector<std::vector<int>> index_strings(std::size_t length, int base) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) count *= static_cast<std::size_t>(base);
  std::vector<std::vector<int>> out(count, std::vector<int>(length));
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c;
    for (std::size_t i = length; i-- > 0;) {
      out[c][i] = static_cast<int>(rest % static_cast<std::size_t>(base));
      rest /= static_cast<std::size_t>(base);
    }
  }
  return out;
}

// New position i holds old qubit order[i] (both 0-indexed, qubit 0 most significant).
ComplexMatrix qubit_permutation(std::size_t qubits, const std::vector<std::size_t>& order) {
  const std::size_t dim = std::size_t{1} << qubits;
  ComplexMatrix u(dim, dim);
  for (std::size_t in = 0; in < dim; ++in) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < qubits; ++i) {
      const std::size_t bit = (in >> (qubits - 1 - order[i])) & 1U;
      out |= bit << (qubits - 1 - i);
    }
    u(out, in) = 1.0;
  }
  return u;
}

}  // namespace

int PauliString::weight() const {
  return std::count(factors.begin(), factors.end(), 2) % 2 == 0 ? 1 : -1;
}

ComplexMatrix PauliString::matrix() const {
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (int f : factors) m = kron(m, pauli(f));
  return m;
}

const ComplexMatrix& gellmann(int index) {
  using namespace std::complex_literals;
  static const std::array<ComplexMatrix, 9> kBasis = [] {
    const double s2 = 1.0 / std::sqrt(2.0);
    const double s3 = 1.0 / std::sqrt(3.0);
    const Complex i = 1i;
    std::array<ComplexMatrix, 9> b = {
        ComplexMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
        ComplexMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}},
        ComplexMatrix{{0, -i, 0}, {i, 0, 0}, {0, 0, 0}},
        ComplexMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
        ComplexMatrix{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
        ComplexMatrix{{0, 0, -i}, {0, 0, 0}, {i, 0, 0}},
        ComplexMatrix{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},
        ComplexMatrix{{0, 0, 0}, {0, 0, -i}, {0, i, 0}},
        ComplexMatrix{{s3, 0, 0}, {0, s3, 0}, {0, 0, -2.0 * s3}},
    };
    b[0] *= s3;
    for (std::size_t k = 1; k < b.size(); ++k) b[k] *= s2;
    return b;
  }();
  if (index < 0 || index > 8) throw DimensionMismatch("gellmann: index out of range");
  return kBasis[static_cast<std::size_t>(index)];
}

bool gellmann_is_complex(int index) { return index == 2 || index == 5 || index == 7; }

int GellMannString::weight() const {
  const auto complex_count = std::count_if(factors.begin(), factors.end(), gellmann_is_complex);
  return complex_count % 2 == 0 ? 1 : -1;
}

ComplexMatrix GellMannString::matrix() const {
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (int f : factors) m = kron(m, gellmann(f));
  return m;
}

ComplexMatrix max_entangled_vector(std::size_t d) {
  ComplexMatrix v(d * d, 1);
  for (std::size_t i = 0; i < d; ++i) v(i * d + i, 0) = 1.0;
  return v;
}

ComplexMatrix max_entangled_projector(std::size_t d) {
  const ComplexMatrix v = max_entangled_vector(d);
  return outer(v, v);
}

ComplexMatrix pauli_form(std::size_t qubits) {
  if (qubits < 1 || qubits > 3) throw DimensionMismatch("pauli_form supports 1 to 3 qubits");
  const std::size_t d = std::size_t{1} << qubits;
  ComplexMatrix sum(d * d, d * d);
  for (auto& factors : index_strings(qubits, 4)) {
    const PauliString s{std::move(factors)};
    const ComplexMatrix m = s.matrix();
    sum += static_cast<double>(s.weight()) * kron(m, m);
  }
  sum *= 1.0 / static_cast<double>(d);
  return sum;
}

ComplexMatrix gellmann_form(std::size_t qutrits) {
  if (qutrits < 1 || qutrits > 2) throw DimensionMismatch("gellmann_form supports 1 or 2 qutrits");
  std::size_t d = 1;
  for (std::size_t i = 0; i < qutrits; ++i) d *= 3;
  ComplexMatrix sum(d * d, d * d);
  for (auto& factors : index_strings(qutrits, 9)) {
    const GellMannString s{std::move(factors)};
    const ComplexMatrix m = s.matrix();
    sum += static_cast<double>(s.weight()) * kron(m, m);
  }
  return sum;
}

ComplexMatrix qubit_swap(std::size_t qubits, std::size_t a, std::size_t b) {
  if (a < 1 || b < 1 || a > qubits || b > qubits) throw DimensionMismatch("qubit_swap: bad label");
  std::vector<std::size_t> order(qubits);
  std::iota(order.begin(), order.end(), 0);
  std::swap(order[a - 1], order[b - 1]);
  return qubit_permutation(qubits, order);
}

ComplexMatrix ebit_merge_unitary(std::size_t k) {
  if (k < 2 || k > 4) throw UnsupportedK("ebit_merge_unitary supports 2 <= k <= 4, got " + std::to_string(k));
  const std::size_t n = 2 * k;
  const std::size_t half = n / 2;
  ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << n);

  if (k % 2 == 0) {
    // SWAP_{n/2, n-1} ... SWAP_{4, n/2+3} SWAP_{2, n/2+1}; the swaps are disjoint.
    for (std::size_t j = 0; half >= 2 + 2 * j; ++j) {
      u = qubit_swap(n, half - 2 * j, n - 1 - 2 * j) * u;
    }
    return u;
  }

  // Odd k: move qubit n/2+1 behind qubits n/2+2..n, then pair up with SWAPs.
  std::vector<std::size_t> order;
  for (std::size_t q = 0; q < n; ++q)
    if (q != half) order.push_back(q);
  order.push_back(half);
  u = qubit_permutation(n, order);
  for (std::size_t j = 0; half >= 3 + 2 * j; ++j) {
    u = qubit_swap(n, half - 1 - 2 * j, n - 2 - 2 * j) * u;
  }
  return u;
}

}  // namespace cpforge
