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

#include "cpforge/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cpforge/errors.hpp"

namespace cpforge {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalRelTol = 1e-14;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

ComplexMatrix checked_symmetrize(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw DimensionMismatch("eigh: non-square " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  const double asym = m.hermitian_asymmetry();
  if (asym > kHermitianInputTol * std::max(1.0, m.max_abs())) {
    throw NonHermitianInput("eigh: asymmetry " + std::to_string(asym));
  }
  return m.hermitian_part();
}

// Cyclic Jacobi. Each rotation V acts on columns/rows p, q and zeroes a(p, q):
// the phase of a(p, q) is absorbed into column q, leaving a real symmetric 2x2
// problem solved by the classic rotation with t = tan(theta).
void jacobi(ComplexMatrix& a, ComplexMatrix* vectors) {
  const std::size_t n = a.rows();
  const double scale = a.frobenius_norm();
  if (scale == 0.0) return;
  const double target = kOffDiagonalRelTol * scale;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::sqrt(std::norm(apq));
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Rotation would be a no-op at working precision.
        if (sweep > 3 && g <= 1e-300 + 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / g;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * g);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // V = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) block.
        const Complex vpp = c;
        const Complex vpq = s;
        const Complex vqp = -s * std::conj(phase);
        const Complex vqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (vectors != nullptr) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = vkp * vpp + vkq * vqp;
            v(k, q) = vkp * vpq + vkq * vqq;
          }
        }
      }
    }
  }
}

std::vector<std::size_t> descending_order(const ComplexMatrix& a) {
  std::vector<std::size_t> order(a.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  return order;
}

}  // namespace

EigenResult eigh(const ComplexMatrix& m) {
  ComplexMatrix a = checked_symmetrize(m);
  ComplexMatrix v = ComplexMatrix::identity(a.rows());
  jacobi(a, &v);

  const auto order = descending_order(a);
  EigenResult out;
  out.eigenvalues.reserve(order.size());
  out.eigenvectors = ComplexMatrix(a.rows(), a.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real());
    for (std::size_t r = 0; r < a.rows(); ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& m) {
  ComplexMatrix a = checked_symmetrize(m);
  jacobi(a, nullptr);
  std::vector<double> values;
  values.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) values.push_back(a(i, i).real());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const auto values = eigvalsh(m);
  if (values.empty()) throw DimensionMismatch("min_eigenvalue of empty matrix");
  return values.back();
}

}  // namespace cpforge
