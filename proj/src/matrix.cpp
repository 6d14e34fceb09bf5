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

#include "cpforge/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "cpforge/errors.hpp"

namespace cpforge {

namespace {

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionMismatch("ComplexMatrix: " + std::to_string(entries_.size()) +
                            " entries for shape " + std::to_string(rows_) + "x" +
                            std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of non-square " + shape(*this));
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermitian_asymmetry() const {
  if (!is_square()) throw DimensionMismatch("hermitian check of non-square " + shape(*this));
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return is_square() && hermitian_asymmetry() <= tol;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  if (!is_square()) throw DimensionMismatch("hermitian part of non-square " + shape(*this));
  ComplexMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionMismatch("operator*: " + shape(lhs) + " times " + shape(rhs));
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

ComplexMatrix vec(const ComplexMatrix& m) {
  return ComplexMatrix(m.size(), 1, std::vector<Complex>(m.entries().begin(), m.entries().end()));
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols || (v.cols() != 1 && v.rows() != 1)) {
    throw DimensionMismatch("unvec: " + shape(v) + " cannot become " + std::to_string(rows) +
                            "x" + std::to_string(cols));
  }
  return ComplexMatrix(rows, cols, std::vector<Complex>(v.entries().begin(), v.entries().end()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      if (x == Complex(0.0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.cols() != 1 || v.cols() != 1) throw DimensionMismatch("outer: expects column vectors");
  return u * v.adjoint();
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows()) {
    throw DimensionMismatch("solve: " + shape(a) + " with rhs " + shape(b));
  }
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  const double scale = std::max(a.max_abs(), 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) pivot = r;
    if (std::abs(lu(pivot, k)) <= 1e-14 * scale) throw DimensionMismatch("solve: singular matrix");
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(pivot, c));
      for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(k, c), x(pivot, c));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu(r, k) / lu(k, k);
      if (f == Complex(0.0)) continue;
      for (std::size_t c = k; c < n; ++c) lu(r, c) -= f * lu(k, c);
      for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) -= f * x(k, c);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      Complex s = x(kk, c);
      for (std::size_t j = kk + 1; j < n; ++j) s -= lu(kk, j) * x(j, c);
      x(kk, c) = s / lu(kk, kk);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

const ComplexMatrix& pauli(int index) {
  using namespace std::complex_literals;
  static const std::array<ComplexMatrix, 4> kPaulis = {
      ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, -1i}, {1i, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  if (index < 0 || index > 3) throw DimensionMismatch("pauli: index out of range");
  return kPaulis[static_cast<std::size_t>(index)];
}

}  // namespace cpforge
