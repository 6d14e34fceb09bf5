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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cpforge {

using Complex = std::complex<double>;

/** Absolute tolerance used for structural (Hermiticity, trace) checks. */
inline constexpr double kStructuralTol = 1e-12;

/**
 * Dense row-major complex matrix.
 *
 * Entries are std::complex<double>, i.e. interleaved (re, im) pairs of
 * 64-bit floats. A column vector is a matrix with cols() == 1.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> values);
  /** Column vector holding `values`. */
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<Complex> entries() { return entries_; }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  /** max |M[i][j] - conj(M[j][i])|; throws DimensionMismatch if not square. */
  double hermitian_asymmetry() const;
  bool is_hermitian(double tol = kStructuralTol) const;
  /** (M + M^dagger) / 2 */
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

/** max_ij |a_ij - b_ij|; throws DimensionMismatch on shape mismatch. */
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Row-major stacking: vec(sum c_ij |i><j|) = sum c_ij |i j>.
 * Element (i, j) of an r x c matrix lands at index i*c + j.
 */
ComplexMatrix vec(const ComplexMatrix& m);
/** Inverse of vec; `v` must be a column (or row) with rows*cols entries. */
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);

/** Outer product |u><v| of two column vectors. */
ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v);

/** Solves A X = B by LU with partial pivoting; throws DimensionMismatch if singular. */
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

/** The four Pauli matrices; index 0 is the identity. */
const ComplexMatrix& pauli(int index);

}  // namespace cpforge
