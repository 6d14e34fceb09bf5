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
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "cpforge/eigensolver.hpp"
#include "cpforge/matrix.hpp"

namespace cpforge {

// Index conventions (n = input dimension, m = output dimension):
//   A-matrix:  rho'_{r's'} = sum_{rs} A_{r's', rs} rho_{rs}, shape m^2 x n^2,
//              row r'*m + s', column r*n + s (row-major vec on both sides).
//   B-matrix:  B_{r'r, s's} = A_{r's', rs}, shape mn x mn, row r'*n + r.
//   Choi:      sum_ij E(|i><j|) (x) |i><j|. Under these conventions it is the
//              same matrix as B.

enum class Representation { kAMatrix, kBMatrix, kChoi, kSignedKraus };

std::string_view to_string(Representation rep);

/** One term eta * E rho E^dagger of a signed operator-sum decomposition. */
struct SignedKrausOp {
  int eta = 1;  // +1 or -1
  ComplexMatrix op;
};

using SignedKraus = std::vector<SignedKrausOp>;

/** Eigenvalues of B with |gamma| below this are dropped when extracting Kraus operators. */
inline constexpr double kKrausDropTol = 1e-12;

ComplexMatrix a_to_b(const ComplexMatrix& a, std::size_t dim_in, std::size_t dim_out);
ComplexMatrix b_to_a(const ComplexMatrix& b, std::size_t dim_in, std::size_t dim_out);
SignedKraus b_to_kraus(const ComplexMatrix& b, std::size_t dim_in, std::size_t dim_out);
ComplexMatrix kraus_to_b(const SignedKraus& kraus);

/**
 * A linear Hermiticity-preserving map from n x n to m x m matrices.
 *
 * The A-matrix is canonical; the B-matrix and signed Kraus form are derived on
 * first use and cached. Channels are immutable, and copies share the cache, so
 * concurrent readers are safe.
 */
class Channel {
 public:
  static Channel from_a(ComplexMatrix a, std::size_t dim_in, std::size_t dim_out);
  /** Square map; the dimension is deduced from the A-matrix shape. */
  static Channel from_a(ComplexMatrix a);
  static Channel from_b(ComplexMatrix b, std::size_t dim_in, std::size_t dim_out);
  static Channel from_choi(ComplexMatrix choi, std::size_t dim_in, std::size_t dim_out);
  static Channel from_kraus(SignedKraus kraus);

  static Channel identity(std::size_t dim);
  /** rho -> rho^T; the standard NCP example. */
  static Channel transpose_map(std::size_t dim);
  /** rho -> U rho U^dagger. */
  static Channel unitary(const ComplexMatrix& u);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  /** Representation the channel was constructed from (used when serializing). */
  Representation source() const { return source_; }

  const ComplexMatrix& a_matrix() const { return a_; }
  const ComplexMatrix& b_matrix() const;
  const SignedKraus& kraus() const;

  /** max over (s, r) of |sum_r' A_{r'r', sr} - delta_sr|. */
  double trace_preservation_residual() const;
  /** Recorded at construction: residual <= 1e-12 (scaled by the entry magnitude). */
  bool trace_preserving() const { return trace_preserving_; }
  /** trace(B); equals dim_in for trace-preserving maps. */
  double b_trace() const;

 private:
  struct Cache;

  Channel(ComplexMatrix a, std::size_t dim_in, std::size_t dim_out, Representation source);

  ComplexMatrix a_;
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  Representation source_ = Representation::kAMatrix;
  bool trace_preserving_ = false;
  std::shared_ptr<Cache> cache_;
};

/** Hermitian, unit-trace matrix. Positivity is deliberately not enforced. */
class DensityMatrix {
 public:
  /** Throws NonHermitianInput / DomainError if Hermiticity or unit trace fail at 1e-12. */
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  /** |psi><psi| / <psi|psi> for a column vector psi. */
  static DensityMatrix pure(const ComplexMatrix& ket);
  /** (I + r . sigma) / 2. */
  static DensityMatrix from_bloch(const std::array<double, 3>& r);
  /** Pure qubit state at polar angle theta and azimuth phi. */
  static DensityMatrix pure_qubit(double theta, double phi = 0.0);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/** Raw action unvec(A vec(x)) on any dim_in x dim_in operator. */
ComplexMatrix apply(const Channel& c, const ComplexMatrix& x);
DensityMatrix apply(const Channel& c, const DensityMatrix& rho);
/** sum eta_i E_i x E_i^dagger. */
ComplexMatrix apply_kraus(const SignedKraus& kraus, const ComplexMatrix& x);

/** sum_ij E(|i><j|) (x) |i><j|, built by applying the channel to matrix units. */
ComplexMatrix choi(const Channel& c);

struct CpVerdict {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

/** CP iff min eigenvalue of B >= -tol. */
CpVerdict is_cp(const Channel& c, double tol = kPsdTol);
/** Same verdict computed from the independently built Choi matrix. */
CpVerdict is_cp_choi(const Channel& c, double tol = kPsdTol);

/** outer o inner; A-matrix is A_outer * A_inner. */
Channel compose(const Channel& outer, const Channel& inner);

/**
 * Permutation P with P vec(rho) = local vec of rho, for a system with the given
 * subsystem dimensions. The global row-major index (a_1..a_k, b_1..b_k) maps to
 * (a_1 b_1, a_2 b_2, ..., a_k b_k). P is symmetric for two qubits.
 */
ComplexMatrix local_vec_permutation(std::span<const std::size_t> dims);

/**
 * Tensor product of local channels acting on the global row-major vec:
 * P^T (A_1 (x) ... (x) A_k) P. Each factor must have dim_in == dim_out.
 */
Channel extend_local(std::span<const Channel> channels);
/** Same map built by tensoring signed Kraus operators. */
Channel extend_local_kraus(std::span<const Channel> channels);

}  // namespace cpforge
