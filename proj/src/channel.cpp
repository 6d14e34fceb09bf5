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

#include "cpforge/channel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <utility>

#include "cpforge/errors.hpp"

namespace cpforge {

namespace {

std::size_t isqrt_exact(std::size_t n, const char* what) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) throw DimensionMismatch(std::string(what) + ": not a perfect square");
  return r;
}

void require_a_shape(const ComplexMatrix& a, std::size_t n, std::size_t m) {
  if (a.rows() != m * m || a.cols() != n * n) {
    throw DimensionMismatch("A-matrix shape " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " does not match dims " +
                            std::to_string(n) + "->" + std::to_string(m));
  }
}

void require_b_shape(const ComplexMatrix& b, std::size_t n, std::size_t m) {
  if (b.rows() != m * n || b.cols() != m * n) {
    throw DimensionMismatch("B-matrix shape " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " does not match dims " +
                            std::to_string(n) + "->" + std::to_string(m));
  }
}

double relative_tol(const ComplexMatrix& m) { return kStructuralTol * std::max(1.0, m.max_abs()); }

// A_{s'r', sr} == conj(A_{r's', rs})
double a_hermiticity_residual(const ComplexMatrix& a, std::size_t n, std::size_t m) {
  double worst = 0.0;
  for (std::size_t rp = 0; rp < m; ++rp)
    for (std::size_t sp = 0; sp < m; ++sp)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          worst = std::max(worst, std::abs(a(sp * m + rp, s * n + r) -
                                           std::conj(a(rp * m + sp, r * n + s))));
  return worst;
}

}  // namespace

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::kAMatrix: return "a";
    case Representation::kBMatrix: return "b";
    case Representation::kChoi: return "choi";
    case Representation::kSignedKraus: return "kraus";
  }
  return "a";
}

ComplexMatrix a_to_b(const ComplexMatrix& a, std::size_t n, std::size_t m) {
  require_a_shape(a, n, m);
  ComplexMatrix b(m * n, m * n);
  for (std::size_t rp = 0; rp < m; ++rp)
    for (std::size_t sp = 0; sp < m; ++sp)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          b(rp * n + r, sp * n + s) = a(rp * m + sp, r * n + s);
  return b;
}

ComplexMatrix b_to_a(const ComplexMatrix& b, std::size_t n, std::size_t m) {
  require_b_shape(b, n, m);
  ComplexMatrix a(m * m, n * n);
  for (std::size_t rp = 0; rp < m; ++rp)
    for (std::size_t sp = 0; sp < m; ++sp)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          a(rp * m + sp, r * n + s) = b(rp * n + r, sp * n + s);
  return a;
}

SignedKraus b_to_kraus(const ComplexMatrix& b, std::size_t n, std::size_t m) {
  require_b_shape(b, n, m);
  const EigenResult eig = eigh(b);
  SignedKraus out;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double gamma = eig.eigenvalues[k];
    if (std::abs(gamma) < kKrausDropTol) continue;
    ComplexMatrix e(m, n);
    const double w = std::sqrt(std::abs(gamma));
    for (std::size_t rp = 0; rp < m; ++rp)
      for (std::size_t r = 0; r < n; ++r) e(rp, r) = w * eig.eigenvectors(rp * n + r, k);
    out.push_back({gamma > 0.0 ? 1 : -1, std::move(e)});
  }
  return out;
}

ComplexMatrix kraus_to_b(const SignedKraus& kraus) {
  if (kraus.empty()) throw DimensionMismatch("kraus_to_b: empty decomposition");
  const std::size_t m = kraus.front().op.rows();
  const std::size_t n = kraus.front().op.cols();
  ComplexMatrix b(m * n, m * n);
  for (const auto& term : kraus) {
    if (term.op.rows() != m || term.op.cols() != n) {
      throw DimensionMismatch("kraus_to_b: operators of different shapes");
    }
    if (term.eta != 1 && term.eta != -1) throw ParamOutOfRange("kraus_to_b: eta must be +1 or -1");
    const ComplexMatrix v = vec(term.op);
    b += static_cast<double>(term.eta) * outer(v, v);
  }
  return b;
}

struct Channel::Cache {
  std::once_flag b_once;
  ComplexMatrix b;
  std::once_flag kraus_once;
  SignedKraus kraus;
};

Channel::Channel(ComplexMatrix a, std::size_t dim_in, std::size_t dim_out, Representation source)
    : a_(std::move(a)),
      dim_in_(dim_in),
      dim_out_(dim_out),
      source_(source),
      cache_(std::make_shared<Cache>()) {
  require_a_shape(a_, dim_in_, dim_out_);
  const double herm = a_hermiticity_residual(a_, dim_in_, dim_out_);
  if (herm > relative_tol(a_)) {
    throw NonHermitianInput("A-matrix violates Hermiticity preservation by " +
                            std::to_string(herm));
  }
  trace_preserving_ = trace_preservation_residual() <= relative_tol(a_);
}

Channel Channel::from_a(ComplexMatrix a, std::size_t dim_in, std::size_t dim_out) {
  return Channel(std::move(a), dim_in, dim_out, Representation::kAMatrix);
}

Channel Channel::from_a(ComplexMatrix a) {
  const std::size_t m = isqrt_exact(a.rows(), "from_a rows");
  const std::size_t n = isqrt_exact(a.cols(), "from_a cols");
  return from_a(std::move(a), n, m);
}

Channel Channel::from_b(ComplexMatrix b, std::size_t dim_in, std::size_t dim_out) {
  require_b_shape(b, dim_in, dim_out);
  if (b.hermitian_asymmetry() > relative_tol(b)) {
    throw NonHermitianInput("B-matrix is not Hermitian");
  }
  Channel c(b_to_a(b, dim_in, dim_out), dim_in, dim_out, Representation::kBMatrix);
  std::call_once(c.cache_->b_once, [&] { c.cache_->b = std::move(b); });
  return c;
}

Channel Channel::from_choi(ComplexMatrix choi, std::size_t dim_in, std::size_t dim_out) {
  Channel c = from_b(std::move(choi), dim_in, dim_out);
  c.source_ = Representation::kChoi;
  return c;
}

Channel Channel::from_kraus(SignedKraus kraus) {
  ComplexMatrix b = kraus_to_b(kraus);
  const std::size_t m = kraus.front().op.rows();
  const std::size_t n = kraus.front().op.cols();
  Channel c(b_to_a(b, n, m), n, m, Representation::kSignedKraus);
  std::call_once(c.cache_->b_once, [&] { c.cache_->b = std::move(b); });
  std::call_once(c.cache_->kraus_once, [&] { c.cache_->kraus = std::move(kraus); });
  return c;
}

Channel Channel::identity(std::size_t dim) {
  return from_a(ComplexMatrix::identity(dim * dim), dim, dim);
}

Channel Channel::transpose_map(std::size_t dim) {
  ComplexMatrix a(dim * dim, dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t s = 0; s < dim; ++s) a(s * dim + r, r * dim + s) = 1.0;
  return from_a(std::move(a), dim, dim);
}

Channel Channel::unitary(const ComplexMatrix& u) {
  // vec(U X U^dagger) = (U (x) conj(U)) vec(X) for row-major vec.
  return from_a(kron(u, u.conjugate()), u.cols(), u.rows());
}

const ComplexMatrix& Channel::b_matrix() const {
  std::call_once(cache_->b_once, [this] { cache_->b = a_to_b(a_, dim_in_, dim_out_); });
  return cache_->b;
}

const SignedKraus& Channel::kraus() const {
  std::call_once(cache_->kraus_once,
                 [this] { cache_->kraus = b_to_kraus(b_matrix(), dim_in_, dim_out_); });
  return cache_->kraus;
}

double Channel::trace_preservation_residual() const {
  const std::size_t n = dim_in_;
  const std::size_t m = dim_out_;
  double worst = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t r = 0; r < n; ++r) {
      Complex sum = 0.0;
      for (std::size_t rp = 0; rp < m; ++rp) sum += a_(rp * m + rp, s * n + r);
      worst = std::max(worst, std::abs(sum - (s == r ? 1.0 : 0.0)));
    }
  return worst;
}

double Channel::b_trace() const { return b_matrix().trace().real(); }

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionMismatch("density matrix must be square");
  if (m_.hermitian_asymmetry() > kStructuralTol) {
    throw NonHermitianInput("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - 1.0) > kStructuralTol) {
    throw DomainError("density matrix trace is not 1");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

DensityMatrix DensityMatrix::pure(const ComplexMatrix& ket) {
  ComplexMatrix p = outer(ket, ket);
  p *= 1.0 / p.trace().real();
  return DensityMatrix(p.hermitian_part());
}

DensityMatrix DensityMatrix::from_bloch(const std::array<double, 3>& r) {
  ComplexMatrix m = pauli(0);
  for (int i = 0; i < 3; ++i) m += r[static_cast<std::size_t>(i)] * pauli(i + 1);
  m *= 0.5;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure_qubit(double theta, double phi) {
  return from_bloch({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                     std::cos(theta)});
}

ComplexMatrix apply(const Channel& c, const ComplexMatrix& x) {
  if (x.rows() != c.dim_in() || x.cols() != c.dim_in()) {
    throw DimensionMismatch("apply: operator is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", channel input dim " +
                            std::to_string(c.dim_in()));
  }
  return unvec(c.a_matrix() * vec(x), c.dim_out(), c.dim_out());
}

DensityMatrix apply(const Channel& c, const DensityMatrix& rho) {
  return DensityMatrix(apply(c, rho.matrix()).hermitian_part());
}

ComplexMatrix apply_kraus(const SignedKraus& kraus, const ComplexMatrix& x) {
  if (kraus.empty()) throw DimensionMismatch("apply_kraus: empty decomposition");
  ComplexMatrix out(kraus.front().op.rows(), kraus.front().op.rows());
  for (const auto& term : kraus) {
    out += static_cast<double>(term.eta) * (term.op * x * term.op.adjoint());
  }
  return out;
}

ComplexMatrix choi(const Channel& c) {
  const std::size_t n = c.dim_in();
  ComplexMatrix out(c.dim_out() * n, c.dim_out() * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix unit(n, n);
      unit(i, j) = 1.0;
      out += kron(apply(c, unit), unit);
    }
  return out;
}

CpVerdict is_cp(const Channel& c, double tol) {
  const double lo = min_eigenvalue(c.b_matrix());
  return {lo >= -tol, lo};
}

CpVerdict is_cp_choi(const Channel& c, double tol) {
  const double lo = min_eigenvalue(choi(c));
  return {lo >= -tol, lo};
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (inner.dim_out() != outer.dim_in()) {
    throw DimensionMismatch("compose: inner output dim " + std::to_string(inner.dim_out()) +
                            " != outer input dim " + std::to_string(outer.dim_in()));
  }
  return Channel::from_a(outer.a_matrix() * inner.a_matrix(), inner.dim_in(), outer.dim_out());
}

ComplexMatrix local_vec_permutation(std::span<const std::size_t> dims) {
  const std::size_t k = dims.size();
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  const std::size_t size = total * total;

  ComplexMatrix p(size, size);
  std::vector<std::size_t> digits(2 * k);
  for (std::size_t g = 0; g < size; ++g) {
    // Decode the global index as (a_1..a_k, b_1..b_k), most significant first.
    std::size_t rest = g;
    for (std::size_t i = 2 * k; i-- > 0;) {
      const std::size_t d = dims[i % k];
      digits[i] = rest % d;
      rest /= d;
    }
    std::size_t local = 0;
    for (std::size_t i = 0; i < k; ++i) {
      local = local * dims[i] + digits[i];
      local = local * dims[i] + digits[k + i];
    }
    p(local, g) = 1.0;
  }
  return p;
}

Channel extend_local(std::span<const Channel> channels) {
  if (channels.empty()) throw DimensionMismatch("extend_local: no channels");
  std::vector<std::size_t> dims;
  std::vector<ComplexMatrix> factors;
  for (const auto& c : channels) {
    if (c.dim_in() != c.dim_out()) {
      throw DimensionMismatch("extend_local: factors must be dimension-preserving");
    }
    dims.push_back(c.dim_in());
    factors.push_back(c.a_matrix());
  }
  const ComplexMatrix p = local_vec_permutation(dims);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  return Channel::from_a(p.transpose() * kron(factors) * p, total, total);
}

Channel extend_local_kraus(std::span<const Channel> channels) {
  if (channels.empty()) throw DimensionMismatch("extend_local_kraus: no channels");
  SignedKraus combined = {{1, ComplexMatrix::identity(1)}};
  for (const auto& c : channels) {
    if (c.dim_in() != c.dim_out()) {
      throw DimensionMismatch("extend_local_kraus: factors must be dimension-preserving");
    }
    SignedKraus next;
    for (const auto& left : combined)
      for (const auto& right : c.kraus())
        next.push_back({left.eta * right.eta, kron(left.op, right.op)});
    combined = std::move(next);
  }
  return Channel::from_kraus(std::move(combined));
}

}  // namespace cpforge
