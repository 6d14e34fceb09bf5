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

#include <doctest.h>

#include <cmath>
#include <random>

#include "cpforge/channel.hpp"
#include "cpforge/eigensolver.hpp"
#include "cpforge/errors.hpp"
#include "cpforge/maps.hpp"
#include "cpforge/matrix.hpp"
#include "oracle.hpp"

using namespace cpforge;

TEST_SUITE("matrix") {

TEST_CASE("vec stacks rows") {
  const ComplexMatrix m{{1.0, 2.0}, {Complex(3.0, 1.0), 4.0}};
  const ComplexMatrix v = vec(m);
  REQUIRE(v.rows() == 4);
  REQUIRE(v.cols() == 1);
  CHECK(v(0, 0) == Complex(1.0));
  CHECK(v(1, 0) == Complex(2.0));
  CHECK(v(2, 0) == Complex(3.0, 1.0));
  CHECK(v(3, 0) == Complex(4.0));

  CHECK(vec(ComplexMatrix::identity(2)) == ComplexMatrix{{1.0}, {0.0}, {0.0}, {1.0}});
  CHECK(vec(pauli(1)) == ComplexMatrix{{0.0}, {1.0}, {1.0}, {0.0}});
}

TEST_CASE("vec and unvec round-trip bitwise") {
  std::mt19937_64 rng(11);
  for (auto [r, c] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{5, 2}, std::pair{4, 4}}) {
    const ComplexMatrix m = oracle::from_eigen(oracle::random_matrix(rng, r, c));
    CHECK(unvec(vec(m), m.rows(), m.cols()) == m);
    CHECK(max_abs_diff(vec(m), oracle::from_eigen(oracle::vec(oracle::to_eigen(m)))) == 0.0);
  }
}

TEST_CASE("kron examples") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
  const std::vector<double> d{1, -1, -1, 1};
  CHECK(kron(pauli(3), pauli(3)) == ComplexMatrix::diagonal(d));
  const ComplexMatrix xx = kron(pauli(1), pauli(1));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(xx(r, c) == Complex(r + c == 3 ? 1.0 : 0.0));
}

TEST_CASE("kron agrees with oracle and obeys the mixed product rule") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = oracle::random_matrix(rng, 2, 3);
    const auto b = oracle::random_matrix(rng, 3, 2);
    const auto c = oracle::random_matrix(rng, 3, 2);
    const auto d = oracle::random_matrix(rng, 2, 4);
    const ComplexMatrix ka = kron(oracle::from_eigen(a), oracle::from_eigen(b));
    CHECK(oracle::max_diff(oracle::to_eigen(ka), oracle::kron(a, b)) < 1e-14);
    const ComplexMatrix lhs = kron(oracle::from_eigen(a), oracle::from_eigen(b)) *
                              kron(oracle::from_eigen(c), oracle::from_eigen(d));
    const ComplexMatrix rhs = kron(oracle::from_eigen(a) * oracle::from_eigen(c), oracle::from_eigen(b) * oracle::from_eigen(d));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("eigh examples") {
  CHECK(eigh(pauli(3)).eigenvalues == std::vector<double>{1.0, -1.0});

  ComplexMatrix swap(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  const auto s = eigvalsh(swap);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s[3] == doctest::Approx(-1.0).epsilon(1e-14));

  const double r = std::sqrt(2.0 / 3.0);
  const Channel comp = compose(adm(DepolarizerTriple{r, r, 2.0 / 3.0}), translation({0.0, 0.0, 0.5}));
  const auto e = eigh(comp.b_matrix()).eigenvalues;
  const std::vector<double> expected{5.0 / 3.0, 1.0 / 3.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e[i] - expected[i]) < 1e-12);
}

TEST_CASE("min_eigenvalue examples") {
  CHECK(min_eigenvalue(ComplexMatrix::identity(4)) == doctest::Approx(1.0));
  const std::vector<double> d{1.0, -1.0};
  CHECK(min_eigenvalue(ComplexMatrix::diagonal(d)) == doctest::Approx(-1.0));
  const ComplexMatrix b = robust_map(1.0).b_matrix();
  const double expected = oracle::min_eigenvalue(oracle::to_eigen(b));
  CHECK(expected < 0.0);
  CHECK(std::abs(min_eigenvalue(b) - expected) < 1e-12);
}

TEST_CASE("eigh invariants on random Hermitian matrices") {
  std::mt19937_64 rng(13);
  for (int n : {1, 2, 3, 4, 8, 16, 64, 256}) {
    CAPTURE(n);
    const auto h = oracle::random_hermitian(rng, n);
    const ComplexMatrix m = oracle::from_eigen(h);
    const EigenResult res = eigh(m);
    REQUIRE(res.eigenvalues.size() == static_cast<std::size_t>(n));
    CHECK(std::is_sorted(res.eigenvalues.rbegin(), res.eigenvalues.rend()));

    const auto v = oracle::to_eigen(res.eigenvectors);
    Eigen::VectorXd lambda(n);
    for (int i = 0; i < n; ++i) lambda(i) = res.eigenvalues[static_cast<std::size_t>(i)];
    const oracle::Mat recon = v * lambda.cast<oracle::Cd>().asDiagonal() * v.adjoint();
    CHECK((h - recon).norm() <= 1e-10 * h.norm());
    CHECK((v.adjoint() * v - oracle::Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);

    const auto reference = oracle::eigenvalues(h);
    double worst = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(reference[static_cast<std::size_t>(i)] - res.eigenvalues[static_cast<std::size_t>(i)]));
      sum += res.eigenvalues[static_cast<std::size_t>(i)];
    }
    CHECK(worst <= 1e-10 * std::max(1.0, h.norm()));
    CHECK(std::abs(sum - m.trace().real()) <= 1e-10 * std::max(1.0, std::abs(m.trace().real())) + 1e-10 * h.norm());
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  const ComplexMatrix m{{1.0, 1.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(eigh(m), NonHermitianInput);
  CHECK_THROWS_AS(min_eigenvalue(m), NonHermitianInput);
  CHECK_THROWS_AS(eigh(ComplexMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("solve and inverse") {
  std::mt19937_64 rng(14);
  const auto a = oracle::random_matrix(rng, 5, 5);
  const ComplexMatrix inv = inverse(oracle::from_eigen(a));
  CHECK(oracle::max_diff(oracle::to_eigen(inv), a.inverse()) < 1e-10);
}

}  // TEST_SUITE
