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
#include "oracle.hpp"

using namespace cpforge;

TEST_SUITE("maps") {

TEST_CASE("adm examples") {
  CHECK(max_abs_diff(adm(DepolarizerTriple{1.0, 1.0, 1.0}).a_matrix(), ComplexMatrix::identity(4)) == 0.0);

  const Channel dep = adm(DepolarizerTriple{0.0, 0.0, 0.0});
  const ComplexMatrix rho = oracle::from_eigen(oracle::density_from_bloch(0.3, -0.2, 0.9));
  CHECK(max_abs_diff(apply(dep, rho), ComplexMatrix::identity(2) * 0.5) < 1e-15);
  CHECK(max_abs_diff(dep.a_matrix(), completely_depolarizing(1).a_matrix()) < 1e-15);

  const double r = std::sqrt(2.0 / 3.0);
  const double s6 = std::sqrt(6.0);
  const auto e = eigvalsh(adm(DepolarizerTriple{r, r, 2.0 / 3.0}).b_matrix());
  const std::vector<double> want{(5 + 2 * s6) / 6, 1.0 / 6, 1.0 / 6, (5 - 2 * s6) / 6};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e[i] - want[i]) < 1e-12);
}

TEST_CASE("adm matches the Pauli operator-sum oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng);
    const double b = u(rng);
    const double g = u(rng);
    CHECK(oracle::max_diff(oracle::to_eigen(adm(DepolarizerTriple{a, b, g}).a_matrix()), oracle::adm(a, b, g)) < 1e-15);
    const auto closed = adm_b_eigenvalues({a, b, g});
    std::vector<double> sorted(closed.begin(), closed.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const auto ref = oracle::eigenvalues(oracle::reshuffle(oracle::adm(a, b, g), 2, 2));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(sorted[i] - ref[i]) < 1e-12);
  }
}

TEST_CASE("adm rejects out-of-range factors unless allowed") {
  CHECK_THROWS_AS(adm(DepolarizerTriple{1.5, 0.0, 0.0}), ParamOutOfRange);
  CHECK_NOTHROW(adm(DepolarizerTriple{1.5, 0.0, 0.0}, {.allow_unphysical = true}));
  CHECK_THROWS_AS(symmetric_depolarizer(1.2), ParamOutOfRange);
  CHECK_THROWS_AS(symmetric_depolarizer(-0.1), ParamOutOfRange);
}

TEST_CASE("symmetric depolarizer") {
  CHECK(max_abs_diff(symmetric_depolarizer(1.0).a_matrix(), ComplexMatrix::identity(4)) < 1e-15);
  CHECK(max_abs_diff(symmetric_depolarizer(0.4).a_matrix(), oracle::from_eigen(oracle::adm(0.4, 0.4, 0.4))) < 1e-15);
  CHECK(is_cp(compose(symmetric_depolarizer(2.0 / 3.0), translation({0.0, 0.0, 0.5}))).completely_positive);
  const auto e = eigvalsh(symmetric_depolarizer(2.0 / 3.0).b_matrix());
  const std::vector<double> want{1.5, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e[i] - want[i]) < 1e-12);

  // Two-qubit version is the local product.
  const std::vector<Channel> parts{symmetric_depolarizer(0.3), symmetric_depolarizer(0.3)};
  CHECK(max_abs_diff(symmetric_depolarizer(0.3, 2).a_matrix(), extend_local(parts).a_matrix()) < 1e-15);
}

TEST_CASE("fujiwara_algoet_valid examples") {
  CHECK(fujiwara_algoet_valid(DepolarizerParams{{0.0, 0.0, 0.0}}));
  CHECK(fujiwara_algoet_valid(DepolarizerParams{{1.0, 1.0, 1.0}}));
  CHECK(fujiwara_algoet_valid(DepolarizerParams{{1.0, -1.0, -1.0}}));
  CHECK_FALSE(fujiwara_algoet_valid(DepolarizerParams{{1.0, 0.5, -1.0}}));
  CHECK(oracle::min_eigenvalue(oracle::reshuffle(oracle::adm(1.0, -1.0, -1.0), 2, 2)) > -1e-12);
  CHECK(oracle::min_eigenvalue(oracle::reshuffle(oracle::adm(1.0, 0.5, -1.0), 2, 2)) < -0.1);
  CHECK_FALSE(fujiwara_algoet_valid(DepolarizerParams{{1.0, 1.0, 1.0}, {1.0, 0.5, -1.0}}));
}

TEST_CASE("fujiwara_algoet_valid agrees with the B-matrix test on a grid") {
  int disagreements = 0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      for (int k = 0; k <= 20; ++k) {
        const DepolarizerTriple t{-1.0 + 0.1 * i, -1.0 + 0.1 * j, -1.0 + 0.1 * k};
        const bool fa = fujiwara_algoet_valid(DepolarizerParams{t}, 1e-12);
        const bool psd = oracle::min_eigenvalue(oracle::reshuffle(oracle::adm(t[0], t[1], t[2]), 2, 2)) >= -1e-10;
        disagreements += fa != psd;
      }
  CHECK(disagreements == 0);
}

TEST_CASE("translation") {
  CHECK(max_abs_diff(translation({0.0, 0.0, 0.0}).a_matrix(), ComplexMatrix::identity(4)) < 1e-15);
  const ComplexMatrix printed = ComplexMatrix{{5, 0, 0, 1}, {0, 4, 0, 0}, {0, 0, 4, 0}, {-1, 0, 0, 3}} * 0.25;
  CHECK(max_abs_diff(translation({0.0, 0.0, 0.5}).a_matrix(), printed) < 1e-15);

  const ComplexMatrix out = apply(translation({0.0, 0.0, 0.5}), oracle::from_eigen(oracle::density_from_bloch(0, 0, -1)));
  const auto b = oracle::bloch(oracle::to_eigen(out));
  CHECK(std::abs(b[0]) < 1e-15);
  CHECK(std::abs(b[1]) < 1e-15);
  CHECK(std::abs(b[2] + 0.5) < 1e-15);

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::array<double, 3> v{u(rng), u(rng), u(rng)};
    const auto ref = oracle::affine_qubit_map(Eigen::Matrix3d::Identity(), Eigen::Vector3d(v[0], v[1], v[2]));
    CHECK(oracle::max_diff(oracle::to_eigen(translation(v).a_matrix()), ref) < 1e-15);
  }
  for (double scale : {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0})
    for (const auto& dir : {std::array<double, 3>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.6, -0.8, 0}, {0.48, 0.6, -0.64}}) {
      const std::array<double, 3> v{scale * dir[0], scale * dir[1], scale * dir[2]};
      CHECK(oracle::min_eigenvalue(oracle::choi(oracle::to_eigen(translation(v).a_matrix()), 2, 2)) < 0.0);
      CHECK_FALSE(is_cp(translation(v)).completely_positive);
    }
}

TEST_CASE("robust map") {
  const Channel r1 = robust_map(1.0);
  CHECK(r1.trace_preserving());
  CHECK(oracle::min_eigenvalue(oracle::reshuffle(oracle::to_eigen(r1.a_matrix()), 2, 2)) < 0.0);
  CHECK_FALSE(is_cp(r1).completely_positive);

  const double threshold = (3.0 - std::sqrt(5.0)) / 2.0;
  for (double k : {threshold + 1e-3, 0.5, 2.0, 5.0}) CHECK_FALSE(is_cp(robust_map(k)).completely_positive);
  for (double k : {0.05, 0.2, threshold - 1e-3}) CHECK(is_cp(robust_map(k)).completely_positive);

  const ComplexMatrix minus_x = oracle::from_eigen(oracle::density_from_bloch(-1, 0, 0));
  const ComplexMatrix minus_z = oracle::from_eigen(oracle::density_from_bloch(0, 0, -1));
  for (double k : {0.1, 1.0, 2.0, 5.0, 10.0}) CHECK(max_abs_diff(apply(robust_map(k), minus_x), minus_z) < 1e-12);

  for (double k : {1.0, 2.0, 5.0}) {
    const Channel comp = compose(adm(DepolarizerTriple{0.0, 1.0 / k, 0.0}), robust_map(k));
    const auto e = eigvalsh(comp.b_matrix());
    const std::vector<double> want{1.0, 1.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e[i] - want[i]) < 1e-12);
    CHECK_FALSE(is_cp(compose(adm(DepolarizerTriple{0.0, 1.0 / k + 0.01, 0.0}, {.allow_unphysical = true}), robust_map(k)))
                    .completely_positive);
  }
}

TEST_CASE("adm properties") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ComplexMatrix half = ComplexMatrix::identity(2) * 0.5;
  for (int trial = 0; trial < 20; ++trial) {
    const DepolarizerTriple p{u(rng), u(rng), u(rng)};
    const DepolarizerTriple q{u(rng), u(rng), u(rng)};
    CHECK(max_abs_diff(apply(adm(p), half), half) < 1e-15);
    const DepolarizerTriple pq{p[0] * q[0], p[1] * q[1], p[2] * q[2]};
    CHECK(max_abs_diff(compose(adm(p), adm(q)).a_matrix(), adm(pq).a_matrix()) < 1e-15);
    CHECK((DepolarizerParams{p} * DepolarizerParams{q}) == DepolarizerParams{pq});
  }
}

TEST_CASE("multi-qubit adm is the local product") {
  const DepolarizerParams p{{0.2, 0.5, -0.3}, {0.9, 0.1, 0.4}};
  const std::vector<Channel> parts{adm(p[0]), adm(p[1])};
  CHECK(max_abs_diff(adm(p).a_matrix(), extend_local(parts).a_matrix()) < 1e-15);
  CHECK(adm(p).dim_in() == 4);
}

TEST_CASE("invert") {
  const Channel l = adm(DepolarizerTriple{0.5, -0.25, 0.8});
  CHECK(max_abs_diff(compose(invert(l), l).a_matrix(), ComplexMatrix::identity(4)) < 1e-12);
  CHECK_THROWS(invert(completely_depolarizing(1)));
}

}  // TEST_SUITE
