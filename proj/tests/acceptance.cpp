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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// below; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cpforge/channel.hpp"
#include "cpforge/eigensolver.hpp"
#include "cpforge/ensemble.hpp"
#include "cpforge/iso.hpp"
#include "cpforge/maps.hpp"
#include "cpforge/measures.hpp"
#include "cpforge/optimizer.hpp"
#include "oracle.hpp"

using namespace cpforge;
using std::numbers::pi;

namespace {

constexpr double kExactTol = 1e-9;       // closed-form values
constexpr double kStructureTol = 1e-12;  // matrix identities
constexpr double kParamTol = 1e-4;       // optimizer parameters
constexpr double kRatioSlack = 1e-3;     // unconstrained optimum on the tangent-sphere map
constexpr double kEntropySlack = 1e-10;
constexpr double kPsd = 1e-10;
constexpr double kSpectraBudgetS = 1.0;
constexpr double kOptimizerBudgetS = 60.0;
constexpr double kPropertyBudgetS = 120.0;
constexpr std::size_t kPropertyMaps = 200;
constexpr std::size_t kEntropyMaps = 50;
constexpr std::size_t kEntropyStates = 20;

const double kS2 = std::sqrt(2.0);
const double kS6 = std::sqrt(6.0);
const double kS17 = std::sqrt(17.0);
const double kS23 = std::sqrt(2.0 / 3.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates the worst deviation and the first failing item.
class Tracker {
 public:
  void near(const std::string& what, double expected, double actual, double tol) {
    const double err = std::abs(expected - actual);
    worst_ = std::max(worst_, err);
    if (!(err <= tol)) fail(what + ": expected " + fmt(expected) + ", got " + fmt(actual));
  }
  void at_least(const std::string& what, double bound, double actual) {
    if (!(actual >= bound)) fail(what + ": " + fmt(actual) + " < " + fmt(bound));
  }
  void truth(const std::string& what, bool ok) {
    if (!ok) fail(what);
  }
  void spectrum(const std::string& what, std::vector<double> expected, std::vector<double> actual, double tol) {
    std::sort(expected.begin(), expected.end(), std::greater<>());
    std::sort(actual.begin(), actual.end(), std::greater<>());
    if (expected.size() != actual.size()) {
      fail(what + ": size mismatch");
      return;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) near(what + "[" + std::to_string(i) + "]", expected[i], actual[i], tol);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  Outcome outcome() const {
    Outcome o;
    o.pass = failure_.empty();
    o.detail = o.pass ? "max err " + fmt(worst_) : failure_;
    if (!notes_.empty()) o.detail += "; " + notes_;
    return o;
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  void fail(const std::string& s) {
    if (failure_.empty()) failure_ = s;
  }
  double worst_ = 0.0;
  std::string failure_;
  std::string notes_;
};

std::vector<double> spectrum(const Channel& c) { return oracle::eigenvalues(c.b_matrix()); }

Channel translation_half() { return translation({0.0, 0.0, 0.5}); }

Channel flip_translation_map() {
  const double h = 1.0 / kS2;
  return Channel::from_a(ComplexMatrix{{-h, 0, 0, 1 - h}, {-h, -1, 0, -h}, {-h, 0, -1, -h}, {1 + h, 0, 0, h}});
}

Channel tangent_translation_map() {
  const double h = 1.0 / kS2;
  return Channel::from_a(ComplexMatrix{{1 - h, 0, 0, -h}, {-h, 1, 0, -h}, {-h, 0, 1, -h}, {h, 0, 0, 1 + h}});
}

Outcome spectra() {
  Tracker t;
  const Channel tr = translation_half();
  const DepolarizerTriple best{kS23, kS23, 2.0 / 3};
  t.spectrum("adm o T", {5.0 / 3, 1.0 / 3, 0, 0}, spectrum(compose(adm(best), tr)), kExactTol);
  t.spectrum("adm", {(5 + 2 * kS6) / 6, 1.0 / 6, 1.0 / 6, (5 - 2 * kS6) / 6}, spectrum(adm(best)), kExactTol);
  t.spectrum("spa o T", {(5 + kS17) / 6, 1.0 / 3, (5 - kS17) / 6, 0}, spectrum(compose(symmetric_depolarizer(2.0 / 3), tr)),
             kExactTol);
  t.spectrum("spa", {1.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}, spectrum(symmetric_depolarizer(2.0 / 3)), kExactTol);
  // Same spectra from the library's own solver.
  t.spectrum("adm o T (library)", {5.0 / 3, 1.0 / 3, 0, 0}, eigvalsh(compose(adm(best), tr).b_matrix()), kExactTol);
  return t.outcome();
}

Outcome measures() {
  Tracker t;
  const Channel tr = translation_half();
  const DepolarizerParams best{{kS23, kS23, 2.0 / 3}};
  const DepolarizerParams spa = DepolarizerParams::symmetric(2.0 / 3);
  t.near("m1 adm", (2 + 2 * kS6) / 9, m1(best), kExactTol);
  t.near("m1 spa", 2.0 / 3, m1(spa), kExactTol);
  for (int deg = 0; deg <= 180; ++deg) {
    const double th = pi * deg / 180.0;
    const DensityMatrix rho = DensityMatrix::pure_qubit(th);
    const double fa = fidelity_vs_input(rho, tr, best);
    const double fs = fidelity_vs_input(rho, tr, spa);
    const std::string at = "[" + std::to_string(deg) + " deg]";
    t.near("f_adm" + at, (8 + kS6 + 2 * std::cos(th) + (2 - kS6) * std::cos(2 * th)) / 12, fa, kExactTol);
    t.near("f_spa" + at, (5 + std::cos(th)) / 6, fs, kExactTol);
    t.near("gap" + at, (kS6 - 2) * std::pow(std::sin(th), 2) / 6, fa - fs, kExactTol);
    t.at_least("gap sign" + at, 0.0, fa - fs);
  }
  t.near("diamond", (kS6 - 2) / 3, pauli_diamond_distance(pauli_weights(best[0]), pauli_weights(spa[0])), kExactTol);
  return t.outcome();
}

Outcome optimizer() {
  Tracker t;
  const auto start = std::chrono::steady_clock::now();

  const Channel tr = translation_half();
  const auto p = optimize_adm(tr).params.flat();
  t.near("T alpha", kS23, p[0], kParamTol);
  t.near("T beta", kS23, p[1], kParamTol);
  t.near("T gamma", 2.0 / 3, p[2], kParamTol);
  t.near("T tau", 2.0 / 3, optimal_symmetric_tau(tr).tau, kExactTol);

  const Channel flip = flip_translation_map();
  t.near("flip tau", 1.0 / (1 + 2 * kS2), optimal_symmetric_tau(flip).tau, kExactTol);
  const auto q = optimize_adm(flip).params.flat();
  t.near("flip alpha", 0.0, q[0], kParamTol);
  t.near("flip beta", 1.0, q[1], kParamTol);
  t.near("flip gamma", 0.0, q[2], kParamTol);

  const Channel tangent = tangent_translation_map();
  t.near("tangent tau", 1.0 / 3, optimal_symmetric_tau(tangent).tau, kExactTol);
  const double m = optimize_adm(tangent).objective;
  t.at_least("tangent m1", 1.309 / 3 - kRatioSlack, m);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.truth("runtime " + Tracker::fmt(secs) + " s over budget", secs < kOptimizerBudgetS);
  t.note("tangent m1 " + Tracker::fmt(m) + ", " + Tracker::fmt(secs) + " s");
  return t.outcome();
}

Outcome robust() {
  Tracker t;
  for (double k : {1.0, 2.0, 5.0}) {
    const Channel map = robust_map(k);
    // Bisection on the y-only factor, feasibility from the Eigen oracle.
    const oracle::Mat a_map = oracle::to_eigen(map.a_matrix());
    double lo = 0.0;
    double hi = 2.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      const bool cp = oracle::min_eigenvalue(oracle::reshuffle(oracle::adm(0.0, mid, 0.0) * a_map, 2, 2)) >= 0.0;
      (cp ? lo : hi) = mid;
    }
    t.near("boundary k=" + Tracker::fmt(k), 1.0 / k, lo, kExactTol);
    t.spectrum("spectrum k=" + Tracker::fmt(k), {1, 1, 0, 0}, spectrum(compose(adm(DepolarizerTriple{0.0, 1.0 / k, 0.0}), map)),
               kExactTol);
  }
  return t.outcome();
}

Outcome inverse_examples() {
  Tracker t;
  for (double x : {1.5, 2.0, 10.0}) {
    const Channel a_ncp = Channel::from_a(ComplexMatrix{{0, 0, 0, 1}, {0, 0, x, 0}, {0, x, 0, 0}, {1, 0, 0, 0}});
    const ComplexMatrix comp = compose(adm(DepolarizerTriple{1 / x, -1 / x, -1.0}), a_ncp).a_matrix();
    t.near("identity x=" + Tracker::fmt(x), 0.0, max_abs_diff(comp, ComplexMatrix::identity(4)), kStructureTol);
  }
  for (double x : {1.5, 2.0, 3.0, 10.0}) {
    const Channel map = Channel::from_a(ComplexMatrix{{0.5, 0, 0, 1.5}, {0, x, 0, 0}, {0, 0, x, 0}, {0.5, 0, 0, -0.5}});
    const Channel comp = compose(adm(DepolarizerTriple{1 / (x * x), 1 / (x * x), 0.0}), map);
    const bool cp = is_cp(comp, kPsd).completely_positive;
    const bool oracle_cp = oracle::min_eigenvalue(oracle::reshuffle(oracle::to_eigen(comp.a_matrix()), 2, 2)) >= -kPsd;
    t.truth("verdict x=" + Tracker::fmt(x), cp == (x >= 2.0) && oracle_cp == cp);
  }
  return t.outcome();
}

oracle::Mat bell_projector(int d) {
  oracle::Mat v = oracle::Mat::Zero(d * d, 1);
  for (int i = 0; i < d; ++i) v(i * d + i, 0) = 1.0;
  return v * v.adjoint();
}

Outcome pauli_gellmann() {
  Tracker t;
  for (int n = 1; n <= 3; ++n) {
    const int d = 1 << n;
    const ComplexMatrix form = pauli_form(static_cast<std::size_t>(n));
    t.near("pauli n=" + std::to_string(n), 0.0, oracle::max_diff(oracle::to_eigen(form), bell_projector(d)), kStructureTol);
    std::vector<double> want(static_cast<std::size_t>(d * d), 0.0);
    want[0] = d;
    t.spectrum("pauli spectrum n=" + std::to_string(n), want, eigvalsh(form), kExactTol);
  }
  const ComplexMatrix g = gellmann_form(1);
  t.near("gellmann d=3", 0.0, oracle::max_diff(oracle::to_eigen(g), bell_projector(3)), kStructureTol);
  std::vector<double> want(9, 0.0);
  want[0] = 3;
  t.spectrum("gellmann spectrum", want, eigvalsh(g), kExactTol);
  return t.outcome();
}

Outcome ebit_merge() {
  Tracker t;
  for (int k = 2; k <= 4; ++k) {
    const oracle::Mat u = oracle::to_eigen(ebit_merge_unitary(static_cast<std::size_t>(k)));
    oracle::Mat ebits = oracle::Mat::Ones(1, 1);
    oracle::Mat pair = oracle::Mat::Zero(4, 1);
    pair(0, 0) = pair(3, 0) = 1.0;
    for (int i = 0; i < k; ++i) ebits = oracle::kron(ebits, pair);
    const int d = 1 << k;
    oracle::Mat target = oracle::Mat::Zero(d * d, 1);
    for (int i = 0; i < d; ++i) target(i * d + i, 0) = 1.0;
    t.near("merge k=" + std::to_string(k), 0.0, oracle::max_diff(u * ebits, target), kStructureTol);
    bool perm = true;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      int row_ones = 0;
      int col_ones = 0;
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        if (u(r, c) != oracle::Cd(0.0) && u(r, c) != oracle::Cd(1.0)) perm = false;
        row_ones += u(r, c) == oracle::Cd(1.0);
        col_ones += u(c, r) == oracle::Cd(1.0);
      }
      perm = perm && row_ones == 1 && col_ones == 1;
    }
    t.truth("permutation k=" + std::to_string(k), perm);
  }
  return t.outcome();
}

Outcome local_extension() {
  Tracker t;
  const Channel dep = completely_depolarizing(1);
  const oracle::Mat quarter = 0.25 * oracle::Mat::Identity(4, 4);
  // Raw Kronecker product acting on the global vec.
  const oracle::Mat naive_sup = oracle::kron(oracle::to_eigen(dep.a_matrix()), oracle::Mat::Identity(4, 4));
  const oracle::Mat naive = oracle::unvec(naive_sup * oracle::vec(quarter), 4, 4);
  t.near("naive is the scaled Bell projector", 0.0, oracle::max_diff(naive, bell_projector(2) / 8.0), kStructureTol);
  t.truth("naive differs from I/4", oracle::max_diff(naive, quarter) > 0.1);

  const std::vector<Channel> parts{dep, Channel::identity(2)};
  const Channel correct = extend_local(parts);
  t.near("correct output", 0.0, oracle::max_diff(oracle::to_eigen(apply(correct, oracle::from_eigen(quarter))), quarter),
         kStructureTol);
  oracle::Mat printed = oracle::Mat::Zero(16, 16);
  for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 0}, {0, 10}, {1, 1}, {1, 11}, {4, 4}, {4, 14}, {5, 5}, {5, 15},
                                                      {10, 0}, {10, 10}, {11, 1}, {11, 11}, {14, 4}, {14, 14}, {15, 5}, {15, 15}}) {
    printed(r, c) = 0.5;
  }
  t.near("printed 16x16", 0.0, oracle::max_diff(oracle::to_eigen(correct.a_matrix()), printed), kStructureTol);
  return t.outcome();
}

Outcome theorem_property() {
  Tracker t;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(2026);
  double margin = 1.0;
  for (std::size_t i = 0; i < kPropertyMaps; ++i) {
    const Channel map = random_tp_ncp_qubit_map(rng);
    const std::string at = "[map " + std::to_string(i) + "]";
    const DepolarizerParams w = theorem2_witness(map);
    const auto f = feasibility(map, w);
    t.truth("witness feasible" + at, f.feasible(kPsd));
    const double oracle_comp = oracle::min_eigenvalue(oracle::reshuffle(
        oracle::adm(w[0][0], w[0][1], w[0][2]) * oracle::to_eigen(map.a_matrix()), 2, 2));
    t.truth("witness feasible (oracle)" + at, oracle_comp >= -kPsd);
    for (double v : w.flat()) t.truth("witness nonzero" + at, std::abs(v) >= 1e-4);
    const double tau = optimal_symmetric_tau(map).tau;
    const OptimizationResult r = optimize_adm(map);
    t.truth("optimum feasible" + at, feasibility(map, r.params).feasible(kPsd));
    t.at_least("m1 vs tau" + at, tau, r.objective);
    margin = std::min(margin, r.objective - tau);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.truth("runtime " + Tracker::fmt(secs) + " s over budget", secs < kPropertyBudgetS);
  t.note(std::to_string(kPropertyMaps) + " maps, min(m1 - tau) " + Tracker::fmt(margin) + ", " + Tracker::fmt(secs) + " s");
  return t.outcome();
}

Outcome entropy_property() {
  Tracker t;
  Rng rng(4242);
  SearchConfig bounded;
  bounded.constraint_mode = ConstraintMode::kBoundedBySymmetric;
  bounded.sign_mode = SignMode::kNonNegative;
  double worst = 1.0;
  for (std::size_t i = 0; i < kEntropyMaps; ++i) {
    const Channel map = random_tp_ncp_qubit_map(rng);
    const double tau = optimal_symmetric_tau(map).tau;
    const OptimizationResult r = optimize_adm(map, {}, bounded);
    for (double v : r.params.flat()) t.at_least("bounded factor", tau - 1e-12, v);
    for (std::size_t s = 0; s < kEntropyStates; ++s) {
      const DensityMatrix rho = random_qubit_state(rng);
      const ComplexMatrix image = apply(map, rho.matrix());
      const double spa = linear_entropy(apply(symmetric_depolarizer(tau), image));
      const double asym = linear_entropy(apply(adm(r.params), image));
      t.at_least("S_L(spa) >= S_L(adm)", asym - kEntropySlack, spa);
      worst = std::min(worst, spa - asym);
    }
  }
  t.note("min S_L gap " + Tracker::fmt(worst));
  return t.outcome();
}

Outcome fa_equivalence() {
  Tracker t;
  int cells = 0;
  int disagreements = 0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      for (int k = 0; k <= 20; ++k) {
        const DepolarizerTriple c{(i - 10) / 10.0, (j - 10) / 10.0, (k - 10) / 10.0};
        // B eigenvalues are half the inequality slacks, so tolerances pair up as 2:1.
        const bool fa = fujiwara_algoet_valid(DepolarizerParams{c}, 2 * kPsd);
        const bool psd = is_cp(adm(c), kPsd).completely_positive;
        const bool oracle_psd = oracle::min_eigenvalue(oracle::reshuffle(oracle::adm(c[0], c[1], c[2]), 2, 2)) >= -kPsd;
        ++cells;
        disagreements += (fa != psd) || (fa != oracle_psd);
      }
  t.truth(std::to_string(disagreements) + " disagreeing cells", disagreements == 0);
  t.note(std::to_string(cells) + " cells");
  return t.outcome();
}

Outcome timed_spectra() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = spectra();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kSpectraBudgetS) {
    o.pass = false;
    o.detail += "; runtime " + Tracker::fmt(secs) + " s over budget";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"translation repair spectra", timed_spectra},
      {"translation repair measures", measures},
      {"optimizer reproduction", optimizer},
      {"robust map y-only boundary", robust},
      {"inverse and Pauli-scaled compositions", inverse_examples},
      {"Pauli and Gell-Mann forms", pauli_gellmann},
      {"ebit merge permutation", ebit_merge},
      {"local extension on the global vec", local_extension},
      {"witness and m1 >= tau over random NCP maps", theorem_property},
      {"bounded-mode linear entropy", entropy_property},
      {"Fujiwara-Algoet equals B-matrix PSD", fa_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
