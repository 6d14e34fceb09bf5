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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>

#include "cpforge/channel_io.hpp"
#include "cpforge/ensemble.hpp"
#include "cpforge/errors.hpp"
#include "cpforge/iso.hpp"
#include "cpforge/maps.hpp"
#include "cpforge/measures.hpp"
#include "cpforge/optimizer.hpp"

namespace cpforge::cli {

namespace {

using std::numbers::pi;

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);
const double kSqrt17 = std::sqrt(17.0);
const double kS23 = std::sqrt(2.0 / 3.0);

// Optimizer output is compared at the refinement's parameter resolution.
constexpr double kOptimizerTol = 1e-6;

Json params_json(const DepolarizerParams& p) {
  Json out = Json::array();
  for (const auto& t : p.per_qubit()) out.push_back({t[0], t[1], t[2]});
  return out;
}

std::vector<double> spectrum(const Channel& c) { return eigvalsh(c.b_matrix()); }

std::string fmt(double v) { return format_number(v); }

Channel flip_translation_map() {
  const double h = 1.0 / kSqrt2;
  return Channel::from_a(ComplexMatrix{{-h, 0, 0, 1 - h}, {-h, -1, 0, -h}, {-h, 0, -1, -h}, {1 + h, 0, 0, h}});
}

Channel diagonal_translation_map() {
  const double h = 1.0 / kSqrt2;
  return Channel::from_a(ComplexMatrix{{1 - h, 0, 0, -h}, {-h, 1, 0, -h}, {-h, 0, 1, -h}, {h, 0, 0, 1 + h}});
}

Channel antidiagonal_map(double x) {
  return Channel::from_a(ComplexMatrix{{0, 0, 0, 1}, {0, 0, x, 0}, {0, x, 0, 0}, {1, 0, 0, 0}});
}

Channel contraction_map(double x) {
  return Channel::from_a(ComplexMatrix{{0.5, 0, 0, 1.5}, {0, x, 0, 0}, {0, 0, x, 0}, {0.5, 0, 0, -0.5}});
}

double comp_min(const Channel& l, const Channel& map) { return is_cp(compose(l, map)).min_eigenvalue; }

// Largest beta with adm(0, beta, 0) o robust_map(kappa) CP, searched on [0, 2].
double robust_y_boundary(double kappa) {
  const Channel map = robust_map(kappa);
  double lo = 0.0;
  double hi = 2.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    const bool cp = comp_min(adm(DepolarizerTriple{0.0, mid, 0.0}, {.allow_unphysical = true}), map) >= 0.0;
    (cp ? lo : hi) = mid;
  }
  return lo;
}

std::vector<BlochVector> fibonacci_sphere(std::size_t count) {
  const double golden = pi * (3.0 - std::sqrt(5.0));
  std::vector<BlochVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(1.0 - z * z);
    const double phi = golden * static_cast<double>(i);
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

BlochVector image(const Channel& c, const BlochVector& r) {
  return bloch_vector(apply(c, DensityMatrix::from_bloch(r).matrix()));
}

double norm(const BlochVector& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void csv_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    first = false;
    out << format_number(v);
  }
  out << '\n';
}

// --- scripted scenarios -----------------------------------------------------

void scenario_translation(RunReport& r) {
  const Channel t = translation({0.0, 0.0, 0.5});
  const ComplexMatrix printed = ComplexMatrix{{5, 0, 0, 1}, {0, 4, 0, 0}, {0, 0, 4, 0}, {-1, 0, 0, 3}} * 0.25;
  r.expect("translation.a_matrix", "(1/4)[[5,0,0,1],[0,4,0,0],[0,0,4,0],[-1,0,0,3]] (max diff)", 0.0,
           max_abs_diff(t.a_matrix(), printed), 1e-12);
  r.expect_spectrum("translation.b_spectrum",
                    {{"1+sqrt(17)/4", 1 + kSqrt17 / 4}, {"1/4", 0.25}, {"1-sqrt(17)/4", 1 - kSqrt17 / 4}, {"-1/4", -0.25}},
                    spectrum(t));
  r.expect_true("translation.ncp", !is_cp(t).completely_positive);

  const DepolarizerTriple best{kS23, kS23, 2.0 / 3.0};
  const DepolarizerTriple spa{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
  const Channel l = adm(best);
  const Channel s = adm(spa);
  r.expect_spectrum("adm_composition.b_spectrum", {{"5/3", 5.0 / 3}, {"1/3", 1.0 / 3}, {"0", 0}, {"0", 0}},
                    spectrum(compose(l, t)));
  r.expect_spectrum("adm.b_spectrum",
                    {{"(5+2sqrt6)/6", (5 + 2 * kSqrt6) / 6}, {"1/6", 1.0 / 6}, {"1/6", 1.0 / 6}, {"(5-2sqrt6)/6", (5 - 2 * kSqrt6) / 6}},
                    spectrum(l));
  r.expect_spectrum("spa_composition.b_spectrum",
                    {{"(5+sqrt17)/6", (5 + kSqrt17) / 6}, {"1/3", 1.0 / 3}, {"(5-sqrt17)/6", (5 - kSqrt17) / 6}, {"0", 0}},
                    spectrum(compose(s, t)));
  r.expect_spectrum("spa.b_spectrum", {{"3/2", 1.5}, {"1/6", 1.0 / 6}, {"1/6", 1.0 / 6}, {"1/6", 1.0 / 6}}, spectrum(s));

  r.expect("m1.adm", "(2+2sqrt6)/9", (2 + 2 * kSqrt6) / 9, m1(DepolarizerParams{best}));
  r.expect("m1.spa", "2/3", 2.0 / 3, m1(DepolarizerParams{spa}));

  for (const auto& [label, theta] : {std::pair{"0", 0.0}, std::pair{"pi/2", pi / 2}, std::pair{"pi", pi}}) {
    const DensityMatrix rho = DensityMatrix::pure_qubit(theta);
    const double f_adm = fidelity_vs_input(rho, t, DepolarizerParams{best});
    const double f_spa = fidelity_vs_input(rho, t, DepolarizerParams{spa});
    const std::string at = std::string("[theta=") + label + "]";
    r.expect("fidelity.adm" + at, "(8+sqrt6+2cos t+(2-sqrt6)cos 2t)/12",
             (8 + kSqrt6 + 2 * std::cos(theta) + (2 - kSqrt6) * std::cos(2 * theta)) / 12, f_adm);
    r.expect("fidelity.spa" + at, "(5+cos t)/6", (5 + std::cos(theta)) / 6, f_spa);
    r.expect("fidelity.gap" + at, "(sqrt6-2) sin^2 t / 6", (kSqrt6 - 2) * std::pow(std::sin(theta), 2) / 6,
             f_adm - f_spa);
  }
  r.expect("fidelity.minimum", "2/3", 2.0 / 3, fidelity_vs_input(DensityMatrix::pure_qubit(pi), t, DepolarizerParams{best}));
  r.expect("diamond_distance", "(sqrt6-2)/3", (kSqrt6 - 2) / 3,
           pauli_diamond_distance(pauli_weights(best), pauli_weights(spa)));

  const Feasibility f = feasibility(t, DepolarizerParams{best});
  r.expect("certificate.composition", "0", 0.0, f.comp_min_eig);
  r.expect("certificate.adm", "(5-2sqrt6)/6", (5 - 2 * kSqrt6) / 6, f.adm_min_eig);

  r.expect("symmetric_tau", "2/3", 2.0 / 3, optimal_symmetric_tau(t).tau);
  const OptimizationResult opt = optimize_adm(t);
  const auto p = opt.params.flat();
  r.expect("optimizer.alpha", "sqrt(2/3)", kS23, p[0], kOptimizerTol);
  r.expect("optimizer.beta", "sqrt(2/3)", kS23, p[1], kOptimizerTol);
  r.expect("optimizer.gamma", "2/3", 2.0 / 3, p[2], kOptimizerTol);
  r.expect("optimizer.m1", "(2+2sqrt6)/9", (2 + 2 * kSqrt6) / 9, opt.objective);
  r.outputs["optimizer_params"] = params_json(opt.params);
}

void scenario_flip(RunReport& r) {
  const Channel map = flip_translation_map();
  r.expect_spectrum("b_spectrum", {{"2", 2}, {"sqrt2", kSqrt2}, {"-sqrt2", -kSqrt2}, {"0", 0}}, spectrum(map));
  r.expect("bloch_action.x", "-x-sqrt2 at (0.3,0.2,0.1)", -0.3 - kSqrt2, image(map, {0.3, 0.2, 0.1})[0], 1e-12);
  r.expect("bloch_action.y", "-y at (0.3,0.2,0.1)", -0.2, image(map, {0.3, 0.2, 0.1})[1], 1e-12);
  r.expect("bloch_action.z", "-z-sqrt2 at (0.3,0.2,0.1)", -0.1 - kSqrt2, image(map, {0.3, 0.2, 0.1})[2], 1e-12);
  r.expect("symmetric_tau", "1/(1+2sqrt2)", 1 / (1 + 2 * kSqrt2), optimal_symmetric_tau(map).tau);

  const OptimizationResult opt = optimize_adm(map);
  const auto p = opt.params.flat();
  r.expect("optimizer.alpha", "0", 0.0, p[0], kOptimizerTol);
  r.expect("optimizer.beta", "1", 1.0, p[1], kOptimizerTol);
  r.expect("optimizer.gamma", "0", 0.0, p[2], kOptimizerTol);
  r.expect("optimizer.m1", "1/3", 1.0 / 3, opt.objective);
  r.expect_at_least("optimizer.m1_over_symmetric", "1/(1+2sqrt2)", 1 / (1 + 2 * kSqrt2), opt.objective);
  r.outputs["optimizer_params"] = params_json(opt.params);
}

void scenario_diagonal(RunReport& r) {
  const Channel map = diagonal_translation_map();
  r.expect("equals_translation", "T(-sqrt2,0,-sqrt2) (max diff)", 0.0,
           max_abs_diff(map.a_matrix(), translation({-kSqrt2, 0.0, -kSqrt2}).a_matrix()), 1e-12);
  r.expect_spectrum("b_spectrum", {{"1+sqrt2", 1 + kSqrt2}, {"1-sqrt2", 1 - kSqrt2}, {"1", 1}, {"-1", -1}}, spectrum(map));
  r.expect("symmetric_tau", "1/3", 1.0 / 3, optimal_symmetric_tau(map).tau);

  const DepolarizerParams printed{{49.0 / 200, 819.0 / 1000, 49.0 / 200}};
  r.expect("printed_params.m1", "1.309/3", 1.309 / 3, m1(printed));
  r.expect_true("printed_params.feasible", feasibility(map, printed).feasible());
  const DensityMatrix domain = DensityMatrix::from_bloch({1 / kSqrt2, 0.0, 1 / kSqrt2});
  r.expect("printed_params.fidelity", "151/400", 151.0 / 400, fidelity_vs_input(domain, map, printed));
  r.expect("spa.fidelity", "1/3", 1.0 / 3, fidelity_vs_input(domain, map, DepolarizerParams::symmetric(1.0 / 3)));

  const OptimizationResult opt = optimize_adm(map);
  r.expect_at_least("optimizer.m1", "1.309/3 - 1e-3", 1.309 / 3 - 1e-3, opt.objective, 0.0);
  r.outputs["optimizer_params"] = params_json(opt.params);

  SearchConfig bounded;
  bounded.constraint_mode = ConstraintMode::kBoundedBySymmetric;
  bounded.sign_mode = SignMode::kNonNegative;
  const OptimizationResult bounded_result = optimize_adm(map, {}, bounded);
  r.expect("bounded.m1", "1/3", 1.0 / 3, bounded_result.objective);
  r.outputs["bounded_params"] = params_json(bounded_result.params);
}

void scenario_antidiagonal(RunReport& r) {
  for (double x : {1.5, 2.0, 10.0}) {
    const std::string at = "[x=" + fmt(x) + "]";
    const Channel map = antidiagonal_map(x);
    const DepolarizerTriple fix{1 / x, -1 / x, -1.0};
    r.expect_true("map_ncp" + at, !is_cp(map).completely_positive);
    r.expect_true("depolarizer_valid" + at, fujiwara_algoet_valid(DepolarizerParams{fix}));
    r.expect("composition_is_identity" + at, "I (max diff)", 0.0,
             max_abs_diff(compose(adm(fix), map).a_matrix(), ComplexMatrix::identity(4)), 1e-12);
  }
}

void scenario_contraction(RunReport& r) {
  for (double x : {1.5, 2.0, 3.0, 10.0}) {
    const std::string at = "[x=" + fmt(x) + "]";
    const Channel map = contraction_map(x);
    const Channel composed = compose(adm(DepolarizerTriple{1 / (x * x), 1 / (x * x), 0.0}), map);
    r.expect("composition_is_pauli" + at, "L(1/x,1/x,0) (max diff)", 0.0,
             max_abs_diff(composed.a_matrix(), adm(DepolarizerTriple{1 / x, 1 / x, 0.0}).a_matrix()), 1e-12);
    r.expect_true("composition_" + std::string(x >= 2.0 ? "cp" : "ncp") + at,
                  is_cp(composed).completely_positive == (x >= 2.0));
  }
  const DepolarizerParams w = theorem2_witness(contraction_map(3.0));
  r.expect_at_least("witness.alpha[x=3]", "1/9", 1.0 / 9, std::abs(w[0][0]));
  r.expect_at_least("witness.beta[x=3]", "1/9", 1.0 / 9, std::abs(w[0][1]));
  r.expect_at_least("witness.gamma[x=3]", "1e-4", 1e-4, std::abs(w[0][2]), 0.0);
  r.outputs["witness_x3"] = params_json(w);
}

void scenario_robust(RunReport& r) {
  r.expect_true("ncp[kappa=1]", !is_cp(robust_map(1.0)).completely_positive);
  r.expect_true("cp[kappa=0.3]", is_cp(robust_map(0.3)).completely_positive);
  for (double kappa : {1.0, 2.0, 5.0}) {
    const std::string at = "[kappa=" + fmt(kappa) + "]";
    const Channel map = robust_map(kappa);
    r.expect("y_boundary" + at, "1/kappa", 1 / kappa, robust_y_boundary(kappa));
    const Channel y_only = adm(DepolarizerTriple{0.0, 1 / kappa, 0.0}, {.allow_unphysical = true});
    r.expect_spectrum("y_only.b_spectrum" + at, {{"1", 1}, {"1", 1}, {"0", 0}, {"0", 0}}, spectrum(compose(y_only, map)));
    r.expect_true("x_only_ncp" + at,
                  comp_min(adm(DepolarizerTriple{1 / kappa, 0.0, 0.0}, {.allow_unphysical = true}), map) < -1e-9);
    r.expect_true("z_only_ncp" + at,
                  comp_min(adm(DepolarizerTriple{0.0, 0.0, 1 / kappa}, {.allow_unphysical = true}), map) < -1e-9);
    const BlochVector out = image(map, {-1.0, 0.0, 0.0});
    r.expect("one_point.z" + at, "-1", -1.0, out[2], 1e-12);
    r.expect("one_point.xy_norm" + at, "0", 0.0, std::hypot(out[0], out[1]), 1e-12);
  }
  const DepolarizerParams w = theorem2_witness(robust_map(10.0));
  double smallest = 1.0;
  for (double v : w.flat()) smallest = std::min(smallest, std::abs(v));
  r.expect_at_least("witness.min_abs[kappa=10]", "1e-4", 1e-4, smallest, 0.0);
  r.expect_at_least("witness.beta_margin[kappa=10]", "0 (1/10 - beta)", 0.0, 0.1 - w[0][1], 0.0);
  r.outputs["witness_kappa10"] = params_json(w);
}

void scenario_pauli_identity(RunReport& r) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t d = std::size_t{1} << n;
    const std::string at = "[n=" + std::to_string(n) + "]";
    const ComplexMatrix form = pauli_form(n);
    r.expect("pauli_form" + at, "sum |ii><jj| (max diff)", 0.0, max_abs_diff(form, max_entangled_projector(d)), 1e-12);
    const auto eig = eigvalsh(form);
    r.expect("pauli_form.top_eigenvalue" + at, std::to_string(d), static_cast<double>(d), eig.front());
    r.expect("pauli_form.rest_eigenvalues" + at, "0", 0.0, std::max(std::abs(eig[1]), std::abs(eig.back())));
    const ComplexMatrix v = max_entangled_vector(d);
    r.expect("pauli_form.eigenvector" + at, "2^n sum|ii> (max diff)", 0.0,
             max_abs_diff(form * v, v * static_cast<double>(d)), 1e-12);
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    const std::size_t d = n == 1 ? 3 : 9;
    const std::string at = "[d=" + std::to_string(d) + "]";
    const ComplexMatrix form = gellmann_form(n);
    r.expect("gellmann_form" + at, "sum |ii><jj| (max diff)", 0.0, max_abs_diff(form, max_entangled_projector(d)), 1e-12);
    const auto eig = eigvalsh(form);
    r.expect("gellmann_form.top_eigenvalue" + at, std::to_string(d), static_cast<double>(d), eig.front());
    r.expect("gellmann_form.rest_eigenvalues" + at, "0", 0.0, std::max(std::abs(eig[1]), std::abs(eig.back())));
  }
  ComplexMatrix closure(3, 3);
  for (int i = 0; i < 9; ++i) closure += gellmann(i) * gellmann(i);
  r.expect("gellmann_closure", "3 I (max diff)", 0.0, max_abs_diff(closure, ComplexMatrix::identity(3) * 3.0), 1e-12);
}

void scenario_local_kraus(RunReport& r) {
  for (std::size_t k = 2; k <= 4; ++k) {
    const std::string at = "[k=" + std::to_string(k) + "]";
    const ComplexMatrix u = ebit_merge_unitary(k);
    ComplexMatrix ebits = ComplexMatrix::identity(1);
    for (std::size_t i = 0; i < k; ++i) ebits = kron(ebits, max_entangled_vector(2));
    r.expect("merge" + at, "sum_i |i>|i> (max diff)", 0.0,
             max_abs_diff(u * ebits, max_entangled_vector(std::size_t{1} << k)), 1e-12);
    bool permutation = true;
    for (std::size_t row = 0; row < u.rows(); ++row) {
      int ones_in_row = 0;
      int ones_in_col = 0;
      for (std::size_t c = 0; c < u.cols(); ++c) {
        const Complex e = u(row, c);
        if (e != Complex(0.0) && e != Complex(1.0)) permutation = false;
        ones_in_row += e == Complex(1.0);
        ones_in_col += u(c, row) == Complex(1.0);
      }
      permutation = permutation && ones_in_row == 1 && ones_in_col == 1;
    }
    r.expect_true("permutation" + at, permutation);
  }
}

void scenario_extension(RunReport& r) {
  const Channel comp = completely_depolarizing(1);
  const ComplexMatrix rho = ComplexMatrix::identity(4) * 0.25;
  const ComplexMatrix naive = unvec(kron(comp.a_matrix(), ComplexMatrix::identity(4)) * vec(rho), 4, 4);
  const ComplexMatrix bell = max_entangled_projector(2) * 0.125;
  r.expect("naive.output", "(1/8)|Phi+><Phi+| (max diff)", 0.0, max_abs_diff(naive, bell), 1e-12);
  r.expect("naive.output_trace", "1/4", 0.25, naive.trace().real(), 1e-12);

  const std::vector<Channel> parts{comp, Channel::identity(2)};
  const Channel correct = extend_local(parts);
  r.expect("correct.output", "I/4 (max diff)", 0.0, max_abs_diff(apply(correct, rho), rho), 1e-12);

  ComplexMatrix printed(16, 16);
  for (const auto& [row, col] : std::initializer_list<std::pair<int, int>>{
           {0, 0}, {0, 10}, {1, 1}, {1, 11}, {4, 4}, {4, 14}, {5, 5}, {5, 15},
           {10, 0}, {10, 10}, {11, 1}, {11, 11}, {14, 4}, {14, 14}, {15, 5}, {15, 15}}) {
    printed(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) = 0.5;
  }
  r.expect("correct.a_matrix", "printed 16x16 (max diff)", 0.0, max_abs_diff(correct.a_matrix(), printed), 1e-12);
  r.expect("kraus_route", "permutation route (max diff)", 0.0,
           max_abs_diff(extend_local_kraus(parts).a_matrix(), correct.a_matrix()), 1e-12);
}

using Scenario = std::function<void(RunReport&)>;

const std::vector<std::pair<std::string, Scenario>>& scenarios() {
  static const std::vector<std::pair<std::string, Scenario>> table{
      {"1", scenario_translation},         {"3a", scenario_flip},     {"3b", scenario_diagonal},     {"4", scenario_antidiagonal},     {"5", scenario_contraction},
      {"robust", scenario_robust}, {"thm1", scenario_pauli_identity}, {"appC", scenario_local_kraus}, {"appA", scenario_extension}};
  return table;
}

}  // namespace

RunReport cmd_check(const std::filesystem::path& channel_file, double tol) {
  RunReport r;
  r.command = "check";
  r.inputs["file"] = channel_file.string();
  r.inputs["tol"] = tol;
  const Channel c = load_channel(channel_file);
  const CpVerdict v = is_cp(c, tol);
  r.outputs["rep"] = std::string(to_string(c.source()));
  r.outputs["dim_in"] = c.dim_in();
  r.outputs["dim_out"] = c.dim_out();
  r.outputs["verdict"] = v.completely_positive ? "CP" : "NCP";
  r.outputs["min_eigenvalue"] = v.min_eigenvalue;
  r.outputs["b_spectrum"] = spectrum(c);
  r.outputs["b_trace"] = c.b_trace();
  r.outputs["trace_preserving"] = c.trace_preserving();
  r.outputs["tp_residual"] = c.trace_preservation_residual();
  int positive = 0;
  int negative = 0;
  for (const auto& k : c.kraus()) (k.eta > 0 ? positive : negative)++;
  r.outputs["kraus_positive"] = positive;
  r.outputs["kraus_negative"] = negative;
  return r;
}

RunReport cmd_optimize(const std::filesystem::path& channel_file, const OptimizeOptions& options) {
  RunReport r;
  r.command = "optimize";
  r.inputs["file"] = channel_file.string();
  r.inputs["objective"] = options.objective;
  r.inputs["mode"] = options.mode;
  r.inputs["grid"] = options.grid;
  r.inputs["refinement"] = options.refinement;
  r.inputs["tol"] = options.tol;

  const Channel map = load_channel(channel_file);
  if (!map.trace_preserving()) throw ParamOutOfRange("optimize needs a trace-preserving map");

  Objective objective;
  if (options.objective == "m1") {
    objective.kind = ObjectiveKind::kM1;
  } else if (options.objective == "fid-in") {
    objective.kind = ObjectiveKind::kFidelityVsInput;
  } else if (options.objective == "fid-out") {
    objective.kind = ObjectiveKind::kFidelityVsMapOutput;
  } else {
    throw ParseError("unknown objective " + options.objective);
  }
  SearchConfig config;
  config.grid_resolution = options.grid;
  config.refinement = options.refinement;
  config.psd_tol = options.tol;
  config.record_trace = options.trace_csv.has_value();
  if (options.mode == "cube") {
    config.sign_mode = SignMode::kFullCube;
  } else if (options.mode == "nonneg") {
    config.sign_mode = SignMode::kNonNegative;
  } else if (options.mode == "bounded") {
    config.sign_mode = SignMode::kNonNegative;
    config.constraint_mode = ConstraintMode::kBoundedBySymmetric;
  } else {
    throw ParseError("unknown mode " + options.mode);
  }

  const OptimizationResult opt = optimize_adm(map, objective, config);
  const SymmetricTau spa = optimal_symmetric_tau(map, options.tol);
  const DepolarizerParams spa_params = DepolarizerParams::symmetric(spa.tau, opt.params.qubits());

  Json adm_out;
  adm_out["params"] = params_json(opt.params);
  adm_out["objective"] = opt.objective;
  adm_out["composition_min_eig"] = opt.composition_min_eig;
  adm_out["adm_min_eig"] = opt.adm_min_eig;
  adm_out["iterations"] = opt.iterations;
  adm_out["converged"] = opt.converged;
  r.outputs["adm"] = std::move(adm_out);

  Json spa_out;
  spa_out["tau"] = spa.tau;
  spa_out["certificate"] = spa.certificate;
  spa_out["monotone"] = spa.monotone;
  if (!spa.diagnostic.empty()) spa_out["diagnostic"] = spa.diagnostic;
  r.outputs["spa"] = std::move(spa_out);

  Json table;
  table["m1"] = {{"adm", m1(opt.params)}, {"spa", m1(spa_params)}};
  if (map.dim_in() == 2 && map.dim_out() == 2) {
    for (const auto& [key, kind] : {std::pair{"fid_in", ObjectiveKind::kFidelityVsInput},
                                    std::pair{"fid_out", ObjectiveKind::kFidelityVsMapOutput}}) {
      double adm_sum = 0.0;
      double spa_sum = 0.0;
      for (std::size_t k = 0; k < kDefaultReferenceSamples; ++k) {
        const DensityMatrix rho = DensityMatrix::pure_qubit(pi * static_cast<double>(k) /
                                                            static_cast<double>(kDefaultReferenceSamples - 1));
        const BlochVector rv = bloch_vector(rho);
        const BlochVector ri = bloch_vector(apply(map, rho.matrix()));
        if (kind == ObjectiveKind::kFidelityVsInput) {
          adm_sum += fidelity_from_bloch(rv, ri, opt.params[0], true);
          spa_sum += fidelity_from_bloch(rv, ri, spa_params[0], true);
        } else {
          adm_sum += fidelity_output_from_bloch(ri, opt.params[0], true);
          spa_sum += fidelity_output_from_bloch(ri, spa_params[0], true);
        }
      }
      const auto count = static_cast<double>(kDefaultReferenceSamples);
      table[key] = {{"adm", adm_sum / count}, {"spa", spa_sum / count}};
    }
    table["diamond_distance"] =
        pauli_diamond_distance(pauli_weights(opt.params[0]), pauli_weights(spa_params[0]));
  }
  r.outputs["comparison"] = std::move(table);

  if (options.trace_csv) {
    std::ofstream out = open_csv(*options.trace_csv);
    write_trace_csv(out, opt.trace);
    r.outputs["trace_rows"] = opt.trace.size();
  }
  return r;
}

const std::vector<std::string>& paper_example_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : scenarios()) out.push_back(id);
    return out;
  }();
  return ids;
}

RunReport cmd_paper(const std::string& example_id) {
  RunReport r;
  r.command = "paper";
  r.inputs["example"] = example_id;
  for (const auto& [id, fn] : scenarios()) {
    if (id == example_id) {
      fn(r);
      return r;
    }
  }
  throw ParseError("unknown example " + example_id);
}

const std::vector<std::string>& plot_scenarios() {
  static const std::vector<std::string> names{"fidelity-theta", "bloch-image", "robust-domain"};
  return names;
}

RunReport cmd_plotdata(const std::string& scenario, const std::filesystem::path& path) {
  RunReport r;
  r.command = "plotdata";
  r.inputs["scenario"] = scenario;
  r.inputs["out"] = path.string();
  const Channel t = translation({0.0, 0.0, 0.5});
  const DepolarizerParams best{{kS23, kS23, 2.0 / 3.0}};
  const DepolarizerParams spa = DepolarizerParams::symmetric(2.0 / 3.0);

  if (scenario == "fidelity-theta") {
    std::ofstream out = open_csv(path);
    out << "theta,f_adm,f_spa,gap\n";
    double worst = 0.0;
    double min_gap = 1.0;
    for (int deg = 0; deg <= 180; ++deg) {
      const double theta = pi * deg / 180.0;
      const DensityMatrix rho = DensityMatrix::pure_qubit(theta);
      const double f_adm = fidelity_vs_input(rho, t, best);
      const double f_spa = fidelity_vs_input(rho, t, spa);
      csv_row(out, {theta, f_adm, f_spa, f_adm - f_spa});
      worst = std::max(worst, std::abs(f_adm - f_spa - (kSqrt6 - 2) * std::pow(std::sin(theta), 2) / 6));
      min_gap = std::min(min_gap, f_adm - f_spa);
    }
    r.outputs["rows"] = 181;
    r.expect("gap_formula", "(sqrt6-2) sin^2 t / 6 (max diff)", 0.0, worst);
    r.expect_at_least("gap_nonnegative", "0", 0.0, min_gap);
    r.expect("f_adm[theta=pi]", "2/3", 2.0 / 3, fidelity_vs_input(DensityMatrix::pure_qubit(pi), t, best));
    r.expect("f_spa[theta=pi]", "2/3", 2.0 / 3, fidelity_vs_input(DensityMatrix::pure_qubit(pi), t, spa));
  } else if (scenario == "bloch-image") {
    std::ofstream out = open_csv(path);
    out << "x,y,z,tx,ty,tz,cx,cy,cz\n";
    const Channel composed = compose(adm(best), t);
    double worst = 0.0;
    for (const auto& p : fibonacci_sphere(1000)) {
      const BlochVector tp = image(t, p);
      const BlochVector cp = image(composed, p);
      csv_row(out, {p[0], p[1], p[2], tp[0], tp[1], tp[2], cp[0], cp[1], cp[2]});
      const double e = std::pow(cp[0] / kS23, 2) + std::pow(cp[1] / kS23, 2) + std::pow((cp[2] - 1.0 / 3) / (2.0 / 3), 2);
      worst = std::max(worst, std::abs(e - 1.0));
    }
    r.outputs["rows"] = 1000;
    r.outputs["ellipsoid_center"] = {0.0, 0.0, 1.0 / 3};
    r.outputs["ellipsoid_semi_axes"] = {kS23, kS23, 2.0 / 3};
    r.expect("ellipsoid_residual", "0 (max over points)", 0.0, worst);
  } else if (scenario == "robust-domain") {
    std::ofstream out = open_csv(path);
    out << "r,x,y,z,ox,oy,oz,valid\n";
    const Channel map = robust_map(1.0);
    Json valid_counts = Json::array();
    const auto dirs = fibonacci_sphere(200);
    for (int k = 1; k <= 6; ++k) {
      const double radius = k / 6.0;
      int valid = 0;
      for (const auto& d : dirs) {
        const BlochVector p{radius * d[0], radius * d[1], radius * d[2]};
        const BlochVector o = image(map, p);
        const bool ok = norm(o) <= 1.0 + 1e-12;
        valid += ok;
        csv_row(out, {radius, p[0], p[1], p[2], o[0], o[1], o[2], ok ? 1.0 : 0.0});
      }
      valid_counts.push_back(valid);
    }
    r.outputs["rows"] = 6 * dirs.size();
    r.outputs["radii"] = {1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6, 1.0};
    r.outputs["valid_per_radius"] = std::move(valid_counts);
    const BlochVector minus = image(map, {-1.0, 0.0, 0.0});
    r.expect("one_point.z", "-1", -1.0, minus[2], 1e-12);
  } else {
    throw ParseError("unknown plot scenario " + scenario);
  }
  return r;
}

RunReport cmd_ensemble(std::uint64_t seed, std::size_t count) {
  RunReport r;
  r.command = "ensemble";
  r.inputs["seed"] = seed;
  r.inputs["count"] = count;
  Rng rng(seed);
  std::size_t m1_fail = 0;
  std::size_t witness_fail = 0;
  std::size_t monotone_fail = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const Channel map = random_tp_ncp_qubit_map(rng);
    const SymmetricTau spa = optimal_symmetric_tau(map);
    const OptimizationResult opt = optimize_adm(map);
    worst_margin = std::min(worst_margin, opt.objective - spa.tau);
    if (!(opt.objective >= spa.tau - 1e-9) || !feasibility(map, opt.params).feasible()) ++m1_fail;
    if (!spa.monotone) ++monotone_fail;
    try {
      const DepolarizerParams w = theorem2_witness(map);
      bool ok = feasibility(map, w).feasible();
      for (double v : w.flat()) ok = ok && std::abs(v) >= 1e-4;
      if (!ok) ++witness_fail;
    } catch (const InternalError&) {
      ++witness_fail;
    }
  }
  r.outputs["min_m1_minus_tau"] = worst_margin;
  r.expect("m1_at_least_tau.failures", "0", 0.0, static_cast<double>(m1_fail), 0.0);
  r.expect("witness.failures", "0", 0.0, static_cast<double>(witness_fail), 0.0);
  r.expect("symmetric_ray_monotone.failures", "0", 0.0, static_cast<double>(monotone_fail), 0.0);
  return r;
}

}  // namespace cpforge::cli
