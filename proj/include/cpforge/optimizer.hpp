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

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cpforge/channel.hpp"
#include "cpforge/maps.hpp"

namespace cpforge {

enum class ObjectiveKind { kM1, kFidelityVsInput, kFidelityVsMapOutput };

std::string_view to_string(ObjectiveKind kind);

/**
 * What optimize_adm maximizes. Fidelity objectives are single-qubit and are
 * averaged over `reference`; without one, over the pure states at polar angles
 * k pi / 179 (k = 0..179, azimuth 0).
 */
struct Objective {
  ObjectiveKind kind = ObjectiveKind::kM1;
  std::optional<DensityMatrix> reference;
};

inline constexpr std::size_t kDefaultReferenceSamples = 180;

enum class SignMode { kNonNegative, kFullCube };
enum class ConstraintMode { kUnconstrained, kBoundedBySymmetric };

struct SearchConfig {
  /** Grid points per axis; at least 3. */
  std::size_t grid_resolution = 21;
  /** Simplex restarts per seed. */
  std::size_t refinement = 8;
  double psd_tol = kPsdTol;
  /** kBoundedBySymmetric forces every factor into [tau, 1]. */
  ConstraintMode constraint_mode = ConstraintMode::kUnconstrained;
  /** Lower bound for the bounded mode; computed with optimal_symmetric_tau when absent. */
  std::optional<double> bound_tau;
  SignMode sign_mode = SignMode::kFullCube;
  /** Cap on grid size; the per-axis resolution drops for many qubits to stay below it. */
  std::size_t grid_budget = 20000;
  /** Cap on objective evaluations during refinement; exceeding it sets converged = false. */
  std::size_t max_evaluations = 2000000;
  bool record_trace = false;
};

struct TraceRow {
  std::size_t iter = 0;
  std::vector<double> params;
  double objective = 0.0;
  double comp_min_eig = 0.0;
  double adm_min_eig = 0.0;
};

struct OptimizationResult {
  DepolarizerParams params;
  double objective = 0.0;
  ObjectiveKind objective_kind = ObjectiveKind::kM1;
  double composition_min_eig = 0.0;
  double adm_min_eig = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

/** Writes `iter,alpha,beta,gamma,objective,comp_min_eig,adm_min_eig` rows (indexed per qubit when n > 1). */
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

struct Feasibility {
  double comp_min_eig = 0.0;
  double adm_min_eig = 0.0;

  bool feasible(double tol = kPsdTol) const { return comp_min_eig >= -tol && adm_min_eig >= -tol; }
};

/**
 * Minimum B eigenvalues of adm(params) o map and of adm(params) itself. The second
 * is the least product of per-qubit closed-form eigenvalues.
 */
Feasibility feasibility(const Channel& map, const DepolarizerParams& params);

struct SymmetricTau {
  double tau = 0.0;
  /** Minimum composition eigenvalue at tau. */
  double certificate = 0.0;
  /** Every one of 100 samples in [0, tau] was feasible. */
  bool monotone = true;
  std::string diagnostic;
};

/** Largest tau in [0, 1] with symmetric_depolarizer(tau) o map CP, by bisection to 1e-12. */
SymmetricTau optimal_symmetric_tau(const Channel& map, double psd_tol = kPsdTol);

/**
 * Maximizes the objective over depolarizer factors subject to both PSD
 * certificates: grid scan, then penalized Nelder-Mead from the best grid points.
 * Deterministic for a fixed config regardless of thread count.
 */
OptimizationResult optimize_adm(const Channel& map, const Objective& objective = {},
                                const SearchConfig& config = {});

/**
 * Feasible factors with every |c| >= 1e-4: the largest feasible uniform scale,
 * then each axis raised in turn as far as feasibility allows.
 */
DepolarizerParams theorem2_witness(const Channel& map, double psd_tol = kPsdTol);

/** Worker count for parallel evaluation: CPFORGE_THREADS if set, else hardware concurrency. */
std::size_t worker_count();

}  // namespace cpforge
