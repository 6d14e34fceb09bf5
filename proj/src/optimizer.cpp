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

#include "cpforge/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>
#include <utility>

#include "cpforge/errors.hpp"
#include "cpforge/measures.hpp"

namespace cpforge {

namespace {

constexpr double kPenaltyWeight = 1e6;
constexpr double kTieTol = 1e-9;
// Secondary tie-break keys sit at the parameter resolution of the refinement.
constexpr double kParamTieTol = 1e-6;
constexpr double kWitnessFloor = 1e-4;
constexpr std::size_t kMaxSimplexIterations = 5000;
constexpr std::size_t kStallIterations = 100;
constexpr std::size_t kMonotonicitySamples = 100;

std::size_t qubit_count(const Channel& map) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < map.dim_out()) ++q;
  if ((std::size_t{1} << q) != map.dim_out() || q == 0) {
    throw DimensionMismatch("depolarizer search needs a qubit output space, got dim " +
                            std::to_string(map.dim_out()));
  }
  return q;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double adm_certificate(const DepolarizerParams& params) {
  // B of a local product is permutation-similar to the Kronecker product of the
  // single-qubit B-matrices, so its spectrum is all products of local eigenvalues.
  std::vector<double> products{1.0};
  for (const auto& t : params.per_qubit()) {
    const auto local = adm_b_eigenvalues(t);
    std::vector<double> next;
    next.reserve(products.size() * 4);
    for (double p : products)
      for (double e : local) next.push_back(p * e);
    products = std::move(next);
  }
  return *std::min_element(products.begin(), products.end());
}

double composition_certificate(const Channel& map, const DepolarizerParams& params) {
  const Channel l = adm(params, {.allow_unphysical = true});
  const ComplexMatrix a = l.a_matrix() * map.a_matrix();
  return min_eigenvalue(a_to_b(a, map.dim_in(), map.dim_out()));
}

// Single-qubit maps: B(adm(c) o map) = B0 + sum_i c_i B_i, precomputed once.
class CompositionCertificate {
 public:
  explicit CompositionCertificate(const Channel& map) : map_(map) {
    if (map.dim_out() != 2) return;
    auto b_at = [&](const DepolarizerTriple& t) {
      const ComplexMatrix a = adm(t, {.allow_unphysical = true}).a_matrix() * map.a_matrix();
      return a_to_b(a, map.dim_in(), map.dim_out());
    };
    const ComplexMatrix b0 = b_at({0.0, 0.0, 0.0});
    basis_.push_back(b0);
    basis_.push_back(b_at({1.0, 0.0, 0.0}) - b0);
    basis_.push_back(b_at({0.0, 1.0, 0.0}) - b0);
    basis_.push_back(b_at({0.0, 0.0, 1.0}) - b0);
  }

  double operator()(const DepolarizerParams& params) const {
    if (basis_.empty()) return composition_certificate(map_, params);
    ComplexMatrix b = basis_[0];
    for (int i = 0; i < 3; ++i) {
      const double c = params[0][static_cast<std::size_t>(i)];
      auto dst = b.entries();
      const auto src = basis_[static_cast<std::size_t>(i) + 1].entries();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += c * src[k];
    }
    return min_eigenvalue(b);
  }

 private:
  const Channel& map_;
  std::vector<ComplexMatrix> basis_;
};

struct Evaluation {
  double objective = 0.0;
  Feasibility feas;
};

class Problem {
 public:
  Problem(const Channel& map, const Objective& objective, std::size_t qubits)
      : certificate_(map), kind_(objective.kind), qubits_(qubits) {
    if (kind_ == ObjectiveKind::kM1) return;
    if (qubits_ != 1 || map.dim_in() != 2) {
      throw DimensionMismatch("fidelity objectives are single-qubit only");
    }
    std::vector<DensityMatrix> states;
    if (objective.reference) {
      states.push_back(*objective.reference);
    } else {
      for (std::size_t k = 0; k < kDefaultReferenceSamples; ++k) {
        const double theta = std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(kDefaultReferenceSamples - 1);
        states.push_back(DensityMatrix::pure_qubit(theta));
      }
    }
    for (const auto& rho : states) {
      refs_.emplace_back(bloch_vector(rho), bloch_vector(apply(map, rho.matrix())));
    }
  }

  std::size_t dims() const { return 3 * qubits_; }

  double objective(const DepolarizerParams& p) const {
    if (kind_ == ObjectiveKind::kM1) return m1(p);
    double sum = 0.0;
    for (const auto& [r, r_image] : refs_) {
      sum += kind_ == ObjectiveKind::kFidelityVsInput
                 ? fidelity_from_bloch(r, r_image, p[0], true)
                 : fidelity_output_from_bloch(r_image, p[0], true);
    }
    return sum / static_cast<double>(refs_.size());
  }

  Evaluation evaluate(const std::vector<double>& x) const {
    const DepolarizerParams p = DepolarizerParams::from_flat(x);
    return {objective(p), {certificate_(p), adm_certificate(p)}};
  }

 private:
  CompositionCertificate certificate_;
  ObjectiveKind kind_;
  std::size_t qubits_;
  std::vector<std::pair<BlochVector, BlochVector>> refs_;
};

struct Candidate {
  std::vector<double> x;
  Evaluation eval;
};

double sum_squares(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Highest objective; near-ties (kTieTol) go to the larger sum of squares, then
// to the lexicographically largest factors (both compared at kParamTieTol).
const Candidate& select_best(const std::vector<Candidate>& pool) {
  double best_obj = -std::numeric_limits<double>::infinity();
  for (const auto& c : pool) best_obj = std::max(best_obj, c.eval.objective);
  std::vector<const Candidate*> tied;
  for (const auto& c : pool)
    if (c.eval.objective >= best_obj - kTieTol) tied.push_back(&c);

  double best_ss = -1.0;
  for (const auto* c : tied) best_ss = std::max(best_ss, sum_squares(c->x));
  std::vector<const Candidate*> remaining;
  for (const auto* c : tied)
    if (sum_squares(c->x) >= best_ss - kParamTieTol) remaining.push_back(c);

  const Candidate* best = remaining.front();
  for (const auto* c : remaining) {
    for (std::size_t i = 0; i < c->x.size(); ++i) {
      const double d = c->x[i] - best->x[i];
      if (std::abs(d) <= kParamTieTol) continue;
      if (d > 0.0) best = c;
      break;
    }
  }
  return *best;
}

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::vector<double> clamp(const std::vector<double>& x) const {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], lo[i], hi[i]);
    return out;
  }

  double violation(const std::vector<double>& x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      v += std::max(0.0, lo[i] - x[i]) + std::max(0.0, x[i] - hi[i]);
    }
    return v;
  }
};

struct SimplexRun {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Penalized = std::function<double(const std::vector<double>&)>;
using IterationHook = std::function<void(const std::vector<double>&)>;

// Minimizes g by Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2).
SimplexRun nelder_mead(const Penalized& g, const std::vector<double>& x0, double step,
                       const Box& box, std::size_t max_evaluations, const IterationHook& hook) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += (x0[i] + step <= box.hi[i]) ? step : -step;
  }
  SimplexRun run;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = g(pts[i]);
  run.evaluations = n + 1;

  std::vector<std::size_t> order(n + 1);
  double record = std::numeric_limits<double>::infinity();
  std::size_t last_gain = 0;
  auto eval = [&](const std::vector<double>& p) {
    ++run.evaluations;
    return g(p);
  };

  while (true) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (hook) hook(pts[best]);

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(pts[i][k] - pts[best][k]));
    const double spread = vals[worst] - vals[best];
    if (vals[best] < record - 1e-13 * (1.0 + std::abs(record))) {
      record = vals[best];
      last_gain = run.iterations;
    }
    // A collapsed simplex, or one crawling along a kink without gaining, is done.
    const bool collapsed = diameter <= 1e-14 || (diameter <= 1e-9 && spread <= 1e-12 * (1.0 + std::abs(vals[best])));
    if (collapsed || run.iterations - last_gain > kStallIterations * (n + 1)) {
      run.converged = true;
      break;
    }
    if (run.iterations >= kMaxSimplexIterations || run.evaluations >= max_evaluations) break;
    ++run.iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return p;
    };

    const auto reflected = along(-1.0);
    const double f_r = eval(reflected);
    if (f_r < vals[best]) {
      const auto expanded = along(-2.0);
      const double f_e = eval(expanded);
      if (f_e < f_r) {
        pts[worst] = expanded;
        vals[worst] = f_e;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_r;
      }
      continue;
    }
    if (f_r < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = f_r;
      continue;
    }
    const bool outside = f_r < vals[worst];
    const auto contracted = along(outside ? -0.5 : 0.5);
    const double f_c = eval(contracted);
    if (f_c < (outside ? f_r : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = f_c;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  run.x = pts[static_cast<std::size_t>(it - vals.begin())];
  run.value = *it;
  return run;
}

// Largest t in [0, 1] with anchor + t (x - anchor) feasible; the anchor must be feasible.
Candidate pull_back(const Problem& problem, const Candidate& anchor, const std::vector<double>& x,
                    double tol) {
  auto point = [&](double t) {
    std::vector<double> p(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) p[k] = anchor.x[k] + t * (x[k] - anchor.x[k]);
    return p;
  };
  const Evaluation full = problem.evaluate(x);
  if (full.feas.feasible(tol)) return {x, full};
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (problem.evaluate(point(mid)).feas.feasible(tol)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo == 0.0) return anchor;
  auto p = point(lo);
  return {p, problem.evaluate(p)};
}

// Exit point of the ray t u (t >= 0) from the single-qubit feasible set. Both
// B-matrices are affine in the factors, so with B(t u) = B0 + t D the exit is
// -1 / lambda_min(B0^{-1/2} D B0^{-1/2}); the box adds linear limits.
class RayBoundary {
 public:
  RayBoundary(const Channel& map, const Box& box) : map_(map), box_(box) {
    const std::vector<double> origin(3, 0.0);
    comp0_ = comp_b(origin);
    adm0_ = adm_b(origin);
    comp_w_ = inverse_sqrt(comp0_);
    adm_w_ = inverse_sqrt(adm0_);
  }

  bool usable() const { return comp_w_.has_value() && adm_w_.has_value(); }

  std::optional<std::vector<double>> exit_point(const std::vector<double>& u) const {
    const double norm = std::sqrt(sum_squares(u));
    if (!(norm > 1e-12)) return std::nullopt;
    std::vector<double> dir(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) dir[k] = u[k] / norm;

    double t_lo = 0.0;
    double t_hi = std::min(limit(*comp_w_, comp_b(dir) - comp0_), limit(*adm_w_, adm_b(dir) - adm0_));
    for (std::size_t k = 0; k < dir.size(); ++k) {
      if (dir[k] > 0.0) {
        t_hi = std::min(t_hi, box_.hi[k] / dir[k]);
        t_lo = std::max(t_lo, box_.lo[k] / dir[k]);
      } else if (dir[k] < 0.0) {
        t_hi = std::min(t_hi, box_.lo[k] / dir[k]);
        t_lo = std::max(t_lo, box_.hi[k] / dir[k]);
      } else if (box_.lo[k] > 0.0 || box_.hi[k] < 0.0) {
        return std::nullopt;
      }
    }
    if (t_lo > t_hi) return std::nullopt;
    std::vector<double> x(dir.size());
    for (std::size_t k = 0; k < dir.size(); ++k) x[k] = t_hi * dir[k];
    return box_.clamp(x);
  }

 private:
  ComplexMatrix comp_b(const std::vector<double>& x) const {
    const Channel l = adm(DepolarizerParams::from_flat(x), {.allow_unphysical = true});
    return a_to_b(l.a_matrix() * map_.a_matrix(), map_.dim_in(), map_.dim_out());
  }

  static ComplexMatrix adm_b(const std::vector<double>& x) {
    return adm(DepolarizerParams::from_flat(x), {.allow_unphysical = true}).b_matrix();
  }

  static std::optional<ComplexMatrix> inverse_sqrt(const ComplexMatrix& b) {
    const EigenResult e = eigh(b);
    if (!(e.eigenvalues.back() > 1e-9)) return std::nullopt;
    std::vector<double> scale(e.eigenvalues.size());
    for (std::size_t i = 0; i < scale.size(); ++i) scale[i] = 1.0 / std::sqrt(e.eigenvalues[i]);
    return e.eigenvectors * ComplexMatrix::diagonal(scale) * e.eigenvectors.adjoint();
  }

  static double limit(const ComplexMatrix& w, const ComplexMatrix& slope) {
    const double lam = min_eigenvalue(w * slope * w);
    return lam < 0.0 ? -1.0 / lam : std::numeric_limits<double>::infinity();
  }

  const Channel& map_;
  const Box& box_;
  ComplexMatrix comp0_;
  ComplexMatrix adm0_;
  std::optional<ComplexMatrix> comp_w_;
  std::optional<ComplexMatrix> adm_w_;
};

// Maximizes the objective over boundary points reached by rays from the origin.
std::optional<Candidate> polish(const Problem& problem, const RayBoundary& ray,
                                const Candidate& start, std::size_t restarts, double tol,
                                std::size_t& iterations) {
  const Penalized g = [&](const std::vector<double>& u) {
    const auto x = ray.exit_point(u);
    return x ? -problem.evaluate(*x).objective : kPenaltyWeight;
  };
  std::vector<double> u = start.x;
  if (!ray.exit_point(u)) return std::nullopt;
  const double n = static_cast<double>(u.size());
  const Box free{std::vector<double>(u.size(), -n), std::vector<double>(u.size(), n)};
  double step = 0.05 * std::sqrt(sum_squares(u));
  for (std::size_t r = 0; r < restarts; ++r) {
    const SimplexRun run = nelder_mead(g, u, step, free, 4000, {});
    iterations += run.iterations;
    u = run.x;
    step *= 0.25;
  }
  const auto x = ray.exit_point(u);
  if (!x) return std::nullopt;
  const Evaluation e = problem.evaluate(*x);
  if (!e.feas.feasible(tol)) return std::nullopt;
  return Candidate{*x, e};
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kM1:
      return "m1";
    case ObjectiveKind::kFidelityVsInput:
      return "fid-in";
    case ObjectiveKind::kFidelityVsMapOutput:
      return "fid-out";
  }
  return "?";
}

std::size_t worker_count() {
  if (const char* env = std::getenv("CPFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  const std::size_t qubits = trace.empty() ? 1 : trace.front().params.size() / 3;
  out << "iter";
  for (std::size_t q = 0; q < qubits; ++q) {
    const std::string suffix = qubits == 1 ? "" : std::to_string(q + 1);
    out << ",alpha" << suffix << ",beta" << suffix << ",gamma" << suffix;
  }
  out << ",objective,comp_min_eig,adm_min_eig\n";
  const auto old_precision = out.precision(17);
  for (const auto& row : trace) {
    out << row.iter;
    for (double v : row.params) out << ',' << v;
    out << ',' << row.objective << ',' << row.comp_min_eig << ',' << row.adm_min_eig << '\n';
  }
  out.precision(old_precision);
}

Feasibility feasibility(const Channel& map, const DepolarizerParams& params) {
  if (params.qubits() != qubit_count(map)) {
    throw DimensionMismatch("feasibility: " + std::to_string(params.qubits()) +
                            " depolarizer triples for a " + std::to_string(map.dim_out()) +
                            "-dimensional output");
  }
  return {composition_certificate(map, params), adm_certificate(params)};
}

SymmetricTau optimal_symmetric_tau(const Channel& map, double psd_tol) {
  const std::size_t qubits = qubit_count(map);
  const CompositionCertificate composition(map);
  auto certificate = [&](double tau) {
    return composition(DepolarizerParams::symmetric(tau, qubits));
  };
  const double at_zero = certificate(0.0);
  if (at_zero < -psd_tol) {
    throw InternalError("complete depolarization of the map is not CP (min eigenvalue " +
                        std::to_string(at_zero) + "); the map is not trace-preserving");
  }

  SymmetricTau out;
  if (certificate(1.0) >= -psd_tol) {
    out.tau = 1.0;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (certificate(mid) >= -psd_tol) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.tau = lo;
  }
  out.certificate = certificate(out.tau);

  for (std::size_t k = 0; k < kMonotonicitySamples; ++k) {
    const double t = out.tau * static_cast<double>(k) / static_cast<double>(kMonotonicitySamples);
    const double c = certificate(t);
    if (c < -psd_tol) {
      out.monotone = false;
      out.diagnostic = "symmetric ray infeasible at tau=" + std::to_string(t) +
                       " below the bisection result " + std::to_string(out.tau) +
                       " (min eigenvalue " + std::to_string(c) + ")";
      break;
    }
  }
  return out;
}

OptimizationResult optimize_adm(const Channel& map, const Objective& objective,
                                const SearchConfig& config) {
  if (config.grid_resolution < 3) throw ParamOutOfRange("grid_resolution must be at least 3");
  const std::size_t qubits = qubit_count(map);
  if (qubits > 3) throw DimensionMismatch("optimize_adm supports at most 3 qubits");
  const Problem problem(map, objective, qubits);
  const std::size_t dims = problem.dims();
  const double tol = config.psd_tol;

  const double tau_sym = optimal_symmetric_tau(map, tol).tau;
  double lower = config.sign_mode == SignMode::kFullCube ? -1.0 : 0.0;
  if (config.constraint_mode == ConstraintMode::kBoundedBySymmetric) {
    lower = config.bound_tau.value_or(tau_sym);
  }
  const Box box{std::vector<double>(dims, lower), std::vector<double>(dims, 1.0)};

  const Candidate symmetric{std::vector<double>(dims, tau_sym),
                            problem.evaluate(std::vector<double>(dims, tau_sym))};

  // Grid scan.
  const auto by_budget = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(config.grid_budget), 1.0 / static_cast<double>(dims)) +
                 1e-9));
  const std::size_t res = std::max<std::size_t>(3, std::min(config.grid_resolution, by_budget));
  std::size_t grid_size = 1;
  for (std::size_t i = 0; i < dims; ++i) grid_size *= res;
  auto grid_point = [&](std::size_t index) {
    std::vector<double> x(dims);
    for (std::size_t i = dims; i-- > 0;) {
      const std::size_t k = index % res;
      index /= res;
      x[i] = lower + (1.0 - lower) * static_cast<double>(k) / static_cast<double>(res - 1);
    }
    return x;
  };
  std::vector<Evaluation> grid(grid_size);
  parallel_for(grid_size, [&](std::size_t i) { grid[i] = problem.evaluate(grid_point(i)); });

  std::vector<Candidate> pool{symmetric};
  std::map<std::size_t, std::size_t> best_in_orthant;
  std::vector<std::size_t> feasible_indices;
  for (std::size_t i = 0; i < grid_size; ++i) {
    if (!grid[i].feas.feasible(tol)) continue;
    feasible_indices.push_back(i);
    const auto x = grid_point(i);
    pool.push_back({x, grid[i]});
    std::size_t orthant = 0;
    for (std::size_t k = 0; k < dims; ++k)
      if (x[k] < 0.0) orthant |= std::size_t{1} << k;
    auto [it, inserted] = best_in_orthant.try_emplace(orthant, i);
    if (!inserted && grid[i].objective > grid[it->second].objective) it->second = i;
  }

  // Seeds: best point of each sign orthant and the overall leaders, capped at 8 each.
  auto by_objective = [&](std::size_t a, std::size_t b) {
    if (grid[a].objective != grid[b].objective) return grid[a].objective > grid[b].objective;
    return a < b;
  };
  std::vector<std::size_t> orthant_leaders;
  for (const auto& [orthant, index] : best_in_orthant) orthant_leaders.push_back(index);
  std::sort(orthant_leaders.begin(), orthant_leaders.end(), by_objective);
  if (orthant_leaders.size() > 8) orthant_leaders.resize(8);
  std::partial_sort(feasible_indices.begin(),
                    feasible_indices.begin() + std::min<std::ptrdiff_t>(4, feasible_indices.size()),
                    feasible_indices.end(), by_objective);
  if (feasible_indices.size() > 4) feasible_indices.resize(4);

  std::vector<Candidate> seeds{symmetric};
  auto add_seed = [&](std::size_t index) {
    const auto x = grid_point(index);
    for (const auto& s : seeds)
      if (s.x == x) return;
    seeds.push_back({x, grid[index]});
  };
  for (std::size_t i : orthant_leaders) add_seed(i);
  for (std::size_t i : feasible_indices) add_seed(i);

  // Penalized simplex refinement from each seed.
  const Penalized penalized = [&](const std::vector<double>& x) {
    const Evaluation e = problem.evaluate(box.clamp(x));
    const double infeasibility = std::max(0.0, -(e.feas.comp_min_eig + tol)) +
                                 std::max(0.0, -(e.feas.adm_min_eig + tol));
    return -e.objective + kPenaltyWeight * (infeasibility + box.violation(x));
  };
  const std::size_t per_seed_budget = std::max<std::size_t>(1, config.max_evaluations / seeds.size());

  struct SeedOutcome {
    Candidate refined;
    std::size_t iterations = 0;
    bool converged = true;
    std::vector<TraceRow> trace;
  };
  std::vector<SeedOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t s) {
    SeedOutcome& out = outcomes[s];
    std::vector<double> x = seeds[s].x;
    std::size_t used = 0;
    const IterationHook hook = [&](const std::vector<double>& best) {
      if (!config.record_trace) return;
      const auto p = box.clamp(best);
      const Evaluation e = problem.evaluate(p);
      out.trace.push_back({0, p, e.objective, e.feas.comp_min_eig, e.feas.adm_min_eig});
    };
    double step = 0.1;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, config.refinement); ++r) {
      const std::size_t remaining = per_seed_budget > used ? per_seed_budget - used : 0;
      if (remaining == 0) {
        out.converged = false;
        break;
      }
      const SimplexRun run = nelder_mead(penalized, x, step, box, remaining, hook);
      used += run.evaluations;
      out.iterations += run.iterations;
      out.converged = out.converged && run.converged;
      x = run.x;
      step *= 0.5;
    }
    out.refined = pull_back(problem, seeds[s], box.clamp(x), 0.0);
  });

  OptimizationResult result;
  result.objective_kind = objective.kind;
  result.converged = true;
  for (auto& o : outcomes) {
    pool.push_back(o.refined);
    result.iterations += o.iterations;
    result.converged = result.converged && o.converged;
    for (auto& row : o.trace) {
      row.iter = result.trace.size();
      result.trace.push_back(std::move(row));
    }
  }

  // Radial polish of the distinct refined points (single qubit only: the
  // certificates are affine in the factors there).
  if (qubits == 1) {
    const RayBoundary ray(map, box);
    if (ray.usable()) {
      std::vector<std::vector<double>> starts;
      for (const auto& o : outcomes) {
        const bool seen = std::any_of(starts.begin(), starts.end(), [&](const auto& x) {
          double d = 0.0;
          for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - o.refined.x[k]));
          return d <= 1e-6;
        });
        if (seen) continue;
        starts.push_back(o.refined.x);
        if (auto c = polish(problem, ray, o.refined, std::max<std::size_t>(1, config.refinement / 2), tol,
                            result.iterations)) {
          pool.push_back(std::move(*c));
        }
      }
    }
  }

  const Candidate& best = select_best(pool);
  result.params = DepolarizerParams::from_flat(best.x);
  result.objective = best.eval.objective;
  result.composition_min_eig = best.eval.feas.comp_min_eig;
  result.adm_min_eig = best.eval.feas.adm_min_eig;
  return result;
}

DepolarizerParams theorem2_witness(const Channel& map, double psd_tol) {
  const std::size_t qubits = qubit_count(map);
  const std::size_t dims = 3 * qubits;
  auto feasible = [&](const std::vector<double>& x) {
    return feasibility(map, DepolarizerParams::from_flat(x)).feasible(psd_tol);
  };
  auto uniform = [&](double s) { return std::vector<double>(dims, s); };

  double hi = 1.0;
  double lo = 1.0;
  while (!feasible(uniform(lo))) {
    hi = lo;
    lo *= 0.5;
    if (lo < kWitnessFloor) {
      throw InternalError("no feasible uniform depolarizer scale above 1e-4");
    }
  }
  if (lo < hi) {
    while (hi - lo > 1e-12 * hi) {
      const double mid = 0.5 * (lo + hi);
      (feasible(uniform(mid)) ? lo : hi) = mid;
    }
  }

  std::vector<double> x = uniform(lo);
  for (std::size_t i = 0; i < dims; ++i) {
    auto raised = [&](double v) {
      auto y = x;
      y[i] = v;
      return y;
    };
    if (feasible(raised(1.0))) {
      x[i] = 1.0;
      continue;
    }
    double a = x[i];
    double b = 1.0;
    while (b - a > 1e-12) {
      const double mid = 0.5 * (a + b);
      (feasible(raised(mid)) ? a : b) = mid;
    }
    x[i] = a;
  }
  for (double v : x) {
    if (std::abs(v) < kWitnessFloor) throw InternalError("witness factor below 1e-4");
  }
  return DepolarizerParams::from_flat(x);
}

}  // namespace cpforge
