#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "psigrad/abm.hpp"
#include "psigrad/objective.hpp"
#include "psigrad/weight.hpp"

namespace psigrad {

/// Classical RK4 integration of the integer-order gradient flow
/// y' = -beta grad f(y) on [start, start + T_span].
Trajectory rk4_flow(const Objective& objective, double beta, const Eigen::VectorXd& z0,
                    double start, double h, double T);

struct WeightConfig {
  WeightFamily family = WeightFamily::kIdentity;
  double k = 1.0;
  double domain_start = 0.0;

  WeightFunction build() const { return make_builtin(family, domain_start, k); }
};

struct SweepSpec {
  std::string objective_name;
  Objective objective;
  Eigen::VectorXd init;
  std::vector<double> alphas;
  std::vector<WeightConfig> weights;
  double beta = 1.0;
  double h = 1e-3;
  double T = 10.0;
  bool include_rk4 = true;
  int corrector_iters = 5;
  /// Reference point for the distance series when the objective carries no
  /// minimizer of its own.
  std::optional<Eigen::VectorXd> reference_point;
  /// Run the flow on -f (descent toward the objective's extremum at the
  /// reference point); used by the negative radial exponential benchmark,
  /// whose figures track convergence to the origin.
  bool descend_negated = false;
};

struct SweepResult {
  std::string label;
  Trajectory trajectory;            // empty grid when the solve failed
  std::vector<double> distance;     // |z(t) - y_ref| per grid node
  std::string error;                // divergence or setup failure, if any
  bool failed() const { return !error.empty(); }
};

/// Runs one flow per (alpha, weight) pair plus the optional RK4 baseline, all
/// on the common grid. Solver failures are recorded per label, not thrown.
/// Items run concurrently up to PSIGRAD_THREADS (default: hardware threads);
/// result order is deterministic.
std::vector<SweepResult> run_sweep(const SweepSpec& spec);

/// First grid time with distance <= eps; nullopt when the series never
/// reaches it.
std::optional<double> time_to_threshold(const std::vector<double>& times,
                                        const std::vector<double>& distance, double eps);

std::optional<double> time_to_threshold(const SweepResult& result, double eps);

}  // namespace psigrad
