#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "psigrad/abm.hpp"
#include "psigrad/objective.hpp"
#include "psigrad/weight.hpp"

namespace psigrad {

/// Fractional gradient-descent flow D^alpha z = -beta grad f(z) (+ optional
/// forcing term), of Caputo or Riemann-Liouville kind.
struct FlowSpec {
  IvpKind kind = IvpKind::kCaputo;
  Objective objective;
  double beta = 1.0;
  double alpha = 1.0;
  WeightFunction weight;
  Eigen::VectorXd init;  // z0 (Caputo) or the weighted initial datum (RL)
  std::function<Eigen::VectorXd(double)> perturbation;  // optional forcing g(t)
  double horizon = 1.0;
  double h = 1e-3;
  int corrector_iters = 5;

  void validate() const;
};

/// Integrates the flow with the predictor-corrector solver; for kind = Caputo
/// the trajectory starts exactly at z0.
Trajectory run_flow(const FlowSpec& spec);

/// Fractionally weighted running average
///   zhat(t) = Gamma(alpha+1)/(psi(t)-psi(l))^alpha * (I^alpha z)(t),
/// defined for t > l (node 0 is dropped). Each coordinate stays inside the
/// running min/max of the trajectory.
Trajectory averaged_iterate(const Trajectory& traj, const WeightFunction& w, double alpha);

enum class BoundObservable { kStateSq, kObjectiveGap };

struct BoundReport {
  std::vector<double> times;
  std::vector<double> observed;
  std::vector<double> bound;
  std::vector<double> violated_at;

  bool ok() const { return violated_at.empty(); }
};

/// Checks the Mittag-Leffler convergence envelope along a solved flow:
///   Caputo: |z-y*|^2 <= |z0-y*|^2 E_alpha(-beta m_f (psi(t)-psi(l))^alpha)
///   RL:     |z-y*|^2 <= C (psi(t)-psi(l))^{alpha-1}
///                         E_{alpha,alpha}(-beta m_f (psi(t)-psi(l))^alpha)
/// with the objective-gap variant carrying an extra M_f/2 factor. The slack is
/// 1e-6 + 1e-3 * bound per grid point. RL checks start at l + 10h (the
/// singular layer is excluded); for alpha < 1 the RL constant C is anchored at
/// the first checked node because the weighted initial datum of the squared
/// distance is not finite there, so the check is of the decay shape.
/// Throws std::invalid_argument when m_f (or M_f / y*) is missing.
BoundReport check_ml_bound(const Trajectory& traj, const FlowSpec& spec,
                           BoundObservable which);

struct RateFit {
  double omega = 0.0;  // best-fit rate in log |z-y*|^2 ~ c - omega psi(t)
  double r_squared = 0.0;
};

/// Diagnostic least-squares fit of an exponential-in-psi rate; reported only,
/// never asserted (a finite horizon cannot settle the asymptotic question).
RateFit fit_exponential_rate(const Trajectory& traj, const FlowSpec& spec);

}  // namespace psigrad
