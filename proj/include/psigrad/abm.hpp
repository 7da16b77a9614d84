#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psigrad/quadrature.hpp"
#include "psigrad/weight.hpp"

namespace psigrad {

/// Raised when a trajectory exceeds the overflow guard (state norm > 1e12).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t, double norm)
      : std::runtime_error("trajectory diverged at t = " + std::to_string(t) +
                           " (|x| = " + std::to_string(norm) + ")"),
        t_(t) {}
  double where() const { return t_; }

 private:
  double t_;
};

enum class IvpKind { kCaputo, kRiemannLiouville };

/// Initial value problem for the psi-fractional derivative of order alpha.
/// Caputo kind carries the classical initial state x0; Riemann-Liouville kind
/// carries the weighted initial datum rl_init = (I^{1-alpha} y)(a+).
struct FractionalIVP {
  double alpha = 0.5;
  WeightFunction weight;
  double start = 0.0;
  IvpKind kind = IvpKind::kCaputo;
  Eigen::VectorXd init;  // x0 (Caputo) or rl_init (Riemann-Liouville)
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> rhs;
  std::optional<double> rhs_lipschitz;

  int dim() const { return static_cast<int>(init.size()); }
};

struct AbmConfig {
  double h = 1e-3;
  int n_steps = 1000;
  int corrector_iters = 5;
  CorrectorWeights corrector_weights = CorrectorWeights::kExact;

  static AbmConfig from_horizon(double start, double T, double h, int corrector_iters = 5,
                                CorrectorWeights mode = CorrectorWeights::kExact);
  void validate() const;
};

/// Solver output: uniform grid, one state column per node. For the
/// Riemann-Liouville kind node 0 is NaN (the state is singular there) and the
/// weighted initial datum lives in meta.rl_init.
struct Trajectory {
  Eigen::VectorXd grid;
  Eigen::MatrixXd states;
  Eigen::MatrixXd predictor_states;  // columns 0..n-1 hold x^P_1..x^P_n

  struct Meta {
    double alpha = 1.0;
    std::string weight_label;
    double h = 0.0;
    int corrector_iters = 0;
    IvpKind kind = IvpKind::kCaputo;
    Eigen::VectorXd rl_init;
  } meta;

  int n_steps() const { return static_cast<int>(grid.size()) - 1; }
  int dim() const { return static_cast<int>(states.rows()); }
  double t(int i) const { return grid[i]; }
  Eigen::VectorXd state(int i) const { return states.col(i); }
};

/// Predictor-corrector solve of the Caputo-kind IVP. The predictor uses the
/// piecewise-constant (b) rule over the history, the corrector applies
/// corrector_iters fixed-point passes of the piecewise-linear (a) rule, the
/// first pass seeded with the predictor. History sums are assembled per step
/// from the cached kernel grid, so a step costs O(k).
Trajectory abm_solve(const FractionalIVP& ivp, const AbmConfig& cfg);

/// Same quadrature applied to the Volterra form of the Riemann-Liouville
/// problem. The singular inhomogeneity y0 (psi(t)-psi(a))^{alpha-1}/Gamma(alpha)
/// is added analytically at every node; the first cell, where the state keeps
/// its algebraic singularity, is integrated by tanh-sinh quadrature on the
/// regular remainder. Requires alpha < 1 (alpha = 1 coincides with Caputo and
/// is delegated).
Trajectory rl_solve(const FractionalIVP& ivp, const AbmConfig& cfg);

enum class OrderReference { kClosedForm, kRichardson };

struct OrderEstimate {
  std::vector<double> step_sizes;
  std::vector<double> errors;  // per level vs reference (closed_form mode)
  std::vector<double> orders;  // log2(err_j / err_{j+1})
};

/// Empirical convergence order under step halving. err is the max state norm
/// error at the final time against the reference; closed_form requires the
/// exact solution, richardson estimates from consecutive levels and needs at
/// least three of them (n_halvings >= 2).
OrderEstimate empirical_order(
    const FractionalIVP& ivp, const AbmConfig& base_cfg, int n_halvings,
    OrderReference reference,
    const std::function<Eigen::VectorXd(double)>& closed_form = nullptr);

}  // namespace psigrad
