#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

namespace psigrad {

/// Benchmark objective with analytic gradient and optional curvature metadata.
/// Immutable after construction; concurrently evaluable.
struct Objective {
  int dim = 0;
  std::string name;
  std::function<double(const Eigen::VectorXd&)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
  std::optional<double> m_f;  // strong-convexity modulus
  std::optional<double> M_f;  // smoothness (gradient Lipschitz) constant
  std::optional<Eigen::VectorXd> y_star;
  std::optional<double> f_star;
  /// Gradient is reported as 0 at a point where f is not differentiable.
  bool nonsmooth_at_origin = false;
};

/// Booth function (x1 + 2 x2 - 7)^2 + (2 x1 + x2 - 5)^2; minimizer (1,3),
/// Hessian eigenvalues {2, 18}.
Objective make_booth();

/// Zakharov function |x|^2 + s^2 + s^4 with s = sum 0.5*i*x_i. Convex with
/// m_f = 2 (the quadratic part; the s-terms are convex). The quartic term has
/// no global gradient Lipschitz constant, so M_f stays unset.
Objective make_zakharov(int n);

/// Negative radial exponential -exp(|x|/2); nondifferentiable at the origin
/// (gradient reported as 0 there). Carries no curvature constants and is used
/// only for qualitative sweeps.
Objective make_neg_radial_exp();

/// Quadratic f = x'Qx/2 - b'x for symmetric positive definite Q.
/// Throws std::invalid_argument when Q is not SPD.
Objective make_quadratic(const Eigen::MatrixXd& Q, const Eigen::VectorXd& b);

/// Negated objective (flips f, grad, and turns a maximum into a minimum).
Objective negate(const Objective& o);

}  // namespace psigrad
