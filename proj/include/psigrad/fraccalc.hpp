#pragma once

#include <Eigen/Core>
#include <functional>

#include "psigrad/objective.hpp"
#include "psigrad/sampled.hpp"
#include "psigrad/weight.hpp"

namespace psigrad {

/// Fractional integral (I^alpha_{l,psi} f)(t_index) of a sampled function by
/// product-trapezoidal quadrature: piecewise-linear f against the exact kernel
/// measure (the hat-basis coefficients of the corrector). O(h^2) for smooth f
/// and psi. Requires 1 <= t_index < n_nodes.
Eigen::VectorXd frac_integral(const SampledFunction& f, const WeightFunction& w, double alpha,
                              int t_index);

/// Scalar convenience overload.
double frac_integral_scalar(const SampledFunction& f, const WeightFunction& w, double alpha,
                            int t_index);

/// Caputo derivative estimate: I^{1-alpha} applied to the difference estimate
/// of f'/psi' (central differences inside, one-sided second-order at the
/// boundary). For alpha = 1 returns the difference estimate of f' itself.
/// Where psi' vanishes at the domain start the quotient is extrapolated from
/// the two neighbouring nodes.
Eigen::VectorXd caputo_deriv_estimate(const SampledFunction& f, const WeightFunction& w,
                                      double alpha, int t_index);

double caputo_deriv_estimate_scalar(const SampledFunction& f, const WeightFunction& w,
                                    double alpha, int t_index);

struct ChainRuleProbe {
  double lhs;    // Caputo derivative of g(traj(.)) at t_index
  double rhs;    // <grad g(traj(t)), componentwise Caputo derivative of traj>
  double slack;  // rhs - lhs; nonnegative (up to discretization) for convex g
};

/// Numeric probe of the convexity chain-rule inequality
///   D^alpha g(f(t)) <= <grad g(f(t)), D^alpha f(t)>
/// for convex g and a convex weight.
ChainRuleProbe chain_rule_probe(const SampledFunction& traj, const Objective& g,
                                const WeightFunction& w, double alpha, int t_index);

struct JensenProbe {
  double lhs;  // phi( fractional average of traj at t )
  double rhs;  // fractional average of phi(traj) at t
};

/// Numeric probe of the fractional Jensen inequality: lhs <= rhs + tol for
/// convex phi.
JensenProbe jensen_probe(const SampledFunction& traj,
                         const std::function<double(const Eigen::VectorXd&)>& phi,
                         const WeightFunction& w, double alpha, int t_index);

}  // namespace psigrad
