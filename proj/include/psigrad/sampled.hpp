#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

namespace psigrad {

/// Samples of a (possibly vector-valued) function on a strictly increasing
/// grid; the discretization substrate for the fractional operators.
/// values is d x (N+1): one column per grid node.
struct SampledFunction {
  Eigen::VectorXd grid;
  Eigen::MatrixXd values;
  std::optional<double> uniform_h;

  SampledFunction(Eigen::VectorXd grid_in, Eigen::MatrixXd values_in,
                  std::optional<double> uniform_h_in = std::nullopt);

  int n_nodes() const { return static_cast<int>(grid.size()); }
  int dim() const { return static_cast<int>(values.rows()); }
  bool scalar() const { return values.rows() == 1; }
  double value(int i) const { return values(0, i); }
};

/// Samples fn on the uniform grid t0, t0+h, ..., t0+n*h (scalar-valued).
SampledFunction sample_uniform(const std::function<double(double)>& fn, double t0, double h,
                               int n_steps);

}  // namespace psigrad
