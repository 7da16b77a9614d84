#include "psigrad/sampled.hpp"

#include <cmath>
#include <stdexcept>

namespace psigrad {

SampledFunction::SampledFunction(Eigen::VectorXd grid_in, Eigen::MatrixXd values_in,
                                 std::optional<double> uniform_h_in)
    : grid(std::move(grid_in)), values(std::move(values_in)), uniform_h(uniform_h_in) {
  if (grid.size() < 2) throw std::invalid_argument("SampledFunction: need >= 2 nodes");
  if (values.cols() != grid.size()) {
    throw std::invalid_argument("SampledFunction: values/grid length mismatch");
  }
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("SampledFunction: grid must be strictly increasing");
    }
  }
  if (uniform_h) {
    const double h = *uniform_h;
    for (Eigen::Index i = 1; i < grid.size(); ++i) {
      if (std::abs(grid[i] - grid[i - 1] - h) > 1e-12 * h) {
        throw std::invalid_argument("SampledFunction: grid not uniform with the stated h");
      }
    }
  }
}

SampledFunction sample_uniform(const std::function<double(double)>& fn, double t0, double h,
                               int n_steps) {
  Eigen::VectorXd grid(n_steps + 1);
  Eigen::MatrixXd vals(1, n_steps + 1);
  for (int i = 0; i <= n_steps; ++i) {
    grid[i] = t0 + h * i;
    vals(0, i) = fn(grid[i]);
  }
  // Rounding in t0 + h*i can push the gaps past the strict uniformity
  // tolerance for tiny h; claim uniform_h only when it genuinely holds.
  bool uniform = true;
  for (int i = 1; i <= n_steps; ++i) {
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-12 * h) {
      uniform = false;
      break;
    }
  }
  return SampledFunction(std::move(grid), std::move(vals),
                         uniform ? std::optional<double>(h) : std::nullopt);
}

}  // namespace psigrad
