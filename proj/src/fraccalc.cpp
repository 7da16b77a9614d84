#include "psigrad/fraccalc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "psigrad/quadrature.hpp"
#include "psigrad/special.hpp"

namespace psigrad {
namespace {

void check_index(const SampledFunction& f, int t_index) {
  if (t_index < 1 || t_index >= f.n_nodes()) {
    throw std::out_of_range("fraccalc: t_index out of range");
  }
}

std::vector<double> grid_prefix(const SampledFunction& f, int t_index) {
  return std::vector<double>(f.grid.data(), f.grid.data() + t_index + 1);
}

// Difference estimate of f' along the grid: central inside, one-sided
// second-order at both ends. Non-uniform grids use the three-point formulas.
Eigen::MatrixXd derivative_samples(const SampledFunction& f, int upto) {
  const int n = upto;  // use nodes 0..upto
  Eigen::MatrixXd d(f.dim(), n + 1);
  auto col = [&](int i) { return f.values.col(i); };
  if (n == 1) {  // two nodes: only the secant is available
    d.col(0) = (col(1) - col(0)) / (f.grid[1] - f.grid[0]);
    d.col(1) = d.col(0);
    return d;
  }
  for (int i = 0; i <= n; ++i) {
    int a = i - 1, b = i, c = i + 1;
    if (i == 0) {
      a = 0;
      b = 1;
      c = 2;
    } else if (i == n) {
      a = n - 2;
      b = n - 1;
      c = n;
    }
    const double ta = f.grid[a], tb = f.grid[b], tc = f.grid[c];
    const double t = f.grid[i];
    // Derivative of the quadratic through (ta,fa),(tb,fb),(tc,fc) at t.
    const double wa = (2.0 * t - tb - tc) / ((ta - tb) * (ta - tc));
    const double wb = (2.0 * t - ta - tc) / ((tb - ta) * (tb - tc));
    const double wc = (2.0 * t - ta - tb) / ((tc - ta) * (tc - tb));
    d.col(i) = wa * col(a) + wb * col(b) + wc * col(c);
  }
  return d;
}

}  // namespace

Eigen::VectorXd frac_integral(const SampledFunction& f, const WeightFunction& w, double alpha,
                              int t_index) {
  check_index(f, t_index);
  const auto grid = grid_prefix(f, t_index);
  const auto a = a_coeffs(t_index - 1, w, alpha, grid, CorrectorWeights::kExact);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.dim());
  for (int i = 0; i <= t_index; ++i) acc += a[i] * f.values.col(i);
  return acc / gamma_fn(alpha);
}

double frac_integral_scalar(const SampledFunction& f, const WeightFunction& w, double alpha,
                            int t_index) {
  return frac_integral(f, w, alpha, t_index)[0];
}

Eigen::VectorXd caputo_deriv_estimate(const SampledFunction& f, const WeightFunction& w,
                                      double alpha, int t_index) {
  check_index(f, t_index);
  Eigen::MatrixXd deriv = derivative_samples(f, t_index);
  if (alpha == 1.0) return deriv.col(t_index);
  // J_psi samples f'/psi'; if psi' vanishes at the domain start (t^k weights),
  // extrapolate that node from the next two.
  Eigen::MatrixXd jpsi(f.dim(), t_index + 1);
  int first_regular = -1;
  for (int i = 0; i <= t_index; ++i) {
    const double dpsi = w.deriv(f.grid[i]);
    if (std::abs(dpsi) > 1e-12) {
      jpsi.col(i) = deriv.col(i) / dpsi;
      if (first_regular < 0) first_regular = i;
    } else {
      jpsi.col(i).setConstant(std::numeric_limits<double>::quiet_NaN());
    }
  }
  for (int i = 0; i <= t_index; ++i) {
    if (std::isnan(jpsi(0, i))) {
      if (first_regular < 0) {
        throw std::domain_error("caputo_deriv_estimate: psi' vanishes on the whole grid");
      }
      if (first_regular >= t_index) {  // single regular node: copy it
        jpsi.col(i) = jpsi.col(first_regular);
        continue;
      }
      const int a = first_regular, b = first_regular + 1;
      const double s = (f.grid[i] - f.grid[a]) / (f.grid[b] - f.grid[a]);
      jpsi.col(i) = (1.0 - s) * jpsi.col(a) + s * jpsi.col(b);
    }
  }
  SampledFunction jf(f.grid.head(t_index + 1), std::move(jpsi), f.uniform_h);
  return frac_integral(jf, w, 1.0 - alpha, t_index);
}

double caputo_deriv_estimate_scalar(const SampledFunction& f, const WeightFunction& w,
                                    double alpha, int t_index) {
  return caputo_deriv_estimate(f, w, alpha, t_index)[0];
}

ChainRuleProbe chain_rule_probe(const SampledFunction& traj, const Objective& g,
                                const WeightFunction& w, double alpha, int t_index) {
  check_index(traj, t_index);
  Eigen::MatrixXd composed(1, traj.n_nodes());
  for (int i = 0; i < traj.n_nodes(); ++i) composed(0, i) = g.f(traj.values.col(i));
  SampledFunction gf(traj.grid, std::move(composed), traj.uniform_h);
  ChainRuleProbe probe{};
  probe.lhs = caputo_deriv_estimate_scalar(gf, w, alpha, t_index);
  const Eigen::VectorXd dtraj = caputo_deriv_estimate(traj, w, alpha, t_index);
  probe.rhs = g.grad(traj.values.col(t_index)).dot(dtraj);
  probe.slack = probe.rhs - probe.lhs;
  return probe;
}

JensenProbe jensen_probe(const SampledFunction& traj,
                         const std::function<double(const Eigen::VectorXd&)>& phi,
                         const WeightFunction& w, double alpha, int t_index) {
  check_index(traj, t_index);
  const double dpsi = w.eval(traj.grid[t_index]) - w.eval(traj.grid[0]);
  const double scale = gamma_fn(alpha + 1.0) / std::pow(dpsi, alpha);
  JensenProbe probe{};
  probe.lhs = phi(scale * frac_integral(traj, w, alpha, t_index));
  Eigen::MatrixXd composed(1, traj.n_nodes());
  for (int i = 0; i < traj.n_nodes(); ++i) composed(0, i) = phi(traj.values.col(i));
  SampledFunction pf(traj.grid, std::move(composed), traj.uniform_h);
  probe.rhs = scale * frac_integral_scalar(pf, w, alpha, t_index);
  return probe;
}

}  // namespace psigrad
