#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "psigrad/weight.hpp"

namespace psigrad {

/// 16-point Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
extern const std::array<double, 16> kGauss16Nodes;
extern const std::array<double, 16> kGauss16Weights;

enum class CorrectorWeights { kExact, kPaperApprox };

/// Exact predictor coefficient
///   b_{i,k+1} = [(psi(t_{k+1})-psi(t_i))^a - (psi(t_{k+1})-psi(t_{i+1}))^a]/a,
/// the closed form of the kernel integral over one cell. Requires 0 <= i <= k
/// and grid with at least k+2 nodes.
double b_coeff(int i, int k, const WeightFunction& w, double alpha,
               const std::vector<double>& grid);

/// Corrector coefficients a_{0..k+1} for the piecewise-linear (hat basis)
/// product quadrature against the kernel measure. Exact mode evaluates the
/// smooth per-cell integrals of (psi(t_{k+1})-psi(tau))^a by 16-point
/// Gauss-Legendre; paper_approx uses the endpoint-rule values (whose first
/// coefficient is identically zero). Grid may be non-uniform.
std::vector<double> a_coeffs(int k, const WeightFunction& w, double alpha,
                             const std::vector<double>& grid,
                             CorrectorWeights mode = CorrectorWeights::kExact);

/// x^alpha on a prefix of an array, with fast paths for the common orders.
void pow_alpha_inplace(Eigen::ArrayXd& a, Eigen::Index m, double alpha);

/// Per-solve cache of psi on a uniform grid plus the Gauss-Legendre points of
/// every cell. All per-step weight assembly is array arithmetic on this cache;
/// the weight function itself is evaluated only O(n) times per solve.
class UniformGridKernel {
 public:
  UniformGridKernel(const WeightFunction& w, double t0, double h, int n_steps);

  int n_steps() const { return n_; }
  double h() const { return h_; }
  double t_node(int i) const { return t0_ + h_ * i; }
  double psi_node(int i) const { return psi_nodes_[i]; }
  const Eigen::ArrayXd& psi_nodes() const { return psi_nodes_; }

  /// b_{i,K} for cells i = i_begin..K-1 into out[0..K-i_begin).
  void predictor_weights(double alpha, int K, int i_begin, Eigen::ArrayXd& out) const;

  /// Hat-basis coefficients for nodes i_begin..K into out[0..K-i_begin];
  /// node i_begin plays the boundary role (its hat truncated to the window).
  /// scratch must have capacity >= 16*(K-i_begin).
  void corrector_weights_exact(double alpha, int K, int i_begin, Eigen::ArrayXd& out,
                               Eigen::ArrayXd& scratch) const;
  void corrector_weights_paper(double alpha, int K, int i_begin, Eigen::ArrayXd& out) const;

 private:
  double t0_, h_;
  int n_;
  Eigen::ArrayXd psi_nodes_;  // n+1 values
  Eigen::ArrayXd psi_gl_;     // 16n values; cell j in [16(j-1), 16j)
};

/// tanh-sinh (double-exponential) quadrature on (a,b); tolerant of integrable
/// endpoint singularities. The integrand is evaluated strictly inside (a,b).
template <class F>
auto tanh_sinh(F&& f, double a, double b, int levels = 8) -> decltype(f(a)) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  constexpr double kPiHalf = 1.57079632679489661923;
  constexpr double kUMax = 4.0;
  auto value_at = [&](double u) -> decltype(f(a)) {
    const double s = kPiHalf * std::sinh(u);
    const double wgt = kPiHalf * std::cosh(u) / (std::cosh(s) * std::cosh(s));
    // Distance to the nearer endpoint, 1 -/+ tanh(s) without cancellation.
    const double em = std::exp(-2.0 * std::abs(s));
    const double offset = half * (2.0 * em / (1.0 + em));
    const double t = u == 0.0 ? mid : (u > 0.0 ? b - offset : a + offset);
    using V = decltype(f(a));
    if (t <= a || t >= b || wgt < 1e-290) {
      return V(0.0 * f(mid));
    }
    return wgt * f(t);
  };
  double du = 0.5;
  auto sum = value_at(0.0);
  for (double u = du; u <= kUMax; u += du) sum = sum + value_at(u) + value_at(-u);
  for (int lvl = 1; lvl < levels; ++lvl) {
    du *= 0.5;
    for (double u = du; u <= kUMax; u += 2.0 * du) sum = sum + value_at(u) + value_at(-u);
  }
  return (du * half) * sum;
}

}  // namespace psigrad
