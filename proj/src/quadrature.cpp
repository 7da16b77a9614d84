#include "psigrad/quadrature.hpp"

#include <stdexcept>

namespace psigrad {

// Abscissae/weights of the 16-point Gauss-Legendre rule on [-1,1], mapped to
// [0,1] with weights normalized to sum to 1.
namespace {
constexpr std::array<double, 8> kAbscissae = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kWeightsHalf = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

std::array<double, 16> build_nodes() {
  std::array<double, 16> n{};
  for (int i = 0; i < 8; ++i) {
    n[i] = 0.5 * (1.0 - kAbscissae[7 - i]);
    n[15 - i] = 0.5 * (1.0 + kAbscissae[7 - i]);
  }
  return n;
}

std::array<double, 16> build_weights() {
  std::array<double, 16> w{};
  for (int i = 0; i < 8; ++i) {
    w[i] = 0.5 * kWeightsHalf[7 - i];
    w[15 - i] = 0.5 * kWeightsHalf[7 - i];
  }
  return w;
}
}  // namespace

const std::array<double, 16> kGauss16Nodes = build_nodes();
const std::array<double, 16> kGauss16Weights = build_weights();

double b_coeff(int i, int k, const WeightFunction& w, double alpha,
               const std::vector<double>& grid) {
  if (i < 0 || i > k || static_cast<std::size_t>(k) + 2 > grid.size()) {
    throw std::out_of_range("b_coeff: need 0 <= i <= k and k+2 grid nodes");
  }
  const double pk = w.eval(grid[k + 1]);
  return (std::pow(pk - w.eval(grid[i]), alpha) - std::pow(pk - w.eval(grid[i + 1]), alpha)) /
         alpha;
}

std::vector<double> a_coeffs(int k, const WeightFunction& w, double alpha,
                             const std::vector<double>& grid, CorrectorWeights mode) {
  if (k < 0 || static_cast<std::size_t>(k) + 2 > grid.size()) {
    throw std::out_of_range("a_coeffs: need k+2 grid nodes");
  }
  const int K = k + 1;
  const double pk = w.eval(grid[K]);
  std::vector<double> a(K + 1);
  auto cap = [&](double t) { return std::pow(pk - w.eval(t), alpha) / alpha; };
  if (mode == CorrectorWeights::kPaperApprox) {
    a[0] = 0.0;  // the endpoint rule collapses the first coefficient
    for (int i = 1; i <= k; ++i) a[i] = cap(grid[i]) - cap(grid[i + 1]);
    a[K] = cap(grid[k]);
    return a;
  }
  // Exact mode: cell averages of (psi(t_K)-psi(tau))^a / a; the hat-basis
  // coefficients are differences of consecutive averages.
  std::vector<double> avg(K + 1);  // avg[j] over cell [t_{j-1}, t_j]
  for (int j = 1; j <= K; ++j) {
    const double a0 = grid[j - 1], b0 = grid[j];
    double s = 0.0;
    for (int q = 0; q < 16; ++q) {
      const double tau = a0 + (b0 - a0) * kGauss16Nodes[q];
      s += kGauss16Weights[q] * std::pow(pk - w.eval(tau), alpha);
    }
    avg[j] = s / alpha;
  }
  a[0] = cap(grid[0]) - avg[1];
  for (int i = 1; i <= k; ++i) a[i] = avg[i] - avg[i + 1];
  a[K] = avg[K];
  return a;
}

void pow_alpha_inplace(Eigen::ArrayXd& a, Eigen::Index m, double alpha) {
  auto head = a.head(m);
  if (alpha == 1.0) return;
  if (alpha == 0.5) {
    head = head.sqrt();
  } else if (alpha == 0.25) {
    head = head.sqrt().sqrt();
  } else {
    // exp(alpha log x) vectorizes where Array::pow does not; x = 0 maps to 0
    // through the -inf logarithm as required at the target node.
    head = (alpha * head.log()).exp();
  }
}

UniformGridKernel::UniformGridKernel(const WeightFunction& w, double t0, double h, int n_steps)
    : t0_(t0), h_(h), n_(n_steps) {
  if (!(h > 0.0) || n_steps < 1) {
    throw std::invalid_argument("UniformGridKernel: need h > 0 and n_steps >= 1");
  }
  psi_nodes_.resize(n_ + 1);
  for (int i = 0; i <= n_; ++i) psi_nodes_[i] = w.eval(t0_ + h_ * i);
  psi_gl_.resize(16 * n_);
  for (int j = 1; j <= n_; ++j) {
    const double left = t0_ + h_ * (j - 1);
    for (int q = 0; q < 16; ++q) {
      psi_gl_[16 * (j - 1) + q] = w.eval(left + h_ * kGauss16Nodes[q]);
    }
  }
}

void UniformGridKernel::predictor_weights(double alpha, int K, int i_begin,
                                          Eigen::ArrayXd& out) const {
  const int m = K - i_begin;  // cells i_begin .. K-1
  if (m <= 0) return;
  const double pk = psi_nodes_[K];
  // powers (psi_K - psi_i)^a at nodes i_begin..K, then difference.
  Eigen::ArrayXd& p = out;  // reuse: need m+1 powers, out sized >= m+1 by caller
  p.head(m + 1) = pk - psi_nodes_.segment(i_begin, m + 1);
  p(m) = 0.0;  // exact zero at the target node
  pow_alpha_inplace(p, m + 1, alpha);
  for (int i = 0; i < m; ++i) p(i) = (p(i) - p(i + 1)) / alpha;
}

void UniformGridKernel::corrector_weights_exact(double alpha, int K, int i_begin,
                                                Eigen::ArrayXd& out,
                                                Eigen::ArrayXd& scratch) const {
  const int m = K - i_begin;  // number of cells in the window
  if (m <= 0) {
    if (m == 0) out(0) = 0.0;
    return;
  }
  const double pk = psi_nodes_[K];
  scratch.head(16 * m) = pk - psi_gl_.segment(16 * i_begin, 16 * m);
  pow_alpha_inplace(scratch, 16 * m, alpha);
  // Cell averages via one gemv over the (16 x m) block.
  Eigen::Map<const Eigen::MatrixXd> cells(scratch.data(), 16, m);
  Eigen::Map<const Eigen::VectorXd> glw(kGauss16Weights.data(), 16);
  Eigen::VectorXd avg = cells.transpose() * glw;  // avg(j) ~ cell i_begin+j+1
  const double inv_alpha = 1.0 / alpha;
  const double g_begin = std::pow(pk - psi_nodes_[i_begin], alpha) * inv_alpha;
  out(0) = g_begin - avg(0) * inv_alpha;
  for (int j = 1; j < m; ++j) out(j) = (avg(j - 1) - avg(j)) * inv_alpha;
  out(m) = avg(m - 1) * inv_alpha;
}

void UniformGridKernel::corrector_weights_paper(double alpha, int K, int i_begin,
                                                Eigen::ArrayXd& out) const {
  const int m = K - i_begin;
  if (m <= 0) {
    if (m == 0) out(0) = 0.0;
    return;
  }
  const double pk = psi_nodes_[K];
  Eigen::ArrayXd caps = pk - psi_nodes_.segment(i_begin, m + 1);
  pow_alpha_inplace(caps, m + 1, alpha);
  caps /= alpha;
  out(0) = 0.0;
  for (int j = 1; j < m; ++j) out(j) = caps(j) - caps(j + 1);
  out(m) = caps(m - 1);
}

}  // namespace psigrad
