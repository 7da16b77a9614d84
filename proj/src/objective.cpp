#include "psigrad/objective.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace psigrad {

Objective make_booth() {
  Eigen::Matrix2d A;
  A << 1, 2, 2, 1;
  Eigen::Vector2d c(7, 5);
  Objective o;
  o.dim = 2;
  o.name = "booth";
  o.f = [A, c](const Eigen::VectorXd& x) { return (A * x - c).squaredNorm(); };
  o.grad = [A, c](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return 2.0 * A.transpose() * (A * x - c);
  };
  o.m_f = 2.0;   // eigenvalues of 2 A'A = {2, 18}
  o.M_f = 18.0;
  o.y_star = Eigen::Vector2d(1, 3);
  o.f_star = 0.0;
  return o;
}

Objective make_zakharov(int n) {
  if (n < 1) throw std::invalid_argument("make_zakharov: n >= 1 required");
  Eigen::VectorXd wv(n);
  for (int i = 0; i < n; ++i) wv[i] = 0.5 * (i + 1);
  Objective o;
  o.dim = n;
  o.name = "zakharov";
  o.f = [wv](const Eigen::VectorXd& x) {
    const double s = wv.dot(x);
    return x.squaredNorm() + s * s + s * s * s * s;
  };
  o.grad = [wv](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const double s = wv.dot(x);
    return 2.0 * x + (2.0 * s + 4.0 * s * s * s) * wv;
  };
  o.m_f = 2.0;
  o.y_star = Eigen::VectorXd::Zero(n);
  o.f_star = 0.0;
  return o;
}

Objective make_neg_radial_exp() {
  Objective o;
  o.dim = 2;
  o.name = "negexp";
  o.f = [](const Eigen::VectorXd& x) { return -std::exp(0.5 * x.norm()); };
  o.grad = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const double r = x.norm();
    if (r == 0.0) return Eigen::VectorXd::Zero(x.size());
    return -std::exp(0.5 * r) / (2.0 * r) * x;
  };
  o.nonsmooth_at_origin = true;
  return o;
}

Objective make_quadratic(const Eigen::MatrixXd& Q, const Eigen::VectorXd& b) {
  if (Q.rows() != Q.cols() || Q.rows() != b.size()) {
    throw std::invalid_argument("make_quadratic: dimension mismatch");
  }
  if (!Q.isApprox(Q.transpose(), 1e-12)) {
    throw std::invalid_argument("make_quadratic: Q must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(Q);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("make_quadratic: Q must be positive definite");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q);
  Objective o;
  o.dim = static_cast<int>(Q.rows());
  o.name = "quadratic";
  o.f = [Q, b](const Eigen::VectorXd& x) { return 0.5 * x.dot(Q * x) - b.dot(x); };
  o.grad = [Q, b](const Eigen::VectorXd& x) -> Eigen::VectorXd { return Q * x - b; };
  o.m_f = eig.eigenvalues().minCoeff();
  o.M_f = eig.eigenvalues().maxCoeff();
  Eigen::VectorXd ys = llt.solve(b);
  o.f_star = 0.5 * ys.dot(Q * ys) - b.dot(ys);
  o.y_star = std::move(ys);
  return o;
}

Objective negate(const Objective& o) {
  Objective n = o;
  n.name = "neg_" + o.name;
  const auto f = o.f;
  const auto g = o.grad;
  n.f = [f](const Eigen::VectorXd& x) { return -f(x); };
  n.grad = [g](const Eigen::VectorXd& x) -> Eigen::VectorXd { return -g(x); };
  n.m_f.reset();
  n.M_f.reset();
  n.y_star.reset();
  n.f_star.reset();
  return n;
}

}  // namespace psigrad
