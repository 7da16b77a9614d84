#include "psigrad/abm.hpp"

#include <cmath>
#include <limits>

#include "psigrad/special.hpp"

namespace psigrad {
namespace {

constexpr double kOverflowGuard = 1e12;

void guard(const Eigen::VectorXd& x, double t) {
  const double norm = x.lpNorm<Eigen::Infinity>();
  if (!(norm <= kOverflowGuard)) throw DivergenceError(t, norm);
}

void validate_ivp(const FractionalIVP& ivp) {
  if (!(ivp.alpha > 0.0) || !(ivp.alpha <= 1.0)) {
    throw std::invalid_argument("FractionalIVP: alpha must lie in (0,1]");
  }
  if (ivp.init.size() == 0) throw std::invalid_argument("FractionalIVP: empty initial data");
  if (!ivp.rhs) throw std::invalid_argument("FractionalIVP: missing right-hand side");
}

Trajectory make_trajectory(const FractionalIVP& ivp, const AbmConfig& cfg) {
  Trajectory traj;
  const int n = cfg.n_steps;
  traj.grid.resize(n + 1);
  for (int i = 0; i <= n; ++i) traj.grid[i] = ivp.start + cfg.h * i;
  traj.states.resize(ivp.dim(), n + 1);
  traj.predictor_states.resize(ivp.dim(), n);
  traj.meta.alpha = ivp.alpha;
  traj.meta.weight_label = ivp.weight.label();
  traj.meta.h = cfg.h;
  traj.meta.corrector_iters = cfg.corrector_iters;
  traj.meta.kind = ivp.kind;
  return traj;
}

}  // namespace

AbmConfig AbmConfig::from_horizon(double start, double T, double h, int corrector_iters,
                                  CorrectorWeights mode) {
  if (!(h > 0.0) || !(T > start)) {
    throw std::invalid_argument("AbmConfig: need h > 0 and T > start");
  }
  const double span = T - start;
  const int n = static_cast<int>(std::llround(span / h));
  if (n < 1 || std::abs(n * h - span) > 1e-12 * std::max(1.0, std::abs(span))) {
    throw std::invalid_argument("AbmConfig: h must divide T - start");
  }
  AbmConfig cfg;
  cfg.h = h;
  cfg.n_steps = n;
  cfg.corrector_iters = corrector_iters;
  cfg.corrector_weights = mode;
  return cfg;
}

void AbmConfig::validate() const {
  if (!(h > 0.0) || n_steps < 1 || corrector_iters < 1) {
    throw std::invalid_argument("AbmConfig: need h > 0, n_steps >= 1, corrector_iters >= 1");
  }
}

Trajectory abm_solve(const FractionalIVP& ivp, const AbmConfig& cfg) {
  validate_ivp(ivp);
  cfg.validate();
  if (ivp.kind != IvpKind::kCaputo && ivp.alpha < 1.0) {
    throw std::invalid_argument("abm_solve: expects a Caputo-kind problem");
  }
  const int n = cfg.n_steps;
  const int d = ivp.dim();
  const double alpha = ivp.alpha;
  const double inv_gamma = 1.0 / gamma_fn(alpha);
  const UniformGridKernel kern(ivp.weight, ivp.start, cfg.h, n);

  Trajectory traj = make_trajectory(ivp, cfg);
  traj.states.col(0) = ivp.init;

  Eigen::MatrixXd g_hist(d, n + 1);  // g(t_i, x_i) for finalized nodes
  g_hist.col(0) = ivp.rhs(ivp.start, ivp.init);

  Eigen::ArrayXd wpred(n + 2), wcorr(n + 2), scratch(16 * n);
  Eigen::VectorXd x(d), hist(d);

  for (int K = 1; K <= n; ++K) {
    const double tK = kern.t_node(K);
    kern.predictor_weights(alpha, K, 0, wpred);
    Eigen::VectorXd xp = traj.states.col(0) +
                         inv_gamma * (g_hist.leftCols(K) * wpred.head(K).matrix());
    guard(xp, tK);

    if (cfg.corrector_weights == CorrectorWeights::kExact) {
      kern.corrector_weights_exact(alpha, K, 0, wcorr, scratch);
    } else {
      kern.corrector_weights_paper(alpha, K, 0, wcorr);
    }
    hist = g_hist.leftCols(K) * wcorr.head(K).matrix();
    const double a_last = wcorr(K);

    x = xp;
    for (int it = 0; it < cfg.corrector_iters; ++it) {
      x = traj.states.col(0) + inv_gamma * (hist + a_last * ivp.rhs(tK, x));
    }
    guard(x, tK);

    traj.states.col(K) = x;
    traj.predictor_states.col(K - 1) = xp;
    g_hist.col(K) = ivp.rhs(tK, x);
  }
  return traj;
}

Trajectory rl_solve(const FractionalIVP& ivp, const AbmConfig& cfg) {
  validate_ivp(ivp);
  cfg.validate();
  if (ivp.kind != IvpKind::kRiemannLiouville) {
    throw std::invalid_argument("rl_solve: expects a Riemann-Liouville-kind problem");
  }
  if (ivp.alpha == 1.0) {
    // I^0 y(a+) = y(a): the problems coincide.
    FractionalIVP caputo = ivp;
    caputo.kind = IvpKind::kCaputo;
    Trajectory traj = abm_solve(caputo, cfg);
    traj.meta.kind = IvpKind::kRiemannLiouville;
    traj.meta.rl_init = ivp.init;
    return traj;
  }

  const int n = cfg.n_steps;
  const int d = ivp.dim();
  const double alpha = ivp.alpha;
  const double inv_gamma = 1.0 / gamma_fn(alpha);
  const double t0 = ivp.start;
  const UniformGridKernel kern(ivp.weight, t0, cfg.h, n);
  const double psi0 = kern.psi_node(0);

  // y = S + v with S the analytic singular inhomogeneity. The state keeps a
  // dpsi^{alpha-1} profile near the start that piecewise-linear history
  // quadrature cannot resolve, so the first kSplitCells cells are integrated
  // directly with S exact and only the regular part v interpolated.
  constexpr int kSplitCells = 16;
  auto singular_part = [&](double psi_t) -> Eigen::VectorXd {
    return ivp.init * (std::pow(psi_t - psi0, alpha - 1.0) * inv_gamma);
  };

  Trajectory traj = make_trajectory(ivp, cfg);
  traj.meta.rl_init = ivp.init;
  traj.states.col(0).setConstant(std::numeric_limits<double>::quiet_NaN());

  Eigen::MatrixXd g_hist(d, n + 1);  // g(t_i, y_i), defined for i >= 1
  g_hist.col(0).setZero();
  Eigen::MatrixXd v_hist(d, std::min(kSplitCells, n) + 1);  // v on the split range
  v_hist.col(0).setZero();

  // On the first cell v ~ dpsi^{2 alpha - 1} when y0 != 0 (dpsi^alpha when
  // y0 = 0); later split cells interpolate v linearly between its nodes.
  const double shape_expo = ivp.init.isZero(0.0) ? alpha : 2.0 * alpha - 1.0;
  const double psi1 = kern.psi_node(1);

  // Kernel-weighted integral of g(s, S(s) + vbar(s)) over split cell j for
  // target node K; vleft/vright anchor the interpolation of v on the cell.
  auto split_cell = [&](int j, int K, const Eigen::VectorXd& vleft,
                        const Eigen::VectorXd& vright) -> Eigen::VectorXd {
    const double psiK = kern.psi_node(K);
    const double a = kern.t_node(j - 1), b = kern.t_node(j);
    auto integrand = [&](double s) -> Eigen::VectorXd {
      const double psis = ivp.weight.eval(s);
      Eigen::VectorXd v;
      if (j == 1) {
        const double shape =
            shape_expo == 0.0 ? 1.0 : std::pow((psis - psi0) / (psi1 - psi0), shape_expo);
        v = shape * vright;
      } else {
        const double ramp = (s - a) / cfg.h;
        v = (1.0 - ramp) * vleft + ramp * vright;
      }
      return std::pow(psiK - psis, alpha - 1.0) * ivp.weight.deriv(s) *
             ivp.rhs(s, singular_part(psis) + v);
    };
    // Cell 1 carries the S singularity, the target cell the kernel one; the
    // interior split cells are smooth and a Gauss rule suffices.
    if (j == 1 || j == K) return tanh_sinh(integrand, a, b, 8);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
    for (int q = 0; q < 16; ++q) {
      acc += kGauss16Weights[q] * integrand(a + cfg.h * kGauss16Nodes[q]);
    }
    return cfg.h * acc;
  };

  Eigen::ArrayXd wpred(n + 2), wcorr(n + 2), scratch(16 * n);

  for (int K = 1; K <= n; ++K) {
    const double tK = kern.t_node(K);
    const Eigen::VectorXd sK = singular_part(kern.psi_node(K));
    const int split = std::min(K, kSplitCells);

    // Contribution of split cells 1..split-1 (fully known v) for this target.
    Eigen::VectorXd known = Eigen::VectorXd::Zero(d);
    for (int j = 1; j < split; ++j) {
      known += split_cell(j, K, v_hist.col(j - 1), v_hist.col(j));
    }

    // Standard piecewise rules on cells past the split range.
    Eigen::VectorXd hist_pred = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd hist_corr = Eigen::VectorXd::Zero(d);
    double a_last = 0.0;
    bool last_is_split = K <= kSplitCells;
    if (!last_is_split) {
      const int i_begin = kSplitCells;  // window nodes kSplitCells..K
      kern.predictor_weights(alpha, K, i_begin, wpred);
      hist_pred = g_hist.middleCols(i_begin, K - i_begin) * wpred.head(K - i_begin).matrix();
      if (cfg.corrector_weights == CorrectorWeights::kExact) {
        kern.corrector_weights_exact(alpha, K, i_begin, wcorr, scratch);
      } else {
        kern.corrector_weights_paper(alpha, K, i_begin, wcorr);
      }
      hist_corr =
          g_hist.middleCols(i_begin, K - i_begin) * wcorr.head(K - i_begin).matrix();
      a_last = wcorr(K - i_begin);
    }

    Eigen::VectorXd y;
    if (last_is_split) {
      // Predictor extends v by its left value across the target cell.
      const Eigen::VectorXd& vl = v_hist.col(split - 1);
      Eigen::VectorXd vk = K == 1 ? Eigen::VectorXd::Zero(d) : Eigen::VectorXd(vl);
      Eigen::VectorXd xp = sK + inv_gamma * (known + split_cell(K, K, vl, vk));
      guard(xp, tK);
      for (int it = 0; it < cfg.corrector_iters; ++it) {
        vk = inv_gamma * (known + split_cell(K, K, vl, vk));
      }
      y = sK + vk;
      guard(y, tK);
      v_hist.col(K) = vk;
      traj.predictor_states.col(K - 1) = xp;
    } else {
      const Eigen::VectorXd& vl = v_hist.col(kSplitCells - 1);
      const Eigen::VectorXd split_last =
          split_cell(kSplitCells, K, vl, v_hist.col(kSplitCells));
      Eigen::VectorXd xp = sK + inv_gamma * (known + split_last + hist_pred);
      guard(xp, tK);
      y = xp;
      for (int it = 0; it < cfg.corrector_iters; ++it) {
        y = sK + inv_gamma * (known + split_last + hist_corr + a_last * ivp.rhs(tK, y));
      }
      guard(y, tK);
      traj.predictor_states.col(K - 1) = xp;
    }

    traj.states.col(K) = y;
    g_hist.col(K) = ivp.rhs(tK, y);
  }
  return traj;
}

OrderEstimate empirical_order(const FractionalIVP& ivp, const AbmConfig& base_cfg,
                              int n_halvings, OrderReference reference,
                              const std::function<Eigen::VectorXd(double)>& closed_form) {
  if (n_halvings < 2) {
    throw std::invalid_argument("empirical_order: n_halvings >= 2 required");
  }
  if (reference == OrderReference::kClosedForm && !closed_form) {
    throw std::invalid_argument("empirical_order: closed_form reference not supplied");
  }
  const int levels = n_halvings + 1;
  if (reference == OrderReference::kRichardson && levels < 3) {
    throw std::invalid_argument("empirical_order: richardson needs >= 3 levels");
  }
  auto solve = [&](const AbmConfig& cfg) {
    return ivp.kind == IvpKind::kCaputo ? abm_solve(ivp, cfg) : rl_solve(ivp, cfg);
  };

  OrderEstimate est;
  std::vector<Eigen::VectorXd> finals;
  AbmConfig cfg = base_cfg;
  for (int j = 0; j < levels; ++j) {
    cfg.validate();
    const Trajectory traj = solve(cfg);
    finals.push_back(traj.states.col(cfg.n_steps));
    est.step_sizes.push_back(cfg.h);
    cfg.h *= 0.5;
    cfg.n_steps *= 2;
  }
  const double T = ivp.start + base_cfg.h * base_cfg.n_steps;
  if (reference == OrderReference::kClosedForm) {
    const Eigen::VectorXd ref = closed_form(T);
    for (const auto& x : finals) {
      est.errors.push_back((x - ref).lpNorm<Eigen::Infinity>());
    }
    for (int j = 0; j + 1 < levels; ++j) {
      est.orders.push_back(std::log2(est.errors[j] / est.errors[j + 1]));
    }
  } else {
    std::vector<double> diffs;
    for (int j = 0; j + 1 < levels; ++j) {
      diffs.push_back((finals[j] - finals[j + 1]).lpNorm<Eigen::Infinity>());
    }
    est.errors = diffs;
    for (int j = 0; j + 1 < static_cast<int>(diffs.size()); ++j) {
      est.orders.push_back(std::log2(diffs[j] / diffs[j + 1]));
    }
  }
  return est;
}

}  // namespace psigrad
