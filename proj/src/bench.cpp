#include "psigrad/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "psigrad/flows.hpp"

namespace psigrad {

Trajectory rk4_flow(const Objective& objective, double beta, const Eigen::VectorXd& z0,
                    double start, double h, double T) {
  if (!(h > 0.0) || !(T > start)) throw std::invalid_argument("rk4_flow: need h > 0, T > start");
  const int n = static_cast<int>(std::llround((T - start) / h));
  if (n < 1 || std::abs(n * h - (T - start)) > 1e-12 * std::max(1.0, T - start)) {
    throw std::invalid_argument("rk4_flow: h must divide T - start");
  }
  auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return -beta * objective.grad(y);
  };
  Trajectory traj;
  traj.grid.resize(n + 1);
  traj.states.resize(z0.size(), n + 1);
  traj.meta.alpha = 1.0;
  traj.meta.weight_label = "rk4";
  traj.meta.h = h;
  traj.states.col(0) = z0;
  traj.grid[0] = start;
  Eigen::VectorXd y = z0;
  for (int i = 1; i <= n; ++i) {
    const Eigen::VectorXd k1 = rhs(y);
    const Eigen::VectorXd k2 = rhs(y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double norm = y.lpNorm<Eigen::Infinity>();
    if (!(norm <= 1e12)) throw DivergenceError(start + i * h, norm);
    traj.grid[i] = start + i * h;
    traj.states.col(i) = y;
  }
  return traj;
}

namespace {

int sweep_thread_cap() {
  if (const char* env = std::getenv("PSIGRAD_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string format_alpha(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", alpha);
  return buf;
}

}  // namespace

std::vector<SweepResult> run_sweep(const SweepSpec& spec) {
  for (double alpha : spec.alphas) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("run_sweep: alphas must lie in (0,1]");
    }
  }
  Eigen::VectorXd y_ref;
  if (spec.reference_point) {
    y_ref = *spec.reference_point;
  } else if (spec.objective.y_star) {
    y_ref = *spec.objective.y_star;
  } else {
    throw std::invalid_argument(
        "run_sweep: objective has no minimizer; supply reference_point");
  }
  const Objective flow_objective =
      spec.descend_negated ? negate(spec.objective) : spec.objective;

  struct Item {
    bool rk4 = false;
    double alpha = 1.0;
    WeightConfig weight;
    std::string label;
  };
  std::vector<Item> items;
  for (double alpha : spec.alphas) {
    for (const WeightConfig& wc : spec.weights) {
      Item item;
      item.alpha = alpha;
      item.weight = wc;
      item.label = "abm_alpha" + format_alpha(alpha) + "_" + wc.build().label();
      items.push_back(std::move(item));
    }
  }
  if (spec.include_rk4) {
    Item item;
    item.rk4 = true;
    item.label = "rk4";
    items.push_back(std::move(item));
  }

  std::vector<SweepResult> results(items.size());
  auto run_item = [&](std::size_t idx) {
    const Item& item = items[idx];
    SweepResult& res = results[idx];
    res.label = item.label;
    try {
      if (item.rk4) {
        res.trajectory = rk4_flow(flow_objective, spec.beta, spec.init, 0.0, spec.h, spec.T);
      } else {
        FlowSpec flow;
        flow.kind = IvpKind::kCaputo;
        flow.objective = flow_objective;
        flow.beta = spec.beta;
        flow.alpha = item.alpha;
        flow.weight = item.weight.build();
        flow.init = spec.init;
        flow.horizon = spec.T;
        flow.h = spec.h;
        flow.corrector_iters = spec.corrector_iters;
        res.trajectory = run_flow(flow);
      }
      const Trajectory& traj = res.trajectory;
      res.distance.resize(traj.grid.size());
      for (int i = 0; i < traj.grid.size(); ++i) {
        res.distance[i] = (traj.states.col(i) - y_ref).norm();
      }
    } catch (const std::exception& e) {
      res.error = e.what();
    }
  };

  const int threads = std::min<int>(sweep_thread_cap(), static_cast<int>(items.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) run_item(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
          run_item(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return results;
}

std::optional<double> time_to_threshold(const std::vector<double>& times,
                                        const std::vector<double>& distance, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("time_to_threshold: eps > 0 required");
  if (times.size() != distance.size()) {
    throw std::invalid_argument("time_to_threshold: length mismatch");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (distance[i] <= eps) return times[i];
  }
  return std::nullopt;
}

std::optional<double> time_to_threshold(const SweepResult& result, double eps) {
  if (result.failed()) return std::nullopt;
  std::vector<double> times(result.trajectory.grid.data(),
                            result.trajectory.grid.data() + result.trajectory.grid.size());
  return time_to_threshold(times, result.distance, eps);
}

}  // namespace psigrad
