// Command-line front end: validate | solve | optimize | order | picard-compare.
// Exit codes: 0 pass, 1 usage/config error, 2 accuracy failure, 3 divergence.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "psigrad/abm.hpp"
#include "psigrad/bench.hpp"
#include "psigrad/config.hpp"
#include "psigrad/io.hpp"
#include "psigrad/picard.hpp"
#include "psigrad/special.hpp"
#include "psigrad/svg.hpp"

namespace {

using namespace psigrad;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAccuracy = 2;
constexpr int kExitDivergence = 3;

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_validate(double alpha, const std::string& weights_list, double h, double T,
                 double threshold, const std::string& out_dir) {
  ensure_dir(out_dir);
  const auto tokens = split_csv_list(weights_list);
  if (tokens.empty()) {
    std::cerr << "validate: --weights must name at least one weight\n";
    return kExitUsage;
  }
  std::vector<WeightConfig> weights;
  for (const auto& tok : tokens) weights.push_back(weight_config_from_token(tok));

  const int n = static_cast<int>(std::llround(T / h));
  std::vector<std::string> header = {"t"};
  std::vector<std::string> labels;
  for (const auto& wc : weights) {
    const std::string label = wc.build().label();
    labels.push_back(label);
    header.push_back("numeric_" + label);
    header.push_back("exact_" + label);
    header.push_back("abs_err_" + label);
  }
  CsvTable table(header);

  std::vector<SvgSeries> sol_series, err_series;
  std::vector<std::vector<double>> numeric(weights.size()), exact(weights.size());
  double max_err = 0.0;
  for (std::size_t wi = 0; wi < weights.size(); ++wi) {
    const WeightFunction w = weights[wi].build();
    FractionalIVP ivp;
    ivp.alpha = alpha;
    ivp.weight = w;
    ivp.start = w.domain_start();
    ivp.kind = IvpKind::kCaputo;
    ivp.init = Eigen::VectorXd::Ones(1);
    ivp.rhs = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd { return -x; };
    const AbmConfig cfg = AbmConfig::from_horizon(ivp.start, ivp.start + T, h);
    const Trajectory traj = abm_solve(ivp, cfg);
    numeric[wi].resize(n + 1);
    exact[wi].resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      numeric[wi][i] = traj.states(0, i);
      exact[wi][i] = ml_decay_envelope(alpha, 1.0, w, traj.grid[i]);
      max_err = std::max(max_err, std::abs(numeric[wi][i] - exact[wi][i]));
    }
    SvgSeries s{w.label(), std::vector<double>(traj.grid.data(), traj.grid.data() + n + 1),
                numeric[wi]};
    sol_series.push_back(s);
    SvgSeries e{w.label(), s.x, {}};
    e.y.resize(n + 1);
    for (int i = 0; i <= n; ++i) e.y[i] = std::abs(numeric[wi][i] - exact[wi][i]);
    err_series.push_back(std::move(e));
  }
  for (int i = 0; i <= n; ++i) {
    std::vector<double> row = {i * h};
    for (std::size_t wi = 0; wi < weights.size(); ++wi) {
      row.push_back(numeric[wi][i]);
      row.push_back(exact[wi][i]);
      row.push_back(std::abs(numeric[wi][i] - exact[wi][i]));
    }
    table.add_row(row);
  }
  const std::string csv_path = join_path(out_dir, "validate.csv");
  table.write(csv_path);
  SvgOptions sol_opts;
  sol_opts.title = "linear test: numeric solution";
  sol_opts.y_label = "x(t)";
  SvgOptions err_opts;
  err_opts.title = "absolute error";
  err_opts.y_label = "|err|";
  err_opts.log_y = true;
  const std::string svg_path = join_path(out_dir, "validate.svg");
  write_dual_chart(sol_series, sol_opts, err_series, err_opts, svg_path);

  nlohmann::json cfgj = {{"alpha", alpha}, {"weights", weights_list}, {"h", h},
                         {"T", T},         {"threshold", threshold}};
  make_manifest("validate", cfgj.dump(), {csv_path, svg_path})
      .write(join_path(out_dir, "manifest.json"));

  std::printf("validate: max abs error %.6e (threshold %.3e)\n", max_err, threshold);
  return max_err <= threshold ? kExitOk : kExitAccuracy;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir) {
  ensure_dir(out_dir);
  const SolveConfig sc = solve_config_from_json(load_json_file(config_path));
  const Trajectory traj =
      sc.ivp.kind == IvpKind::kCaputo ? abm_solve(sc.ivp, sc.cfg) : rl_solve(sc.ivp, sc.cfg);
  const std::string csv_path = join_path(out_dir, "trajectory.csv");
  write_trajectory_csv(traj, csv_path);
  make_manifest("solve", sc.canonical.dump(), {csv_path})
      .write(join_path(out_dir, "manifest.json"));
  std::printf("solve: wrote %d states to %s\n", traj.n_steps() + 1, csv_path.c_str());
  return kExitOk;
}

int cmd_optimize(const std::string& config_path, const std::string& out_dir) {
  ensure_dir(out_dir);
  const OptimizeConfig oc = optimize_config_from_json(load_json_file(config_path));
  const auto results = run_sweep(oc.sweep);

  std::vector<std::string> outputs;
  CsvTable summary({"label", "time_to_eps", "final_distance"});
  std::vector<SvgSeries> series;
  for (const auto& res : results) {
    if (res.failed()) {
      std::fprintf(stderr, "optimize: %s failed: %s\n", res.label.c_str(), res.error.c_str());
      summary.add_row_raw({res.label, "error", "error"});
      continue;
    }
    CsvTable curve({"t", "distance"});
    const auto& grid = res.trajectory.grid;
    for (int i = 0; i < grid.size(); ++i) curve.add_row({grid[i], res.distance[i]});
    const std::string path = join_path(out_dir, res.label + ".csv");
    curve.write(path);
    outputs.push_back(path);
    const auto ttt = time_to_threshold(res, oc.eps);
    summary.add_row_raw({res.label, ttt ? format_float(*ttt) : "inf",
                         format_float(res.distance.back())});
    SvgSeries s{res.label,
                std::vector<double>(grid.data(), grid.data() + grid.size()), res.distance};
    series.push_back(std::move(s));
  }
  const std::string summary_path = join_path(out_dir, "summary.csv");
  summary.write(summary_path);
  outputs.push_back(summary_path);
  SvgOptions opts;
  opts.title = oc.sweep.objective_name + ": distance to optimum";
  opts.y_label = "|z - y*|";
  opts.log_y = oc.log_scale;
  const std::string svg_path = join_path(out_dir, "distance.svg");
  write_line_chart(series, opts, svg_path);
  outputs.push_back(svg_path);
  make_manifest("optimize", oc.canonical.dump(), outputs)
      .write(join_path(out_dir, "manifest.json"));
  std::printf("optimize: %zu series written to %s\n", series.size(), out_dir.c_str());
  return kExitOk;
}

int cmd_order(double alpha, const std::string& weight_token, double h0, int n_halvings,
              double T, const std::string& out_dir) {
  ensure_dir(out_dir);
  if (n_halvings < 2) {
    std::cerr << "order: --halvings must be >= 2\n";
    return kExitUsage;
  }
  const WeightConfig wc = weight_config_from_token(weight_token);
  const WeightFunction w = wc.build();
  FractionalIVP ivp;
  ivp.alpha = alpha;
  ivp.weight = w;
  ivp.start = w.domain_start();
  ivp.kind = IvpKind::kCaputo;
  ivp.init = Eigen::VectorXd::Ones(1);
  ivp.rhs = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd { return -x; };
  const AbmConfig cfg = AbmConfig::from_horizon(ivp.start, ivp.start + T, h0);
  const auto est = empirical_order(ivp, cfg, n_halvings, OrderReference::kClosedForm,
                                   [&](double t) -> Eigen::VectorXd {
                                     Eigen::VectorXd v(1);
                                     v[0] = ml_decay_envelope(alpha, 1.0, w, t);
                                     return v;
                                   });
  std::printf("%-12s %-14s %-8s\n", "h", "error", "order");
  for (std::size_t j = 0; j < est.step_sizes.size(); ++j) {
    if (j < est.orders.size()) {
      std::printf("%-12.3e %-14.6e %-8.3f\n", est.step_sizes[j], est.errors[j],
                  est.orders[j]);
    } else {
      std::printf("%-12.3e %-14.6e %-8s\n", est.step_sizes[j], est.errors[j], "-");
    }
  }
  CsvTable table({"h", "error"});
  for (std::size_t j = 0; j < est.step_sizes.size(); ++j) {
    table.add_row({est.step_sizes[j], est.errors[j]});
  }
  const std::string csv_path = join_path(out_dir, "order.csv");
  table.write(csv_path);
  nlohmann::json cfgj = {{"alpha", alpha}, {"weight", weight_token}, {"h0", h0},
                         {"halvings", n_halvings}, {"T", T}};
  make_manifest("order", cfgj.dump(), {csv_path}).write(join_path(out_dir, "manifest.json"));

  const double required = 1.0 + alpha - 0.25;
  const double measured = *std::min_element(est.orders.begin(), est.orders.end());
  std::printf("order: measured %.3f, required >= %.3f\n", measured, required);
  return measured >= required ? kExitOk : kExitAccuracy;
}

int cmd_picard_compare(int m_iterates, double h, double T, double agree_T, double threshold,
                       const std::string& out_dir) {
  ensure_dir(out_dir);
  // Riccati right-hand side g(t,x) = 1 - 2x - x^2 with psi = t^4, alpha = 1/2.
  const double alpha = 0.5, k = 4.0, x0 = 0.0;
  PolyRhs g;
  g.terms = {{1.0, 0, 0}, {-2.0, 0, 1}, {-1.0, 0, 2}};
  const auto iterates = picard_iterate(g, x0, k, alpha, m_iterates);
  const FracPolynomial& phi = iterates.back();

  const WeightFunction w = make_builtin(WeightFamily::kPower, 0.0, k);
  FractionalIVP ivp;
  ivp.alpha = alpha;
  ivp.weight = w;
  ivp.start = 0.0;
  ivp.kind = IvpKind::kCaputo;
  ivp.init = Eigen::VectorXd::Zero(1);
  ivp.rhs = [](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    (void)t;
    Eigen::VectorXd out(1);
    out[0] = 1.0 - 2.0 * x[0] - x[0] * x[0];
    return out;
  };
  const AbmConfig cfg = AbmConfig::from_horizon(0.0, T, h);
  const Trajectory traj = abm_solve(ivp, cfg);

  CsvTable table({"t", "abm", "picard", "abs_diff"});
  double max_disagreement = 0.0;
  std::optional<double> spike_t;
  std::vector<double> ts, abm_vals, picard_vals;
  for (int i = 0; i <= cfg.n_steps; ++i) {
    const double t = traj.grid[i];
    const double a = traj.states(0, i);
    const double p = phi.eval(t);
    const double diff = std::abs(a - p);
    table.add_row({t, a, p, diff});
    ts.push_back(t);
    abm_vals.push_back(a);
    picard_vals.push_back(p);
    if (t <= agree_T) max_disagreement = std::max(max_disagreement, diff);
    if (t > agree_T && !spike_t && diff > 10.0 * threshold) spike_t = t;
  }
  const std::string csv_path = join_path(out_dir, "picard_compare.csv");
  table.write(csv_path);
  SvgOptions opts;
  opts.title = "predictor-corrector vs Picard iterate";
  opts.y_label = "x(t)";
  const std::string svg_path = join_path(out_dir, "picard_compare.svg");
  write_line_chart({SvgSeries{"abm", ts, abm_vals}, SvgSeries{"picard", ts, picard_vals}},
                   opts, svg_path);
  nlohmann::json cfgj = {{"m", m_iterates}, {"h", h}, {"T", T},
                         {"agree_T", agree_T}, {"threshold", threshold}};
  make_manifest("picard-compare", cfgj.dump(), {csv_path, svg_path})
      .write(join_path(out_dir, "manifest.json"));

  std::printf("picard-compare: max disagreement %.6e on [0, %g]\n", max_disagreement, agree_T);
  if (spike_t) {
    std::printf("picard-compare: Picard iterate departs past t = %.6f\n", *spike_t);
  } else {
    std::printf("picard-compare: no Picard departure detected on (%.2f, %.2f]\n", agree_T, T);
  }
  return max_disagreement <= threshold ? kExitOk : kExitAccuracy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"psi-fractional gradient flows and predictor-corrector solver"};
  app.require_subcommand(1);
  // --h is a step-size option here, so keep only the long help flag.
  app.set_help_flag("--help", "print help");

  std::string out_dir = ".";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "linear-equation validation");
  validate->set_help_flag("--help", "print help");
  double v_alpha = 0.5, v_h = 1e-3, v_T = 1.0, v_threshold = 1e-3;
  std::string v_weights;
  validate->add_option("--alpha", v_alpha, "fractional order")->capture_default_str();
  validate->add_option("--weights", v_weights, "comma list, e.g. t,t2,t3,t4")->required();
  validate->add_option("--h", v_h, "step size")->capture_default_str();
  validate->add_option("--T", v_T, "horizon")->capture_default_str();
  validate->add_option("--threshold", v_threshold, "max abs error gate")
      ->capture_default_str();

  auto* solve = app.add_subcommand("solve", "generic IVP solve from a config file");
  solve->set_help_flag("--help", "print help");
  std::string s_config;
  solve->add_option("--config", s_config, "JSON config path")->required();

  auto* optimize = app.add_subcommand("optimize", "gradient-flow sweep from a config file");
  optimize->set_help_flag("--help", "print help");
  std::string o_config;
  optimize->add_option("--config", o_config, "JSON config path")->required();

  auto* order = app.add_subcommand("order", "empirical convergence order");
  order->set_help_flag("--help", "print help");
  double r_alpha = 0.5, r_h0 = 4e-3, r_T = 1.0;
  int r_halvings = 2;
  std::string r_weight = "t";
  order->add_option("--alpha", r_alpha, "fractional order")->capture_default_str();
  order->add_option("--weight", r_weight, "weight token")->capture_default_str();
  order->add_option("--h0", r_h0, "coarsest step")->capture_default_str();
  order->add_option("--halvings", r_halvings, "number of halvings")->capture_default_str();
  order->add_option("--T", r_T, "horizon")->capture_default_str();

  auto* picard = app.add_subcommand("picard-compare", "predictor-corrector vs Picard");
  picard->set_help_flag("--help", "print help");
  int p_m = 8;
  double p_h = 1e-4, p_T = 1.0, p_agree = 0.5, p_threshold = 1e-3;
  picard->add_option("--m", p_m, "Picard iterates")->capture_default_str();
  picard->add_option("--h", p_h, "solver step size")->capture_default_str();
  picard->add_option("--T", p_T, "horizon")->capture_default_str();
  picard->add_option("--agree-T", p_agree, "agreement window end")->capture_default_str();
  picard->add_option("--threshold", p_threshold, "agreement gate")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(v_alpha, v_weights, v_h, v_T, v_threshold, out_dir);
    }
    if (solve->parsed()) return cmd_solve(s_config, out_dir);
    if (optimize->parsed()) return cmd_optimize(o_config, out_dir);
    if (order->parsed()) return cmd_order(r_alpha, r_weight, r_h0, r_halvings, r_T, out_dir);
    if (picard->parsed()) {
      return cmd_picard_compare(p_m, p_h, p_T, p_agree, p_threshold, out_dir);
    }
  } catch (const psigrad::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
