#include "psigrad/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace psigrad {

using nlohmann::json;

WeightConfig weight_config_from_json(const json& j) {
  if (j.is_string()) return weight_config_from_token(j.get<std::string>());
  if (!j.is_object() || !j.contains("family")) {
    throw std::invalid_argument("weight config: expected {\"family\": ...}");
  }
  const std::string family = j.at("family").get<std::string>();
  WeightConfig wc;
  wc.domain_start = j.value("l", 0.0);
  if (family == "identity") {
    wc.family = WeightFamily::kIdentity;
  } else if (family == "power") {
    wc.family = WeightFamily::kPower;
    wc.k = j.at("k").get<double>();
  } else if (family == "hadamard_log") {
    wc.family = WeightFamily::kHadamardLog;
    wc.domain_start = j.value("l", 1.0);
  } else if (family == "t_log1p") {
    wc.family = WeightFamily::kTLog1p;
  } else {
    throw std::invalid_argument("weight config: unknown family '" + family + "'");
  }
  return wc;
}

json weight_config_to_json(const WeightConfig& wc) {
  json j;
  switch (wc.family) {
    case WeightFamily::kIdentity:
      j["family"] = "identity";
      break;
    case WeightFamily::kPower:
      j["family"] = "power";
      j["k"] = wc.k;
      break;
    case WeightFamily::kHadamardLog:
      j["family"] = "hadamard_log";
      break;
    case WeightFamily::kTLog1p:
      j["family"] = "t_log1p";
      break;
  }
  j["l"] = wc.domain_start;
  return j;
}

WeightConfig weight_config_from_token(const std::string& token) {
  WeightConfig wc;
  if (token == "t") {
    wc.family = WeightFamily::kIdentity;
  } else if (token == "tlog") {
    wc.family = WeightFamily::kTLog1p;
  } else if (token == "ln") {
    wc.family = WeightFamily::kHadamardLog;
    wc.domain_start = 1.0;
  } else if (token.size() > 1 && token[0] == 't') {
    wc.family = WeightFamily::kPower;
    try {
      wc.k = std::stod(token.substr(1));
    } catch (...) {
      throw std::invalid_argument("unknown weight token '" + token + "'");
    }
    if (!(wc.k > 0.0)) throw std::invalid_argument("weight token needs k > 0");
  } else {
    throw std::invalid_argument("unknown weight token '" + token + "'");
  }
  return wc;
}

Objective objective_from_json(const json& j) {
  std::string name;
  json obj = j;
  if (j.is_string()) {
    name = j.get<std::string>();
    obj = json::object();
  } else if (j.is_object()) {
    name = j.at("name").get<std::string>();
  } else {
    throw std::invalid_argument("objective config: expected name or object");
  }
  if (name == "booth") return make_booth();
  if (name == "zakharov") return make_zakharov(obj.value("n", 2));
  if (name == "negexp") return make_neg_radial_exp();
  if (name == "quadratic") {
    if (!obj.contains("Q") || !obj.contains("b")) {
      throw std::invalid_argument("quadratic objective: needs Q and b");
    }
    const auto rows = obj.at("Q").get<std::vector<std::vector<double>>>();
    const auto bvec = obj.at("b").get<std::vector<double>>();
    const int d = static_cast<int>(rows.size());
    Eigen::MatrixXd Q(d, d);
    for (int i = 0; i < d; ++i) {
      if (static_cast<int>(rows[i].size()) != d) {
        throw std::invalid_argument("quadratic objective: Q must be square");
      }
      for (int c = 0; c < d; ++c) Q(i, c) = rows[i][c];
    }
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(bvec.data(), bvec.size());
    return make_quadratic(Q, b);
  }
  throw std::invalid_argument("unknown objective '" + name + "'");
}

namespace {

Eigen::VectorXd vector_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> rhs_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") {
    return [](double, const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()); };
  }
  if (type == "linear") {
    const double lambda = j.at("lambda").get<double>();
    return [lambda](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
      return lambda * x;
    };
  }
  if (type == "gradient_flow") {
    const Objective obj = objective_from_json(j.at("objective"));
    const double beta = j.value("beta", 1.0);
    const auto grad = obj.grad;
    return [beta, grad](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
      return -beta * grad(x);
    };
  }
  if (type == "poly") {
    // Scalar polynomial rhs: coeffs = [[c, t_power, x_power], ...].
    const auto rows = j.at("coeffs").get<std::vector<std::vector<double>>>();
    std::vector<std::array<double, 3>> terms;
    for (const auto& r : rows) {
      if (r.size() != 3) throw std::invalid_argument("poly rhs: each term is [c, u, v]");
      terms.push_back({r[0], r[1], r[2]});
    }
    return [terms](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
      double s = 0.0;
      for (const auto& term : terms) {
        s += term[0] * std::pow(t, term[1]) * std::pow(x[0], term[2]);
      }
      Eigen::VectorXd out(1);
      out[0] = s;
      return out;
    };
  }
  throw std::invalid_argument("rhs config: unknown type '" + type + "'");
}

}  // namespace

SolveConfig solve_config_from_json(const json& j) {
  SolveConfig sc;
  const std::string kind = j.value("kind", "caputo");
  if (kind == "caputo") {
    sc.ivp.kind = IvpKind::kCaputo;
  } else if (kind == "rl") {
    sc.ivp.kind = IvpKind::kRiemannLiouville;
  } else {
    throw std::invalid_argument("solve config: kind must be 'caputo' or 'rl'");
  }
  sc.ivp.alpha = j.at("alpha").get<double>();
  if (!(sc.ivp.alpha > 0.0 && sc.ivp.alpha <= 1.0)) {
    throw std::invalid_argument("solve config: alpha must lie in (0,1]");
  }
  const WeightConfig wc = weight_config_from_json(j.at("weight"));
  sc.ivp.weight = wc.build();
  sc.ivp.start = wc.domain_start;
  if (sc.ivp.kind == IvpKind::kCaputo) {
    sc.ivp.init = vector_from_json(j.at("x0"));
  } else {
    sc.ivp.init = vector_from_json(j.at("rl_init"));
  }
  sc.ivp.rhs = rhs_from_json(j.at("rhs"));
  const double h = j.at("h").get<double>();
  const double T = j.at("T").get<double>();
  sc.cfg = AbmConfig::from_horizon(sc.ivp.start, T, h, j.value("corrector_iters", 5),
                                   j.value("corrector_weights", std::string("exact")) ==
                                           "paper_approx"
                                       ? CorrectorWeights::kPaperApprox
                                       : CorrectorWeights::kExact);
  sc.canonical = j;
  return sc;
}

OptimizeConfig optimize_config_from_json(const json& j) {
  OptimizeConfig oc;
  SweepSpec& s = oc.sweep;
  s.objective = objective_from_json(j.at("objective"));
  s.objective_name = s.objective.name;
  s.init = vector_from_json(j.at("init"));
  s.alphas = j.at("alphas").get<std::vector<double>>();
  for (double a : s.alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::invalid_argument("optimize config: alphas must lie in (0,1]");
    }
  }
  for (const auto& wj : j.at("weights")) s.weights.push_back(weight_config_from_json(wj));
  s.beta = j.value("beta", 1.0);
  s.h = j.value("h", 1e-3);
  s.T = j.value("T", 10.0);
  s.include_rk4 = j.value("include_rk4", true);
  s.corrector_iters = j.value("corrector_iters", 5);
  if (j.contains("reference_point")) {
    s.reference_point = vector_from_json(j.at("reference_point"));
  }
  if (s.objective.name == "negexp") {
    // The figures for this benchmark track descent toward the function's
    // extremum at the origin; orient the flow accordingly.
    s.descend_negated = true;
    if (!s.reference_point) s.reference_point = Eigen::VectorXd::Zero(s.objective.dim);
  }
  oc.eps = j.value("eps", 0.1);
  oc.log_scale = j.value("log_scale", true);
  oc.canonical = j;
  return oc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  return j;
}

}  // namespace psigrad
