#pragma once

#include <string>

#include <json.hpp>

#include "psigrad/abm.hpp"
#include "psigrad/bench.hpp"
#include "psigrad/objective.hpp"
#include "psigrad/weight.hpp"

namespace psigrad {

/// Weight config {"family": "power", "k": 4.0, "l": 0.0}; families
/// "identity" | "power" | "hadamard_log" | "t_log1p", plus the short grid
/// tokens accepted on the command line ("t", "t2", "t3", "t4", "tlog", "ln").
WeightConfig weight_config_from_json(const nlohmann::json& j);
nlohmann::json weight_config_to_json(const WeightConfig& wc);

/// Short token -> weight config ("t", "t2", ..., "tlog", "ln").
WeightConfig weight_config_from_token(const std::string& token);

/// Objective by name: "booth" | "zakharov" (optional "n") |
/// "negexp" | "quadratic" (requires "Q", "b").
Objective objective_from_json(const nlohmann::json& j);

/// Solve config for the generic IVP front end; see the README for the schema.
struct SolveConfig {
  FractionalIVP ivp;
  AbmConfig cfg;
  nlohmann::json canonical;
};

SolveConfig solve_config_from_json(const nlohmann::json& j);

/// Sweep config for the optimize front end.
struct OptimizeConfig {
  SweepSpec sweep;
  double eps = 0.1;
  bool log_scale = true;
  nlohmann::json canonical;
};

OptimizeConfig optimize_config_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace psigrad
