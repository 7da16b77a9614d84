#include "psigrad/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace psigrad {
namespace {

std::string power_label(double k) {
  if (k == 1.0) return "t";
  const double rounded = std::round(k);
  if (rounded == k) return "t^" + std::to_string(static_cast<long long>(rounded));
  std::string s = "t^" + std::to_string(k);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

WeightFunction make_builtin(WeightFamily family, double domain_start, double k) {
  switch (family) {
    case WeightFamily::kIdentity:
      return WeightFunction([](double t) { return t; }, [](double) { return 1.0; },
                            [](double) { return 0.0; }, domain_start, "t",
                            /*convex=*/true, /*unbounded=*/true);
    case WeightFamily::kPower: {
      if (!(k > 0.0)) throw std::domain_error("make_builtin: power weight requires k > 0");
      if (domain_start < 0.0) {
        throw std::domain_error("make_builtin: power weight requires l >= 0");
      }
      if (k == 1.0) return make_builtin(WeightFamily::kIdentity, domain_start);
      return WeightFunction(
          [k](double t) { return std::pow(t, k); },
          [k](double t) { return k * std::pow(t, k - 1.0); },
          [k](double t) { return k * (k - 1.0) * std::pow(t, k - 2.0); }, domain_start,
          power_label(k), /*convex=*/k >= 1.0, /*unbounded=*/true);
    }
    case WeightFamily::kHadamardLog:
      if (domain_start < 1.0) {
        throw std::domain_error("make_builtin: hadamard_log weight requires l >= 1");
      }
      return WeightFunction([](double t) { return std::log(t); },
                            [](double t) { return 1.0 / t; },
                            [](double t) { return -1.0 / (t * t); }, domain_start, "ln(t)",
                            /*convex=*/false, /*unbounded=*/true);
    case WeightFamily::kTLog1p:
      if (domain_start < 0.0) {
        throw std::domain_error("make_builtin: t_log1p weight requires l >= 0");
      }
      return WeightFunction(
          [](double t) { return t * std::log1p(t); },
          [](double t) { return std::log1p(t) + t / (1.0 + t); },
          [](double t) {
            const double u = 1.0 + t;
            return 1.0 / u + 1.0 / (u * u);
          },
          domain_start, "t*ln(t+1)", /*convex=*/true, /*unbounded=*/true);
  }
  throw std::domain_error("make_builtin: unknown family");
}

WeightFunction make_custom(WeightFunction::Map eval, double domain_start, std::string label,
                           WeightFunction::Map deriv, WeightFunction::Map second_deriv,
                           bool convex) {
  if (!eval) throw std::invalid_argument("make_custom: eval map required");
  if (!deriv) {
    deriv = [eval](double t) {
      const double d = 1e-6 * std::max(1.0, std::abs(t));
      return (eval(t + d) - eval(t - d)) / (2.0 * d);
    };
  }
  if (!second_deriv) {
    const auto d1 = deriv;
    second_deriv = [d1](double t) {
      const double d = 1e-6 * std::max(1.0, std::abs(t));
      return (d1(t + d) - d1(t - d)) / (2.0 * d);
    };
  }
  return WeightFunction(std::move(eval), std::move(deriv), std::move(second_deriv),
                        domain_start, std::move(label), convex,
                        /*unbounded=*/false);
}

AssumptionReport check_assumptions(const WeightFunction& w, const std::vector<double>& grid,
                                   bool require_convex) {
  if (grid.empty()) throw std::invalid_argument("check_assumptions: grid must be nonempty");
  for (double t : grid) {
    if (t < w.domain_start()) {
      throw std::invalid_argument("check_assumptions: grid entry below domain start");
    }
  }
  AssumptionReport report;
  for (double t : grid) {
    const double d = w.deriv(t);
    const bool at_start = t == w.domain_start();
    if (!(at_start ? d >= 0.0 : d > 0.0)) {
      report.violations.emplace_back(t, "psi' <= 0");
    }
    if (require_convex) {
      if (!w.has_second_deriv()) {
        report.violations.emplace_back(t, "psi'' unavailable");
      } else if (!(w.second_deriv(t) >= 0.0)) {
        report.violations.emplace_back(t, "psi'' < 0");
      }
    }
  }
  // Strict monotonicity across consecutive grid points.
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] > grid[i - 1] && !(w.eval(grid[i]) > w.eval(grid[i - 1]))) {
      report.violations.emplace_back(grid[i], "psi not strictly increasing");
    }
  }
  if (!w.unbounded_certified()) {
    report.warnings.push_back(
        "unboundedness of psi cannot be certified from samples; supply a built-in family "
        "for a certified weight");
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace psigrad
