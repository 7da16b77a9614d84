#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace psigrad {

/// Weight (kernel) function psi generating the fractional operators.
/// Immutable after construction; safe to share across concurrent solves.
///
/// The built-in families are strictly increasing with psi' > 0 on (l, inf);
/// psi' may vanish at the domain start itself (t^k with k > 1, t*ln(t+1)),
/// which the operators tolerate.
class WeightFunction {
 public:
  using Map = std::function<double(double)>;

  /// Defaults to the identity weight psi = t on [0, inf).
  WeightFunction()
      : eval_([](double t) { return t; }),
        deriv_([](double) { return 1.0; }),
        second_deriv_([](double) { return 0.0; }),
        domain_start_(0.0),
        label_("t"),
        convex_(true),
        unbounded_certified_(true) {}

  WeightFunction(Map eval, Map deriv, Map second_deriv, double domain_start,
                 std::string label, bool convex, bool unbounded_certified)
      : eval_(std::move(eval)),
        deriv_(std::move(deriv)),
        second_deriv_(std::move(second_deriv)),
        domain_start_(domain_start),
        label_(std::move(label)),
        convex_(convex),
        unbounded_certified_(unbounded_certified) {}

  double eval(double t) const { return eval_(t); }
  double deriv(double t) const { return deriv_(t); }
  bool has_second_deriv() const { return static_cast<bool>(second_deriv_); }
  double second_deriv(double t) const { return second_deriv_(t); }

  double domain_start() const { return domain_start_; }
  const std::string& label() const { return label_; }
  /// Declared convex (psi'' >= 0 on the whole domain).
  bool convex() const { return convex_; }
  /// sup psi = infinity certified analytically (built-in families only).
  bool unbounded_certified() const { return unbounded_certified_; }

  /// psi(t) - psi(domain_start).
  double shifted(double t) const { return eval_(t) - eval_(domain_start_); }

 private:
  Map eval_;
  Map deriv_;
  Map second_deriv_;
  double domain_start_;
  std::string label_;
  bool convex_;
  bool unbounded_certified_;
};

enum class WeightFamily { kIdentity, kPower, kHadamardLog, kTLog1p };

/// Built-in weights with exact analytic derivatives.
///   identity     psi = t           (label "t")
///   power(k)     psi = t^k, k > 0  (label "t^k")
///   hadamard_log psi = ln t        (label "ln(t)", requires l >= 1)
///   t_log1p      psi = t ln(1+t)   (label "t*ln(t+1)")
/// Throws std::domain_error when l violates the family's domain.
WeightFunction make_builtin(WeightFamily family, double domain_start, double k = 1.0);

/// User-supplied weight. Missing derivatives are filled in by central
/// differences with step 1e-6 * max(1, |t|); unboundedness cannot be certified
/// from samples, so such weights carry unbounded_certified = false and
/// check_assumptions emits a warning for them.
WeightFunction make_custom(WeightFunction::Map eval, double domain_start, std::string label,
                           WeightFunction::Map deriv = nullptr,
                           WeightFunction::Map second_deriv = nullptr, bool convex = false);

struct AssumptionReport {
  bool ok = false;
  std::vector<std::pair<double, std::string>> violations;  // (t, reason)
  std::vector<std::string> warnings;
};

/// Checks psi' > 0 on the grid (psi' >= 0 is tolerated at the domain start
/// itself) and, when require_convex, psi'' >= 0 everywhere on the grid.
/// Violations are reported, never thrown. Grid must be nonempty, sorted, and
/// within the weight's domain.
AssumptionReport check_assumptions(const WeightFunction& w, const std::vector<double>& grid,
                                   bool require_convex);

}  // namespace psigrad
