#pragma once

#include <cstdint>

namespace psigrad {

class WeightFunction;

/// Gamma function on the real line, accurate to >= 12 significant digits
/// (Lanczos approximation with reflection for x < 0.5).
/// Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

/// 1/Gamma(x); returns 0 at the poles instead of throwing.
double recip_gamma(double x);

/// Natural log of |Gamma(x)| for x > 0.
double log_gamma(double x);

/// Parameters (alpha, beta) of the two-parameter Mittag-Leffler function
/// E_{alpha,beta}(z) = sum_j z^j / Gamma(j*alpha + beta).
struct MittagLefflerParams {
  double alpha;
  double beta = 1.0;

  /// E_{alpha,beta}(-t) is completely monotone iff 0 < alpha <= 1 and
  /// beta >= alpha.
  bool completely_monotone() const { return alpha > 0.0 && alpha <= 1.0 && beta >= alpha; }
};

enum class MlBranch : std::uint8_t { kSeries, kAsymptotic };

/// Evaluation diagnostics for ml_eval.
struct MlStatus {
  MlBranch branch = MlBranch::kSeries;
  int terms = 0;
  /// Set when neither branch can be trusted to ~1e-3 (deeply negative z at
  /// small alpha), when the series hit its term cap, or when the two branches
  /// disagree by more than 1e-3 near the switch point.
  bool accuracy_loss = false;
};

/// Two-parameter Mittag-Leffler function for real z.
///
/// Power series with compensated summation while the largest term stays small
/// enough that double-precision cancellation keeps ~9 significant digits;
/// otherwise the large-|z| expansion E_{a,b}(z) ~ -sum_{k>=1} z^{-k}/Gamma(b-a k)
/// (optimally truncated, at most 10 terms). Near the handover both branches are
/// evaluated and a >1e-3 mismatch raises the accuracy-loss flag.
double ml_eval(const MittagLefflerParams& p, double z, MlStatus* status = nullptr);

/// Series branch only (exposed for branch-agreement checks).
double ml_eval_series(const MittagLefflerParams& p, double z, MlStatus* status = nullptr);

/// Asymptotic branch only (valid for large negative z).
double ml_eval_asymptotic(const MittagLefflerParams& p, double z, MlStatus* status = nullptr);

/// Largest |z| at which the series branch still carries ~9 good digits for
/// these parameters; ml_eval switches branches past this point.
double ml_series_limit(const MittagLefflerParams& p);

/// Decay envelope E_alpha(-L (psi(t) - psi(l))^alpha) of the linear test
/// equation; strictly in (0, 1] for t >= l.
double ml_decay_envelope(double alpha, double scale, const WeightFunction& w, double t);

}  // namespace psigrad
