// Independent reference implementations used only by the tests.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

/// Scaled complementary error function e^{x^2} erfc(x); with it,
/// E_{1/2}(-x) = erfcx(x) for x >= 0. Valid here for 0 <= x < 26.
inline double erfcx(double x) { return std::exp(x * x) * std::erfc(x); }

/// Composite trapezoidal rule on a uniform grid.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

/// Classical fractional Adams corrector weights for psi = t on a uniform grid
/// (direct evaluation of the standard closed form).
inline std::vector<double> classical_adams_weights(int k, double alpha, double h) {
  const double scale = std::pow(h, alpha) / (alpha * (alpha + 1.0));
  std::vector<double> a(k + 2);
  a[0] = scale * (std::pow(k, alpha + 1.0) - (k - alpha) * std::pow(k + 1.0, alpha));
  for (int i = 1; i <= k; ++i) {
    a[i] = scale * (std::pow(k - i + 2.0, alpha + 1.0) + std::pow(k - i, alpha + 1.0) -
                    2.0 * std::pow(k - i + 1.0, alpha + 1.0));
  }
  a[k + 1] = scale;
  return a;
}

/// Central-difference gradient of a scalar field.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double delta = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + delta;
    const double fp = f(x);
    x[i] = orig - delta;
    const double fm = f(x);
    x[i] = orig;
    g[i] = (fp - fm) / (2.0 * delta);
  }
  return g;
}

}  // namespace oracles
