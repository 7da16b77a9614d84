#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "psigrad/quadrature.hpp"

using namespace psigrad;

namespace {

std::vector<double> uniform_grid(double t0, double h, int n) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = t0 + h * i;
  return g;
}

}  // namespace

TEST_CASE("b coefficients: classical reduction and pinned value") {
  const auto ident = make_builtin(WeightFamily::kIdentity, 0.0);
  const auto grid = uniform_grid(0.0, 0.1, 10);
  for (int k = 0; k < 10; ++k) {
    for (int i = 0; i <= k; ++i) {
      CHECK(b_coeff(i, k, ident, 1.0, grid) == doctest::Approx(0.1).epsilon(1e-12));
    }
  }
  // psi = t^2, alpha = 0.5, t_i = 1, t_{i+1} = 2 = t_{k+1}
  const auto sq = make_builtin(WeightFamily::kPower, 0.0, 2.0);
  const std::vector<double> g2 = {1.0, 2.0};
  CHECK(b_coeff(0, 0, sq, 0.5, g2) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("b coefficients telescope to the total kernel mass") {
  for (double alpha : {0.25, 0.5, 0.8, 1.0}) {
    for (auto family : {WeightFamily::kIdentity, WeightFamily::kTLog1p}) {
      const auto w = make_builtin(family, 0.0);
      const auto grid = uniform_grid(0.0, 0.05, 30);
      for (int k : {0, 7, 29}) {
        double sum = 0.0;
        for (int i = 0; i <= k; ++i) {
          const double b = b_coeff(i, k, w, alpha, grid);
          CHECK(b > 0.0);
          sum += b;
        }
        const double mass = std::pow(w.eval(grid[k + 1]) - w.eval(grid[0]), alpha) / alpha;
        CHECK(sum == doctest::Approx(mass).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("a coefficients: trapezoid reduction at alpha = 1") {
  const auto ident = make_builtin(WeightFamily::kIdentity, 0.0);
  const auto a = a_coeffs(0, ident, 1.0, {0.0, 0.1});
  REQUIRE(a.size() == 2);
  CHECK(a[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(a[1] == doctest::Approx(0.05).epsilon(1e-12));
  const auto a3 = a_coeffs(3, ident, 1.0, uniform_grid(0.0, 0.1, 4));
  CHECK(a3[0] == doctest::Approx(0.05).epsilon(1e-11));
  for (int i = 1; i <= 3; ++i) CHECK(a3[i] == doctest::Approx(0.1).epsilon(1e-11));
  CHECK(a3[4] == doctest::Approx(0.05).epsilon(1e-11));
}

TEST_CASE("a coefficients match the classical Adams weights for psi = t") {
  // The final cell's integrand has an x^alpha endpoint kink, which the
  // 16-point Gauss rule resolves to ~1e-4 relative at worst (alpha = 0.3);
  // every other cell is analytic and agrees to roundoff.
  const auto ident = make_builtin(WeightFamily::kIdentity, 0.0);
  const double h = 0.2;
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (int k = 0; k <= 3; ++k) {
      const auto got = a_coeffs(k, ident, alpha, uniform_grid(0.0, h, k + 1));
      const auto ref = oracles::classical_adams_weights(k, alpha, h);
      REQUIRE(got.size() == ref.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        const double tol = i + 2 >= got.size() ? 1e-3 : 1e-11;
        CHECK(got[i] == doctest::Approx(ref[i]).epsilon(tol));
      }
    }
  }
}

TEST_CASE("exact a coefficients: positivity and partition of unity") {
  for (double alpha : {0.4, 0.7, 1.0}) {
    for (double k_exp : {1.0, 2.0, 4.0}) {
      const auto w = make_builtin(WeightFamily::kPower, 0.0, k_exp);
      const int k = 24;
      const auto grid = uniform_grid(0.0, 0.04, k + 1);
      const auto a = a_coeffs(k, w, alpha, grid);
      double sum = 0.0;
      for (double ai : a) {
        CHECK(ai >= 0.0);
        sum += ai;
      }
      const double mass = std::pow(w.eval(grid[k + 1]) - w.eval(grid[0]), alpha) / alpha;
      CHECK(std::abs(sum - mass) <= 1e-10 * std::max(1.0, mass));
    }
  }
}

TEST_CASE("endpoint-rule corrector variant zeroes the first coefficient") {
  const auto sq = make_builtin(WeightFamily::kPower, 0.0, 2.0);
  const int k = 5;
  const auto grid = uniform_grid(0.0, 0.1, k + 1);
  const auto a = a_coeffs(k, sq, 0.5, grid, CorrectorWeights::kPaperApprox);
  CHECK(a[0] == 0.0);  // identically zero by construction of the variant
  const double pk = sq.eval(grid[k + 1]);
  for (int i = 1; i <= k; ++i) {
    const double expect = (std::pow(pk - sq.eval(grid[i]), 0.5) -
                           std::pow(pk - sq.eval(grid[i + 1]), 0.5)) / 0.5;
    CHECK(a[i] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(a[k + 1] == doctest::Approx(std::pow(pk - sq.eval(grid[k]), 0.5) / 0.5).epsilon(1e-12));
}

TEST_CASE("cached kernel matches the general-grid coefficients") {
  const auto w = make_builtin(WeightFamily::kTLog1p, 0.0);
  const double h = 0.05;
  const int n = 40;
  const UniformGridKernel kern(w, 0.0, h, n);
  const auto grid = uniform_grid(0.0, h, n);
  Eigen::ArrayXd wpred(n + 2), wcorr(n + 2), scratch(16 * n);
  for (double alpha : {0.5, 0.8}) {
    for (int K : {1, 2, 17, 40}) {
      kern.predictor_weights(alpha, K, 0, wpred);
      for (int i = 0; i < K; ++i) {
        CHECK(wpred[i] == doctest::Approx(b_coeff(i, K - 1, w, alpha, grid)).epsilon(1e-12));
      }
      kern.corrector_weights_exact(alpha, K, 0, wcorr, scratch);
      const auto ref = a_coeffs(K - 1, w, alpha,
                                std::vector<double>(grid.begin(), grid.begin() + K + 1));
      for (int i = 0; i <= K; ++i) {
        CHECK(wcorr[i] == doctest::Approx(ref[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gauss rule integrates polynomials exactly") {
  // degree-9 polynomial on [0,1]
  auto poly = [](double x) { return 3.0 * std::pow(x, 9) - 2.0 * std::pow(x, 4) + x - 0.25; };
  double got = 0.0;
  for (int q = 0; q < 16; ++q) got += kGauss16Weights[q] * poly(kGauss16Nodes[q]);
  const double exact = 3.0 / 10.0 - 2.0 / 5.0 + 0.5 - 0.25;
  CHECK(got == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("tanh-sinh absorbs endpoint singularities") {
  // int_0^1 x^{-1/2} dx = 2
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK(tanh_sinh(f, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
  // Beta(1/2, 1/2) = pi
  auto g = [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); };
  CHECK(tanh_sinh(g, 0.0, 1.0) == doctest::Approx(3.14159265358979).epsilon(1e-8));
}
