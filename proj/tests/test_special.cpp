#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psigrad/special.hpp"
#include "psigrad/weight.hpp"

using namespace psigrad;

TEST_CASE("gamma_fn pinned values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.8862269254527580).epsilon(1e-12));
  // functional equation at a few non-trivial points
  for (double x : {0.3, 1.7, 3.2, 7.9}) {
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
  CHECK(recip_gamma(-3.0) == 0.0);
  CHECK(recip_gamma(2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(recip_gamma(-0.5) == doctest::Approx(1.0 / gamma_fn(-0.5)).epsilon(1e-12));
}

TEST_CASE("ml_eval pinned values") {
  CHECK(ml_eval({1.0, 1.0}, -1.0) == doctest::Approx(0.3678794411714423).epsilon(1e-10));
  // E_{1/2}(-x) = erfcx(x)
  CHECK(ml_eval({0.5, 1.0}, -1.0) == doctest::Approx(oracles::erfcx(1.0)).epsilon(1e-8));
  CHECK(ml_eval({0.5, 1.0}, -1.0) == doctest::Approx(0.4275836).epsilon(1e-6));
  CHECK(ml_eval({0.5, 0.5}, 0.0) == doctest::Approx(0.5641895835477563).epsilon(1e-10));
  CHECK(std::abs(ml_eval({0.5, 1.0}, -10.0) - oracles::erfcx(10.0)) < 5e-4);
  CHECK(std::abs(ml_eval({0.5, 1.0}, -10.0) - 0.056179) < 5e-4);
}

TEST_CASE("E_1 equals exp on random points") {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> dist(-5.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double z = dist(gen);
    const double e = std::exp(z);
    CHECK(std::abs(ml_eval({1.0, 1.0}, z) - e) <= 1e-8 * std::abs(e));
  }
}

TEST_CASE("E_{a,b}(0) = 1/Gamma(b)") {
  for (double alpha : {0.3, 0.6, 1.0}) {
    for (double beta : {0.4, 1.0, 2.5}) {
      CHECK(ml_eval({alpha, beta}, 0.0) ==
            doctest::Approx(1.0 / gamma_fn(beta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("erfcx identity across the erfc-representable range") {
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    const double ref = oracles::erfcx(x);
    const double got = ml_eval({0.5, 1.0}, -x);
    CHECK(std::abs(got - ref) <= 1e-6 + 5e-4 * ref);
  }
}

TEST_CASE("complete monotonicity spot-check") {
  // Positive, non-increasing, with non-decreasing first differences on a
  // t = 0:0.1:10 grid. The convexity slack absorbs the branch handover error.
  for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
    std::vector<double> vals;
    for (int i = 0; i <= 100; ++i) vals.push_back(ml_eval({alpha, 1.0}, -0.1 * i));
    for (std::size_t i = 0; i < vals.size(); ++i) {
      CHECK(vals[i] > 0.0);
      if (i > 0) CHECK(vals[i] <= vals[i - 1] + 1e-9);
    }
    for (std::size_t i = 2; i < vals.size(); ++i) {
      const double d1 = vals[i - 1] - vals[i - 2];
      const double d2 = vals[i] - vals[i - 1];
      CHECK(d2 >= d1 - 5e-4);
    }
  }
}

TEST_CASE("decay to zero with bisection for t_big") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    auto value = [&](double t) { return ml_eval({alpha, 1.0}, -std::pow(t, alpha)); };
    double lo = 1.0, hi = 1.0;
    while (value(hi) >= 1e-2 && hi < 1e9) hi *= 2.0;
    REQUIRE(hi < 1e9);
    for (int i = 0; i < 200 && hi - lo > 1e-6 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (value(mid) >= 1e-2 ? lo : hi) = mid;
    }
    const double t_big = hi;
    CHECK(value(t_big) < 1e-2);
    double prev = value(t_big);
    for (double f = 1.1; f <= 2.01; f += 0.1) {
      const double cur = value(t_big * f);
      CHECK(cur <= prev + 1e-10);
      prev = cur;
    }
  }
}

TEST_CASE("series and asymptotic branches agree at the switch point") {
  for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
    const MittagLefflerParams p{alpha, 1.0};
    const double zs = ml_series_limit(p);
    const double series = ml_eval_series(p, -zs);
    const double asym = ml_eval_asymptotic(p, -zs);
    CHECK(std::abs(series - asym) <= 1e-3 * std::max(1.0, std::abs(series)));
  }
}

TEST_CASE("series cap raises the accuracy-loss flag") {
  MlStatus status;
  ml_eval_series({0.3, 1.0}, -40.0, &status);  // deep cancellation territory
  CHECK(status.accuracy_loss);
}

TEST_CASE("ml_decay_envelope") {
  const WeightFunction ident = make_builtin(WeightFamily::kIdentity, 0.0);
  CHECK(ml_decay_envelope(1.0, 1.0, ident, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  const WeightFunction sq = make_builtin(WeightFamily::kPower, 0.0, 2.0);
  CHECK(ml_decay_envelope(0.37, 2.0, sq, 0.0) == doctest::Approx(1.0));
  CHECK(ml_decay_envelope(0.5, 1.0, sq, 1.0) ==
        doctest::Approx(oracles::erfcx(1.0)).epsilon(1e-8));
  // strictly in (0, 1] up to roundoff at t = l
  for (double t : {0.0, 0.5, 1.0, 3.0, 10.0}) {
    const double v = ml_decay_envelope(0.6, 0.7, ident, t);
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("complete-monotonicity regime flag") {
  CHECK(MittagLefflerParams{0.5, 1.0}.completely_monotone());
  CHECK(MittagLefflerParams{0.5, 0.5}.completely_monotone());
  CHECK_FALSE(MittagLefflerParams{0.8, 0.5}.completely_monotone());
}
