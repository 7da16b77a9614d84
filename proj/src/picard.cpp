#include "psigrad/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psigrad/special.hpp"

namespace psigrad {

namespace {
constexpr std::size_t kTermCap = 2000;
constexpr double kExponentMergeTol = 1e-12;
constexpr double kCoeffDropTol = 0.0;  // exact zeros only
}  // namespace

FracPolynomial::FracPolynomial(double constant) {
  if (constant != 0.0) terms_.push_back({0.0, constant});
}

FracPolynomial::FracPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
  normalize();
}

FracPolynomial FracPolynomial::monomial(double coefficient, double exponent) {
  FracPolynomial p;
  if (coefficient != 0.0) p.terms_.push_back({exponent, coefficient});
  return p;
}

void FracPolynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  for (const Term& t : terms_) {
    if (t.exponent < 0.0) throw std::invalid_argument("FracPolynomial: negative exponent");
    if (!merged.empty() &&
        std::abs(t.exponent - merged.back().exponent) <= kExponentMergeTol) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) {
                                return std::abs(t.coefficient) <= kCoeffDropTol ||
                                       !std::isfinite(t.coefficient);
                              }),
               merged.end());
  terms_ = std::move(merged);
}

double FracPolynomial::eval(double t) const {
  double sum = 0.0;
  for (const Term& term : terms_) {
    if (term.exponent == 0.0) {
      sum += term.coefficient;  // t^0 = 1, including at t = 0
    } else {
      sum += term.coefficient * std::pow(t, term.exponent);
    }
  }
  return sum;
}

FracPolynomial& FracPolynomial::operator+=(const FracPolynomial& rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  normalize();
  return *this;
}

FracPolynomial operator*(const FracPolynomial& a, const FracPolynomial& b) {
  std::vector<FracPolynomial::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      out.push_back({ta.exponent + tb.exponent, ta.coefficient * tb.coefficient});
    }
  }
  return FracPolynomial(std::move(out));
}

FracPolynomial operator*(double s, const FracPolynomial& p) {
  std::vector<FracPolynomial::Term> out = p.terms_;
  for (auto& t : out) t.coefficient *= s;
  return FracPolynomial(std::move(out));
}

FracPolynomial frac_integrate_poly(const FracPolynomial& p, double k, double alpha) {
  if (!(k > 0.0)) throw std::invalid_argument("frac_integrate_poly: k > 0 required");
  std::vector<FracPolynomial::Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    const double a1 = t.exponent / k + 1.0;
    const double a2 = t.exponent / k + alpha + 1.0;
    // log-space for large exponents where Gamma itself overflows
    const double ratio = a2 > 170.0 ? std::exp(log_gamma(a1) - log_gamma(a2))
                                    : gamma_fn(a1) / gamma_fn(a2);
    out.push_back({t.exponent + alpha * k, t.coefficient * ratio});
  }
  return FracPolynomial(std::move(out));
}

double PolyRhs::eval(double t, double x) const {
  double sum = 0.0;
  for (const auto& term : terms) {
    sum += term.coefficient * std::pow(t, term.t_power) * std::pow(x, term.x_power);
  }
  return sum;
}

std::vector<FracPolynomial> picard_iterate(const PolyRhs& g, double x0, double k, double alpha,
                                           int m_max) {
  if (m_max < 0) throw std::invalid_argument("picard_iterate: m_max >= 0 required");
  std::vector<FracPolynomial> iterates;
  iterates.reserve(m_max + 1);
  iterates.emplace_back(x0);
  for (int m = 0; m < m_max; ++m) {
    const FracPolynomial& phi = iterates.back();
    // Compose g(s, phi(s)) symbolically; x-powers by repeated multiplication.
    std::vector<FracPolynomial> xpow = {FracPolynomial(1.0)};
    int max_xp = 0;
    for (const auto& term : g.terms) max_xp = std::max(max_xp, term.x_power);
    for (int p = 1; p <= max_xp; ++p) {
      xpow.push_back(xpow.back() * phi);
      if (xpow.back().size() > kTermCap) {
        throw std::length_error("picard_iterate: term cap exceeded during composition");
      }
    }
    FracPolynomial composed;
    for (const auto& term : g.terms) {
      composed += term.coefficient *
                  (FracPolynomial::monomial(1.0, term.t_power) * xpow[term.x_power]);
      if (composed.size() > kTermCap) {
        throw std::length_error("picard_iterate: term cap exceeded during composition");
      }
    }
    FracPolynomial next = FracPolynomial(x0) + frac_integrate_poly(composed, k, alpha);
    if (next.size() > kTermCap) {
      throw std::length_error("picard_iterate: term cap exceeded");
    }
    iterates.push_back(std::move(next));
  }
  return iterates;
}

}  // namespace psigrad
