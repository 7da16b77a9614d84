#pragma once

#include <vector>

namespace psigrad {

/// Sparse polynomial in t with real (possibly fractional) exponents, closed
/// under the monomial mapping r -> r + alpha*k of the fractional integral for
/// psi = t^k. Terms are kept sorted by exponent with like terms merged.
class FracPolynomial {
 public:
  struct Term {
    double exponent;
    double coefficient;
  };

  FracPolynomial() = default;
  explicit FracPolynomial(double constant);
  explicit FracPolynomial(std::vector<Term> terms);

  static FracPolynomial monomial(double coefficient, double exponent);

  const std::vector<Term>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double max_exponent() const { return terms_.empty() ? 0.0 : terms_.back().exponent; }

  /// Value at t; the constant term contributes its coefficient at t = 0.
  double eval(double t) const;

  FracPolynomial& operator+=(const FracPolynomial& rhs);
  friend FracPolynomial operator+(FracPolynomial a, const FracPolynomial& b) {
    a += b;
    return a;
  }
  friend FracPolynomial operator*(const FracPolynomial& a, const FracPolynomial& b);
  friend FracPolynomial operator*(double s, const FracPolynomial& p);

 private:
  void normalize();
  std::vector<Term> terms_;  // sorted by exponent, distinct
};

/// Fractional integral of a polynomial for psi = t^k from 0:
/// each monomial t^r maps to Gamma(r/k+1)/Gamma(r/k+alpha+1) * t^{r+alpha k}.
FracPolynomial frac_integrate_poly(const FracPolynomial& p, double k, double alpha);

/// Bivariate polynomial right-hand side g(t, x) = sum c * t^u * x^v.
struct PolyRhs {
  struct Term {
    double coefficient;
    int t_power;
    int x_power;
  };
  std::vector<Term> terms;

  double eval(double t, double x) const;
};

/// Picard iteration for the scalar IVP with psi = t^k: phi_0 = x0 and
/// phi_{m+1} = x0 + I^alpha[ g(s, phi_m(s)) ]. Returns phi_0..phi_{m_max}.
/// Throws std::length_error when an iterate exceeds 2000 terms.
std::vector<FracPolynomial> picard_iterate(const PolyRhs& g, double x0, double k, double alpha,
                                           int m_max);

}  // namespace psigrad
