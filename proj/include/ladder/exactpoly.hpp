#pragma once

// Exact Laurent polynomials over Q and associated Laguerre polynomials with
// integer alpha (including the negative-alpha branch).

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>

namespace ladder {

using Rational = mpq_class;

Rational factorial(int k);

/// Finite Laurent polynomial sum_k c_k x^k with exact rational coefficients.
/// Zero coefficients are never stored, so the zero polynomial is the empty map.
class LaurentPoly {
 public:
  using Terms = std::map<int, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(Terms terms);

  static LaurentPoly constant(const Rational& c);
  static LaurentPoly monomial(const Rational& c, int exponent);
  static LaurentPoly x();

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(int exponent) const;

  // Both throw DomainError on the zero polynomial.
  int min_exponent() const;
  int max_exponent() const;

  /// Multiplies by x^k.
  LaurentPoly shifted(int k) const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const Rational& s);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
  LaurentPoly operator-() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Exact value at a rational point. x = 0 is rejected when negative powers are present.
  Rational evaluate_exact(const Rational& x) const;

  /// Evaluates exactly at the (exactly representable) double x and rounds once at the end.
  double evaluate(double x) const;

  /// Ascending powers, "c*x^k" terms joined by " + "; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void add_term(int exponent, const Rational& c);

  Terms terms_;
};

LaurentPoly derivative(const LaurentPoly& p);

/// Label pair (n, alpha) of L_n^(alpha). Valid when n >= 0 and n + alpha >= 0.
struct LaguerreIndex {
  int n = 0;
  int alpha = 0;

  LaguerreIndex() = default;
  LaguerreIndex(int n_, int alpha_);
};

/// Standard three-term recurrence run at fixed integer alpha. No validity
/// restriction on alpha; used both as builder (alpha >= 0) and as oracle.
LaurentPoly laguerre_recurrence(int n, int alpha);

/// L_n^(alpha). For alpha < 0 this is (n-a)!/n! (-x)^a L_{n-a}^(a) with a = -alpha.
LaurentPoly laguerre(LaguerreIndex idx);

/// x p'' + (1 + alpha - x) p' + n p applied to L_n^(alpha).
LaurentPoly de_residual(LaguerreIndex idx);

struct LadderResiduals {
  LaurentPoly raising;   // (-d/dx + 1) L_n^(a) - L_n^(a+1)
  LaurentPoly lowering;  // (x d/dx + a) L_n^(a) - (n + a) L_n^(a-1)
};

/// Throws DomainError when n + alpha - 1 < 0 (lowered index invalid).
LadderResiduals alpha_ladder_check(LaguerreIndex idx);

}  // namespace ladder
