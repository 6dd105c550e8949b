#pragma once

// Exact real numbers of the form sum_i q_i sqrt(r_i), q_i rational and r_i
// distinct square-free positive integers. Closed under +, -, * and enough to
// carry ladder matrix elements sqrt((n+1)p) etc. without rounding.

#include <gmpxx.h>

#include <map>
#include <string>

#include "ladder/exactpoly.hpp"

namespace ladder {

class Surd {
 public:
  using Terms = std::map<mpz_class, Rational>;  // square-free radicand -> coefficient

  Surd() = default;
  Surd(const Rational& q);  // NOLINT: rationals embed implicitly
  Surd(int q) : Surd(Rational(q)) {}  // NOLINT

  /// sqrt(q) for q >= 0.
  static Surd sqrt_of(const Rational& q);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational value; throws ConsistencyError if an irrational part remains.
  Rational rational_value() const;
  double to_double() const;
  const Terms& terms() const { return terms_; }
  std::string to_string() const;

  Surd& operator+=(const Surd& rhs);
  Surd& operator-=(const Surd& rhs);
  Surd& operator*=(const Surd& rhs);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  Surd operator-() const;
  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const mpz_class& radicand, const Rational& c);

  Terms terms_;
};

/// Writes n = s^2 * r with r square-free; returns {s, r}. n > 0.
std::pair<mpz_class, mpz_class> split_square(const mpz_class& n);

}  // namespace ladder
