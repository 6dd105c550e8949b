#pragma once

// Normalized carrier functions M_n^(alpha), scriptM_{n,p} and scriptL_j^m held in
// exact symbolic form, with floating evaluation and analytic derivatives.

#include <compare>
#include <optional>

#include "ladder/exactpoly.hpp"

namespace ladder {

/// Label pair (n, p) with p = n + alpha; both non-negative.
struct BasisIndex {
  int n = 0;
  int p = 0;

  BasisIndex() = default;
  BasisIndex(int n_, int p_);

  int alpha() const { return p - n; }
  Rational j() const { return Rational(n + p, 2); }
  Rational m() const { return Rational(n - p, 2); }

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

/// sign * sqrt(norm_squared) * x^(half_power/2) * exp(-x/2) * core(x).
///
/// Canonical form: the lowest power of the core is moved into half_power and the
/// core is rescaled so its leading coefficient is (-1)^d / d! (the Laguerre
/// convention), the rescaling being absorbed into norm_squared and sign. Two
/// carriers describe the same function up to sign iff their canonical forms
/// agree in everything but the sign.
class Carrier {
 public:
  Carrier(int sign, Rational norm_squared, int half_power, LaurentPoly core,
          std::optional<BasisIndex> label = std::nullopt);

  int sign() const { return sign_; }
  const Rational& norm_squared() const { return norm_squared_; }
  int half_power() const { return half_power_; }
  const LaurentPoly& core() const { return core_; }
  /// (n, p) the carrier was built from, if any; the differential operators read N and P from it.
  const std::optional<BasisIndex>& label() const { return label_; }

  Carrier canonical() const;
  bool is_canonical() const;

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return a.sign_ == b.sign_ && a.norm_squared_ == b.norm_squared_ && a.half_power_ == b.half_power_ &&
           a.core_ == b.core_;
  }

 private:
  int sign_;
  Rational norm_squared_;
  int half_power_;
  LaurentPoly core_;
  std::optional<BasisIndex> label_;
};

/// +1 / -1 if the two carriers are the same function up to that sign, 0 otherwise.
int relative_sign(const Carrier& a, const Carrier& b);

/// scriptM_{n,p} = M_n^(p-n), canonical.
Carrier carrier_M(BasisIndex idx);

/// M_n^(alpha); requires n >= 0 and n + alpha >= 0.
Carrier carrier_M_alpha(int n, int alpha);

/// scriptL_j^m = scriptM_{j+m, j-m}; j +- m must be non-negative integers.
Carrier carrier_L(const Rational& j, const Rational& m);

/// Symbolic derivative. Same dressing, core (k/2) x^-1 c + c' - c/2; not canonical in general.
Carrier differentiate(const Carrier& c);

double eval(const Carrier& c, double x);

/// order 1 or 2; x > 0.
double eval_derivative(const Carrier& c, double x, int order);

}  // namespace ladder
