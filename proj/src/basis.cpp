#include "ladder/basis.hpp"

#include <cmath>

#include "ladder/errors.hpp"

namespace ladder {

BasisIndex::BasisIndex(int n_, int p_) : n(n_), p(p_) {
  if (n < 0 || p < 0) throw DomainError("basis labels n and p must be non-negative");
}

Carrier::Carrier(int sign, Rational norm_squared, int half_power, LaurentPoly core,
                 std::optional<BasisIndex> label)
    : sign_(sign),
      norm_squared_(std::move(norm_squared)),
      half_power_(half_power),
      core_(std::move(core)),
      label_(label) {
  if (sign_ != 1 && sign_ != -1) throw DomainError("carrier sign must be +1 or -1");
  if (norm_squared_ <= 0) throw DomainError("carrier normalization must be positive");
  if (core_.is_zero()) throw DomainError("carrier core must be non-zero");
}

namespace {

Rational laguerre_leading(int degree) {
  Rational lead = 1 / factorial(degree);
  return degree % 2 == 0 ? lead : Rational(-lead);
}

}  // namespace

Carrier Carrier::canonical() const {
  const int low = core_.min_exponent();
  LaurentPoly core = core_.shifted(-low);
  const int half_power = half_power_ + 2 * low;

  const int degree = core.max_exponent();
  const Rational scale = laguerre_leading(degree) / core.coefficient(degree);
  core *= scale;
  // f = s sqrt(N) c = s sqrt(N) (scale c) / scale
  Rational norm = norm_squared_ / (scale * scale);
  const int sign = scale < 0 ? -sign_ : sign_;
  return Carrier(sign, std::move(norm), half_power, std::move(core), label_);
}

bool Carrier::is_canonical() const {
  if (half_power_ < 0 || core_.min_exponent() != 0) return false;
  const int degree = core_.max_exponent();
  return core_.coefficient(degree) == laguerre_leading(degree);
}

int relative_sign(const Carrier& a, const Carrier& b) {
  const Carrier ca = a.canonical();
  const Carrier cb = b.canonical();
  if (ca.norm_squared() != cb.norm_squared() || ca.half_power() != cb.half_power() || !(ca.core() == cb.core()))
    return 0;
  return ca.sign() * cb.sign();
}

Carrier carrier_M(BasisIndex idx) {
  const int alpha = idx.alpha();
  // sqrt(n!/(n+alpha)!) x^(alpha/2) e^(-x/2) L_n^(alpha); for alpha < 0 the core
  // carries (-x)^|alpha| and canonicalization moves it into the half power.
  Carrier literal(1, factorial(idx.n) / factorial(idx.p), alpha, laguerre(LaguerreIndex(idx.n, alpha)), idx);
  return literal.canonical();
}

Carrier carrier_M_alpha(int n, int alpha) {
  if (n < 0) throw DomainError("n must be non-negative");
  if (n + alpha < 0) throw DomainError("n + alpha must be non-negative");
  return carrier_M(BasisIndex(n, n + alpha));
}

Carrier carrier_L(const Rational& j, const Rational& m) {
  const Rational n = j + m;
  const Rational p = j - m;
  if (n.get_den() != 1 || p.get_den() != 1) throw DomainError("j + m and j - m must be integers");
  if (n < 0 || p < 0) throw DomainError("j + m and j - m must be non-negative");
  return carrier_M(BasisIndex(static_cast<int>(n.get_num().get_si()), static_cast<int>(p.get_num().get_si())));
}

Carrier differentiate(const Carrier& c) {
  const LaurentPoly& core = c.core();
  LaurentPoly next = core.shifted(-1) * Rational(c.half_power(), 2);
  next += derivative(core);
  next -= core * Rational(1, 2);
  return Carrier(c.sign(), c.norm_squared(), c.half_power(), std::move(next), c.label());
}

double eval(const Carrier& c, double x) {
  if (!(x >= 0.0)) throw DomainError("carriers are evaluated on x >= 0");
  const double scale = c.sign() * std::sqrt(c.norm_squared().get_d());
  if (x == 0.0) {
    if (c.half_power() > 0) return 0.0;
    if (c.half_power() < 0) throw DomainError("carrier with negative half power is singular at x = 0");
    return scale * c.core().evaluate(0.0);
  }
  return scale * std::pow(x, 0.5 * c.half_power()) * std::exp(-0.5 * x) * c.core().evaluate(x);
}

double eval_derivative(const Carrier& c, double x, int order) {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  if (!(x > 0.0)) throw DomainError("derivatives are evaluated on x > 0");
  Carrier d = differentiate(c);
  if (order == 2) d = differentiate(d);
  return eval(d, x);
}

}  // namespace ladder
