#include "ladder/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

double log_abs(const Rational& q) {
  long num_exp = 0;
  long den_exp = 0;
  const double num = mpz_get_d_2exp(&num_exp, q.get_num_mpz_t());
  const double den = mpz_get_d_2exp(&den_exp, q.get_den_mpz_t());
  return std::log(std::abs(num)) - std::log(den) + static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

// Carrier value with the e^{-x/2} factor left out.
double undressed(const Carrier& c, double x) {
  return c.sign() * std::sqrt(c.norm_squared().get_d()) * std::pow(x, 0.5 * c.half_power()) * c.core().evaluate(x);
}

void require_polynomial_class(const Carrier& c) {
  if (c.half_power() < 0 || c.core().min_exponent() < 0)
    throw DomainError("carrier is not in canonical polynomial form");
}

}  // namespace

QuadratureRule gauss_laguerre(int order) {
  if (order < 1 || order > kMaxQuadratureOrder)
    throw ConfigurationError("quadrature order must lie in [1, " + std::to_string(kMaxQuadratureOrder) + "], got " +
                             std::to_string(order));

  // order! L_order has integer coefficients, which keeps exact evaluation cheap.
  const LaurentPoly poly = laguerre_recurrence(order, 0) * factorial(order);
  const LaurentPoly slope = derivative(poly);
  const double n = order;

  QuadratureRule rule;
  rule.nodes.resize(order);
  double z = 0.0;
  for (int i = 0; i < order; ++i) {
    // Asymptotic starting values (alpha = 0), each seeded from the previous roots.
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }

    bool converged = false;
    for (int iteration = 0; iteration < 100; ++iteration) {
      const Rational at(z);
      const Rational value = poly.evaluate_exact(at);
      const Rational d = slope.evaluate_exact(at);
      if (d == 0) throw NumericalError("vanishing derivative during Laguerre root search");
      const double step = Rational(value / d).get_d();
      z -= step;
      if (std::abs(step) < 1e-15 * std::abs(z)) {
        converged = true;
        break;
      }
    }
    if (!converged || !(z > 0.0))
      throw NumericalError("Newton iteration for Gauss-Laguerre node " + std::to_string(i) + " of order " +
                           std::to_string(order) + " did not converge");
    if (i > 0 && !(z > rule.nodes[i - 1]))
      throw NumericalError("Gauss-Laguerre nodes of order " + std::to_string(order) + " are not strictly increasing");
    rule.nodes[i] = z;
  }

  // w_i = 1 / (x_i L'(x_i)^2), evaluated in the log domain.
  const double log_scale = log_abs(factorial(order));
  rule.weights.resize(order);
  rule.scaled_weights.resize(order);
  for (int i = 0; i < order; ++i) {
    const double x = rule.nodes[i];
    const double log_slope = log_abs(slope.evaluate_exact(Rational(x))) - log_scale;
    const double log_weight = -std::log(x) - 2.0 * log_slope;
    rule.weights[i] = std::exp(log_weight);
    rule.scaled_weights[i] = std::exp(log_weight + x);
  }
  return rule;
}

int required_order(const Carrier& a, const Carrier& b) {
  require_polynomial_class(a);
  require_polynomial_class(b);
  const int halves = a.half_power() + b.half_power();
  if (halves % 2 != 0) throw DomainError("non-polynomial integrand: the product contains sqrt(x)");
  const int degree = halves / 2 + a.core().max_exponent() + b.core().max_exponent();
  return degree / 2 + 1;
}

int recommended_order(const Carrier& a, const Carrier& b) {
  return std::min(2 * required_order(a, b), kMaxQuadratureOrder);
}

double inner_product(const Carrier& a, const Carrier& b, const QuadratureRule& rule) {
  const int needed = required_order(a, b);
  if (rule.order() < needed)
    throw ConfigurationError("quadrature order " + std::to_string(rule.order()) + " too low; required order " +
                             std::to_string(needed));
  const int power = (a.half_power() + b.half_power()) / 2;
  double sum = 0.0;
  for (int i = 0; i < rule.order(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i] * std::pow(x, power) * a.core().evaluate(x) * b.core().evaluate(x);
  }
  const double norm = std::sqrt(Rational(a.norm_squared() * b.norm_squared()).get_d());
  return a.sign() * b.sign() * norm * sum;
}

double weighted_inner_product(const LaurentPoly& p, const LaurentPoly& q, int alpha, const QuadratureRule& rule) {
  if (alpha < 0) throw DomainError("weight exponent alpha must be non-negative");
  if (p.is_zero() || q.is_zero()) return 0.0;
  if (p.min_exponent() < 0 || q.min_exponent() < 0) throw DomainError("weighted inner product needs polynomials");
  const int degree = alpha + p.max_exponent() + q.max_exponent();
  if (rule.order() < degree / 2 + 1)
    throw ConfigurationError("quadrature order " + std::to_string(rule.order()) + " too low; required order " +
                             std::to_string(degree / 2 + 1));
  double sum = 0.0;
  for (int i = 0; i < rule.order(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i] * std::pow(x, alpha) * p.evaluate(x) * q.evaluate(x);
  }
  return sum;
}

std::vector<Carrier> family(int alpha, int count) {
  std::vector<Carrier> out;
  out.reserve(count);
  const int first = std::max(0, -alpha);
  for (int k = 0; k < count; ++k) out.push_back(carrier_M_alpha(first + k, alpha));
  return out;
}

std::vector<double> projection_convergence(const Carrier& target, int family_alpha, int max_n,
                                           const QuadratureRule& rule) {
  if (max_n < 0) throw DomainError("max_n must be non-negative");
  const Carrier t = target.canonical();
  if ((t.half_power() - std::abs(family_alpha)) % 2 != 0)
    throw DomainError("target and family differ in half-power parity");

  const std::vector<Carrier> members = family(family_alpha, max_n + 1);
  const int needed = std::max({required_order(t, t), required_order(members.back(), members.back()),
                               required_order(t, members.back())});
  if (rule.order() < needed)
    throw ConfigurationError("quadrature order " + std::to_string(rule.order()) + " too low; required order " +
                             std::to_string(needed));

  std::vector<double> residual(rule.order());
  for (int i = 0; i < rule.order(); ++i) residual[i] = undressed(t, rule.nodes[i]);

  std::vector<double> norms;
  norms.reserve(members.size());
  for (const Carrier& m : members) {
    const double c = inner_product(m, t, rule);
    double sum = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
      residual[i] -= c * undressed(m, rule.nodes[i]);
      sum += rule.weights[i] * residual[i] * residual[i];
    }
    norms.push_back(std::sqrt(sum));
  }
  return norms;
}

}  // namespace ladder
