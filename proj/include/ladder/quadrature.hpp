#pragma once

#include <vector>

#include "ladder/basis.hpp"

namespace ladder {

/// Gauss-Laguerre rule: integral_0^inf e^-x g(x) dx ~ sum w_i g(x_i).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// w_i e^{x_i}, for integrands that already contain their decay; stays
  /// representable where the plain weights underflow (large orders).
  std::vector<double> scaled_weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

inline constexpr int kMaxQuadratureOrder = 200;

/// Nodes are the roots of L_order^(0), found by Newton iteration on the exact
/// polynomial. Throws ConfigurationError outside [1, 200], NumericalError on
/// non-convergence.
QuadratureRule gauss_laguerre(int order);

/// Smallest rule order integrating a(x) b(x) exactly: floor(D/2) + 1 with D the
/// degree of the polynomial left after extracting e^-x.
int required_order(const Carrier& a, const Carrier& b);

/// Order picked when the caller leaves it open: twice the exactness requirement.
int recommended_order(const Carrier& a, const Carrier& b);

/// integral_0^inf a(x) b(x) dx. Refuses integrands containing sqrt(x) (odd total
/// half power) and rules below required_order.
double inner_product(const Carrier& a, const Carrier& b, const QuadratureRule& rule);

/// integral_0^inf x^alpha e^-x p(x) q(x) dx for polynomials p, q and alpha >= 0.
double weighted_inner_product(const LaurentPoly& p, const LaurentPoly& q, int alpha, const QuadratureRule& rule);

/// Members M_n^(alpha) of the fixed-alpha family, n = max(0, -alpha) + k for k = 0..count-1.
std::vector<Carrier> family(int alpha, int count);

/// L2 norms of target minus its projection onto the first N+1 family members,
/// for N = 0..max_n. The residual function is formed pointwise at the nodes.
std::vector<double> projection_convergence(const Carrier& target, int family_alpha, int max_n,
                                           const QuadratureRule& rule);

}  // namespace ladder
