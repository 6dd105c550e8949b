#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ladder/errors.hpp"
#include "ladder/quadrature.hpp"

using namespace ladder;

namespace {

// Golub-Welsch: eigen-decomposition of the Jacobi matrix of the Laguerre weight.
std::pair<Eigen::VectorXd, Eigen::VectorXd> golub_welsch(int order) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    jacobi(i, i) = 2.0 * i + 1.0;
    if (i + 1 < order) jacobi(i, i + 1) = jacobi(i + 1, i) = i + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  const Eigen::VectorXd first = solver.eigenvectors().row(0).transpose();
  return {solver.eigenvalues(), first.cwiseAbs2()};
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("order 1 and order 2 in closed form") {
    const QuadratureRule one = gauss_laguerre(1);
    CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    const QuadratureRule two = gauss_laguerre(2);
    const double s = std::sqrt(2.0);
    CHECK(two.nodes[0] == doctest::Approx(2.0 - s).epsilon(1e-15));
    CHECK(two.nodes[1] == doctest::Approx(2.0 + s).epsilon(1e-15));
    CHECK(two.weights[0] == doctest::Approx((2.0 + s) / 4.0).epsilon(1e-15));
    CHECK(two.weights[1] == doctest::Approx((2.0 - s) / 4.0).epsilon(1e-15));
  }

  TEST_CASE("matches Golub-Welsch") {
    for (int order : {3, 10, 25, 40}) {
      const QuadratureRule rule = gauss_laguerre(order);
      const auto [nodes, weights] = golub_welsch(order);
      for (int i = 0; i < order; ++i) {
        CHECK(rule.nodes[i] == doctest::Approx(nodes(i)).epsilon(1e-11));
        if (weights(i) > 1e-200) CHECK(rule.weights[i] == doctest::Approx(weights(i)).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("weight sums and scaled weights") {
    for (int order : {1, 5, 20, 64, 120, 200}) {
      const QuadratureRule rule = gauss_laguerre(order);
      double sum = 0.0;
      for (double w : rule.weights) sum += w;
      CHECK(std::abs(sum - 1.0) < 1e-13);
      for (int i = 0; i < order; ++i) {
        CHECK(rule.scaled_weights[i] > 0.0);
        CHECK(std::isfinite(rule.scaled_weights[i]));
        if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      }
    }
  }

  TEST_CASE("order out of range") {
    CHECK_THROWS_AS(gauss_laguerre(0), ConfigurationError);
    CHECK_THROWS_AS(gauss_laguerre(kMaxQuadratureOrder + 1), ConfigurationError);
  }

  TEST_CASE("inner product examples") {
    const QuadratureRule rule = gauss_laguerre(32);
    CHECK(std::abs(inner_product(carrier_M_alpha(3, 2), carrier_M_alpha(5, 2), rule)) < 1e-12);
    CHECK(std::abs(inner_product(carrier_M_alpha(3, 2), carrier_M_alpha(3, 2), rule) - 1.0) < 1e-12);
    const LaurentPoly l21 = laguerre(LaguerreIndex(2, 1));
    CHECK(weighted_inner_product(l21, l21, 1, rule) == doctest::Approx(3.0).epsilon(1e-13));
  }

  TEST_CASE("required order and refusals") {
    const Carrier a = carrier_M_alpha(3, 2);
    CHECK(required_order(a, a) == 5);
    CHECK(recommended_order(a, a) == 10);
    const QuadratureRule low = gauss_laguerre(4);
    CHECK_THROWS_WITH_AS(inner_product(a, a, low), doctest::Contains("required order 5"), ConfigurationError);
    CHECK_NOTHROW(inner_product(a, a, gauss_laguerre(5)));
    CHECK_THROWS_WITH_AS(inner_product(carrier_M_alpha(0, 1), carrier_M_alpha(0, 0), gauss_laguerre(8)),
                         doctest::Contains("non-polynomial integrand"), DomainError);
  }

  TEST_CASE("minimal order is already exact") {
    for (int n = 0; n <= 12; ++n)
      for (int m = 0; m <= 12; ++m) {
        const Carrier a = carrier_M_alpha(n, 1);
        const Carrier b = carrier_M_alpha(m, 1);
        const double value = inner_product(a, b, gauss_laguerre(required_order(a, b)));
        CHECK(std::abs(value - (n == m ? 1.0 : 0.0)) < 1e-12);
      }
  }

  TEST_CASE("negative alpha family") {
    const auto members = family(-3, 6);
    CHECK(members.front() == carrier_M_alpha(3, -3));
    const QuadratureRule rule = gauss_laguerre(32);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t k = 0; k < members.size(); ++k)
        CHECK(std::abs(inner_product(members[i], members[k], rule) - (i == k ? 1.0 : 0.0)) < 1e-11);
  }

  TEST_CASE("projection convergence examples") {
    const QuadratureRule rule = gauss_laguerre(64);
    const auto norms = projection_convergence(carrier_M_alpha(4, 2), 2, 8, rule);
    for (std::size_t k = 0; k < 4; ++k) CHECK(norms[k] > 1e-3);
    for (std::size_t k = 4; k < norms.size(); ++k) CHECK(norms[k] <= 1e-12);

    const Carrier poly(1, Rational(1, 38), 2, LaurentPoly::constant(1) + LaurentPoly::x());
    const auto poly_norms = projection_convergence(poly, 2, 6, rule);
    CHECK(poly_norms[0] > 1e-3);
    for (std::size_t k = 1; k < poly_norms.size(); ++k) CHECK(poly_norms[k] <= 1e-12);

    // A target outside every finite span converges but never reaches zero.
    const Carrier outside(1, Rational(1), 2, LaurentPoly::monomial(Rational(1), 12));
    const auto tail = projection_convergence(outside, 2, 10, rule);
    for (std::size_t k = 1; k < tail.size(); ++k) CHECK(tail[k] <= tail[k - 1] + 1e-14);
    CHECK(tail.back() > 1e-6);

    CHECK_THROWS_AS(projection_convergence(carrier_M_alpha(2, 1), 2, 4, rule), DomainError);
  }
}
