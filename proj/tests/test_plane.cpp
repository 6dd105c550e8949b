#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ladder/errors.hpp"
#include "ladder/plane.hpp"
#include "oracles.hpp"

using namespace ladder;

namespace {

const PolarGrid& grid64() {
  static const PolarGrid grid(64, 64);
  return grid;
}

Field2D sample(const PolarGrid& grid, const std::vector<std::pair<ModeIndex, Complex>>& modes) {
  Field2D field(grid);
  for (int k = 0; k < grid.radial_order(); ++k)
    for (int q = 0; q < grid.angular_count(); ++q)
      for (const auto& [idx, c] : modes)
        field.at(k, q) += c * eval_Z(idx, grid.radial_nodes()[k], grid.angular_nodes()[q]);
  return field;
}

}  // namespace

TEST_SUITE("plane") {
  TEST_CASE("eval_Z examples") {
    for (double r : {0.0, 0.5, 2.0})
      CHECK(std::abs(eval_Z(ModeIndex(0, 0), r, 0.3) - std::exp(-0.5 * r * r)) < 1e-15);
    const Complex a = eval_Z(ModeIndex(1, 1), 1.2, 0.0);
    const Complex b = eval_Z(ModeIndex(1, 1), 1.2, std::numbers::pi / 2);
    CHECK(std::abs(b - Complex(0.0, 1.0) * a) < 1e-15);
    CHECK(std::abs(eval_Z(ModeIndex(1, -1), 0.8, 0.0) - eval_Z(ModeIndex(1, 1), 0.8, 0.0)) < 1e-15);
  }

  TEST_CASE("eval_Z agrees with std::assoc_laguerre") {
    for (int j = 0; j <= 6; ++j)
      for (int m = -j; m <= j; ++m)
        for (double r : {0.3, 1.1, 2.5}) {
          const double radial = oracle::script_m(j + m, j - m, r * r);
          const Complex expected = std::polar(1.0, m * 0.7) * radial;
          CHECK(std::abs(eval_Z(ModeIndex(j, m), r, 0.7) - expected) < 1e-12);
        }
  }

  TEST_CASE("index and domain validation") {
    CHECK_THROWS_AS(ModeIndex(1, 2), DomainError);
    CHECK_THROWS_AS(ModeIndex(-1, 0), DomainError);
    CHECK_THROWS_AS(eval_Z(ModeIndex(1, 0), 1.0, std::numbers::pi), DomainError);
    CHECK_NOTHROW(eval_Z(ModeIndex(1, 0), 1.0, -std::numbers::pi));
    CHECK_THROWS_AS(radial_de_residual(ModeIndex(0, 0), 0.0), DomainError);
    CHECK_THROWS_AS(PolarGrid(16, 12), ConfigurationError);
  }

  TEST_CASE("radial DE examples") {
    CHECK(radial_de_residual(ModeIndex(0, 0), 1.0) < 1e-10);
    for (double r : {0.5, 1.0, 2.0}) CHECK(radial_de_residual(ModeIndex(3, 2), r) < 1e-10);
  }

  TEST_CASE("inner product examples") {
    const PolarGrid& grid = grid64();
    CHECK(std::abs(inner_product_2d(ModeIndex(2, 1), ModeIndex(2, 1), grid) - 1.0) < 1e-11);
    CHECK(std::abs(inner_product_2d(ModeIndex(2, 1), ModeIndex(3, 1), grid)) < 1e-11);
    CHECK(std::abs(inner_product_2d(ModeIndex(2, 1), ModeIndex(2, -1), grid)) < 1e-11);
  }

  TEST_CASE("insufficient grid") {
    const PolarGrid small(4, 8);
    CHECK(small.max_jmax() == 3);
    CHECK_THROWS_WITH_AS(small.require_jmax(4), doctest::Contains("required order 5"), ConfigurationError);
    CHECK_THROWS_AS(PolarGrid(16, 4).require_jmax(2), ConfigurationError);
    CHECK_THROWS_AS(decompose(Field2D(small), 4), ConfigurationError);
  }

  TEST_CASE("decompose examples") {
    const PolarGrid& grid = grid64();
    const ModeCoefficients single = decompose(sample(grid, {{ModeIndex(2, 1), 1.0}}), 6);
    for (const auto& [idx, c] : single.amplitudes)
      CHECK(std::abs(c - (idx == ModeIndex(2, 1) ? 1.0 : 0.0)) < 1e-10);

    const ModeCoefficients pair = decompose(sample(grid, {{ModeIndex(1, 0), 1.0}, {ModeIndex(3, -2), 2.0}}), 4);
    for (const auto& [idx, c] : pair.amplitudes) {
      const double expected = idx == ModeIndex(1, 0) ? 1.0 : idx == ModeIndex(3, -2) ? 2.0 : 0.0;
      CHECK(std::abs(c - expected) < 1e-10);
    }

    const ModeCoefficients truncated = decompose(sample(grid, {{ModeIndex(5, 0), 1.0}}), 3);
    for (const auto& [idx, c] : truncated.amplitudes) CHECK(std::abs(c) < 1e-10);
  }

  TEST_CASE("reconstruct examples") {
    const PolarGrid& grid = grid64();
    ModeCoefficients ground;
    ground.amplitudes.emplace(ModeIndex(0, 0), 1.0);
    const Field2D field = reconstruct(ground, grid);
    for (int k = 0; k < grid.radial_order(); k += 7)
      CHECK(std::abs(field.at(k, 3) - std::exp(-0.5 * grid.x_nodes()[k])) < 1e-14);

    const Field2D empty = reconstruct(ModeCoefficients{}, grid);
    for (const Complex& v : empty.samples) CHECK(v == Complex(0.0, 0.0));
  }

  TEST_CASE("round trip on random coefficients") {
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> dist;
    const PolarGrid& grid = grid64();
    for (int trial = 0; trial < 3; ++trial) {
      ModeCoefficients c;
      c.jmax = 6;
      for (int j = 0; j <= 6; ++j)
        for (int m = -j; m <= j; ++m) c.amplitudes.emplace(ModeIndex(j, m), Complex(dist(rng), dist(rng)));
      const ModeCoefficients back = decompose(reconstruct(c, grid), 6);
      for (const auto& [idx, v] : c.amplitudes) CHECK(std::abs(back.amplitudes.at(idx) - v) < 1e-10);
    }
  }

  TEST_CASE("mode operator examples") {
    ExactModeCoefficients c10;
    c10.amplitudes.emplace(ModeIndex(1, 0), Surd(1));
    const auto raised = apply_mode_operator(ModeOperator::Jplus, c10);
    REQUIRE(raised.amplitudes.size() == 1);
    CHECK(raised.amplitudes.at(ModeIndex(1, 1)) == Surd::sqrt_of(Rational(2)));

    ExactModeCoefficients c11;
    c11.amplitudes.emplace(ModeIndex(1, 1), Surd(1));
    CHECK(apply_mode_operator(ModeOperator::Jplus, c11).amplitudes.empty());

    ExactModeCoefficients c21;
    c21.amplitudes.emplace(ModeIndex(2, 1), Surd(1));
    const auto pm = apply_mode_operator(ModeOperator::Jplus, apply_mode_operator(ModeOperator::Jminus, c21));
    const auto mp = apply_mode_operator(ModeOperator::Jminus, apply_mode_operator(ModeOperator::Jplus, c21));
    CHECK(pm.amplitudes.at(ModeIndex(2, 1)) - mp.amplitudes.at(ModeIndex(2, 1)) == Surd(2));

    ModeCoefficients complex_c;
    complex_c.amplitudes.emplace(ModeIndex(3, -1), Complex(0.0, 2.0));
    const auto j3 = apply_mode_operator(ModeOperator::J3, complex_c);
    CHECK(j3.amplitudes.at(ModeIndex(3, -1)) == Complex(0.0, -2.0));
  }
}
