#include <doctest.h>

#include <cmath>

#include "ladder/errors.hpp"
#include "ladder/so32.hpp"

using namespace ladder;
using O = OperatorName;

namespace {

const StructureConstants& standard_constants() {
  static const StructureConstants sc = derive_structure_constants(default_sample_states());
  return sc;
}

double coefficient(const PairFit& f, O op) { return f.coefficients[*so32_basis_position(op)]; }

}  // namespace

TEST_SUITE("so32") {
  TEST_CASE("named brackets") {
    const auto& sc = standard_constants();
    const PairFit& kk = sc.fit(O::Kplus, O::Kminus);
    for (O op : kSo32Basis) CHECK(coefficient(kk, op) == doctest::Approx(op == O::K3 ? -2.0 : 0.0).scale(1.0));

    // R3 = K3 + J3
    const PairFit& rr = sc.fit(O::Rplus, O::Rminus);
    CHECK(coefficient(rr, O::K3) == doctest::Approx(-4.0));
    CHECK(coefficient(rr, O::J3) == doctest::Approx(-4.0));

    const PairFit& rs = sc.fit(O::Rplus, O::Splus);
    for (O op : kSo32Basis) CHECK(std::abs(coefficient(rs, op)) < 1e-12);
    CHECK(rs.residual < 1e-12);
  }

  TEST_CASE("exact structure constants for mixed pairs") {
    const auto& sc = standard_constants();
    // [J+, K+] = R+ and [J-, K+] = S+ follow from the composed definitions.
    CHECK(coefficient(sc.fit(O::Jplus, O::Kplus), O::Rplus) == doctest::Approx(1.0));
    CHECK(coefficient(sc.fit(O::Jminus, O::Kplus), O::Splus) == doctest::Approx(1.0));
    CHECK(coefficient(sc.fit(O::J3, O::Rplus), O::Rplus) == doctest::Approx(1.0));
    CHECK(coefficient(sc.fit(O::J3, O::Splus), O::Splus) == doctest::Approx(-1.0));
  }

  TEST_CASE("closure, antisymmetry and Jacobi") {
    const auto& sc = standard_constants();
    CHECK_FALSE(sc.residual_flag());
    CHECK(sc.max_residual() < 1e-9);
    CHECK(sc.antisymmetry_defect() < 1e-9);
    CHECK(sc.jacobi_defect() < 1e-9);
    // a+ and b+ do not close on so(3,2): their bracket with J+ leaves the span.
    CHECK(sc.fit(O::Aplus, O::Kminus).residual > 1e-3);
    CHECK_FALSE(sc.fit(O::Aplus, O::Kminus).in_so32);
  }

  TEST_CASE("R3 expands to K3 + J3") {
    const auto states = default_sample_states();
    const auto [v, residual] = expand_operator(O::R3, states);
    CHECK(residual < 1e-12);
    CHECK(v[*so32_basis_position(O::K3)] == doctest::Approx(1.0));
    CHECK(v[*so32_basis_position(O::J3)] == doctest::Approx(1.0));
  }

  TEST_CASE("Killing form") {
    const auto& sc = standard_constants();
    const KillingMatrix b = killing_form(sc);
    CHECK((b - b.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(b.determinant()) > 1.0);
    CHECK(su2_killing_proportionality_residual(sc) < 1e-10);
  }

  TEST_CASE("Killing Casimir is -5/4 on every state") {
    const auto& sc = standard_constants();
    double first = 0.0;
    for (BasisIndex idx : {BasisIndex(0, 0), BasisIndex(2, 4), BasisIndex(5, 3), BasisIndex(1, 0), BasisIndex(7, 7)}) {
      const KillingCasimir kc = killing_casimir(sc, idx);
      if (idx == BasisIndex(0, 0)) first = kc.eigenvalue;
      CHECK(std::abs(kc.eigenvalue - first) < 1e-10);
      CHECK(kc.eigenvalue == doctest::Approx(-1.25).epsilon(1e-8));
    }
  }

  TEST_CASE("configuration errors") {
    const auto states = default_sample_states();
    CHECK_THROWS_AS(derive_structure_constants(std::span(states).first(11)), ConfigurationError);
    // Twelve states on the boundary n = 0 never exercise a-type lowering: the design loses rank.
    std::vector<BasisIndex> thin;
    for (int p = 0; p < 12; ++p) thin.emplace_back(0, p);
    CHECK_THROWS_AS(derive_structure_constants(thin), ConfigurationError);
  }

  TEST_CASE("a sign fault is reported as a closure failure") {
    const auto states = default_sample_states();
    const Realization faulty = Realization::with_sign_fault(O::Jplus, BasisIndex(3, 4));
    const StructureConstants sc = derive_structure_constants(states, faulty);
    CHECK(sc.residual_flag());
    CHECK_THROWS_AS(killing_casimir(sc, BasisIndex(0, 0), faulty), ClosureError);
  }
}
