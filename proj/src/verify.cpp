#include "ladder/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <thread>

#include "ladder/errors.hpp"
#include "ladder/plane.hpp"
#include "ladder/quadrature.hpp"
#include "ladder/so32.hpp"

namespace ladder {

namespace {

using json = nlohmann::json;

std::string label_text(int n, int p) { return "(" + std::to_string(n) + "," + std::to_string(p) + ")"; }

double max_abs_coefficient(const LaurentPoly& p) {
  double worst = 0.0;
  for (const auto& [e, c] : p.terms()) worst = std::max(worst, std::abs(c.get_d()));
  return worst;
}

double max_abs_difference(const ExactLabelVector& a, const ExactLabelVector& b) {
  double worst = 0.0;
  const ExactLabelVector diff = a - b;
  for (const auto& [idx, c] : diff.terms()) worst = std::max(worst, std::abs(c.to_double()));
  return worst;
}

// Accumulates one named check. Exact checks pass only when every case is an
// identity; float checks when the largest residual stays below the tolerance.
class Tally {
 public:
  Tally(std::string name, std::string mode, double tolerance) {
    result_.name = std::move(name);
    result_.mode = std::move(mode);
    result_.tolerance = tolerance;
  }

  void exact(bool holds, double residual, const std::string& where) {
    ++result_.cases;
    result_.max_residual = std::max(result_.max_residual, residual);
    if (!holds) fail(where);
  }

  void measure(double residual, const std::string& where) {
    ++result_.cases;
    if (std::isnan(residual) || residual > result_.max_residual) result_.max_residual = residual;
    if (!(residual < result_.tolerance)) fail(where);
  }

  void error(const std::exception& e) {
    result_.pass = false;
    result_.details["error"] = e.what();
  }

  json& details() { return result_.details; }

  CheckResult finish() { return std::move(result_); }

 private:
  void fail(const std::string& where) {
    if (result_.pass) result_.details["first_failure"] = where;
    result_.pass = false;
  }

  CheckResult result_;
};

// Runs body against a fresh Tally; exceptions turn into a failed check.
CheckResult run_check(const std::string& name, const std::string& mode, double tolerance,
                      const std::function<void(Tally&)>& body) {
  Tally tally(name, mode, tolerance);
  try {
    body(tally);
  } catch (const std::exception& e) {
    tally.error(e);
  }
  return tally.finish();
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return out;
}

// ---------------------------------------------------------------------------
// exact: Laguerre polynomials and basis symmetry

SuiteReport exact_suite(const VerifyOptions& o) {
  SuiteReport report{Suite::Exact, {}};
  const int nmax = o.nmax;

  report.checks.push_back(run_check("laguerre.de_residual", "exact", 0.0, [&](Tally& t) {
    for (int n = 0; n <= nmax; ++n)
      for (int alpha = -n; alpha <= 10; ++alpha) {
        const LaurentPoly r = de_residual(LaguerreIndex(n, alpha));
        t.exact(r.is_zero(), max_abs_coefficient(r), "n,alpha=" + label_text(n, alpha));
      }
  }));

  std::vector<CheckResult> ladder_checks;
  Tally raising("laguerre.alpha_raising", "exact", 0.0);
  Tally lowering("laguerre.alpha_lowering", "exact", 0.0);
  try {
    for (int n = 0; n <= nmax; ++n)
      for (int alpha = 1 - n; alpha <= 10; ++alpha) {
        const auto r = alpha_ladder_check(LaguerreIndex(n, alpha));
        raising.exact(r.raising.is_zero(), max_abs_coefficient(r.raising), "n,alpha=" + label_text(n, alpha));
        lowering.exact(r.lowering.is_zero(), max_abs_coefficient(r.lowering), "n,alpha=" + label_text(n, alpha));
      }
  } catch (const std::exception& e) {
    raising.error(e);
    lowering.error(e);
  }
  report.checks.push_back(raising.finish());
  report.checks.push_back(lowering.finish());

  report.checks.push_back(run_check("laguerre.negative_alpha_vs_recurrence", "exact", 0.0, [&](Tally& t) {
    for (int n = 1; n <= std::min(nmax, 20); ++n)
      for (int a = 1; a <= n; ++a) {
        const LaurentPoly diff = laguerre(LaguerreIndex(n, -a)) - laguerre_recurrence(n, -a);
        t.exact(diff.is_zero(), max_abs_coefficient(diff), "n,alpha=" + label_text(n, -a));
      }
  }));

  report.checks.push_back(run_check("laguerre.three_term_recurrence", "exact", 0.0, [&](Tally& t) {
    for (int n = 1; n < nmax; ++n)
      for (int alpha = 1 - n; alpha <= 10; ++alpha) {
        LaurentPoly r = laguerre(LaguerreIndex(n + 1, alpha)) * Rational(n + 1);
        r -= (LaurentPoly::constant(2 * n + 1 + alpha) - LaurentPoly::x()) * laguerre(LaguerreIndex(n, alpha));
        r += laguerre(LaguerreIndex(n - 1, alpha)) * Rational(n + alpha);
        t.exact(r.is_zero(), max_abs_coefficient(r), "n,alpha=" + label_text(n, alpha));
      }
  }));

  report.checks.push_back(run_check("basis.interchange_symmetry", "exact", 0.0, [&](Tally& t) {
    for (int n = 0; n <= nmax; ++n)
      for (int p = 0; p <= nmax; ++p) {
        const int expected = (p - n) % 2 == 0 ? 1 : -1;
        const int sign = relative_sign(carrier_M(BasisIndex(n, p)), carrier_M(BasisIndex(p, n)));
        t.exact(sign == expected, sign == expected ? 0.0 : 1.0, "n,p=" + label_text(n, p));
      }
  }));

  report.checks.push_back(run_check("basis.canonical_form", "exact", 0.0, [&](Tally& t) {
    for (int n = 0; n <= nmax; ++n)
      for (int p = 0; p <= nmax; ++p) {
        const Carrier c = carrier_M(BasisIndex(n, p));
        const bool ok = c.is_canonical() && c.half_power() == std::abs(p - n);
        t.exact(ok, ok ? 0.0 : 1.0, "n,p=" + label_text(n, p));
      }
  }));
  return report;
}

// ---------------------------------------------------------------------------
// algebra: label-space identities, Casimirs, label vs differential forms

struct Bracket {
  std::string name;
  OperatorName a;
  OperatorName b;
  // Right-hand side as sum of coefficient * op, with nullopt meaning the identity.
  std::vector<std::pair<int, std::optional<OperatorName>>> rhs;
};

std::vector<Bracket> brackets() {
  using O = OperatorName;
  return {
      {"h1.[b-,b+]=I", O::Bminus, O::Bplus, {{1, std::nullopt}}},
      {"h1.[a-,a+]=I", O::Aminus, O::Aplus, {{1, std::nullopt}}},
      {"h1.[a+,b+]=0", O::Aplus, O::Bplus, {}},
      {"h1.[a+,b-]=0", O::Aplus, O::Bminus, {}},
      {"h1.[a-,b+]=0", O::Aminus, O::Bplus, {}},
      {"h1.[a-,b-]=0", O::Aminus, O::Bminus, {}},
      {"su2.[J3,J+]=J+", O::J3, O::Jplus, {{1, O::Jplus}}},
      {"su2.[J3,J-]=-J-", O::J3, O::Jminus, {{-1, O::Jminus}}},
      {"su2.[J+,J-]=2J3", O::Jplus, O::Jminus, {{2, O::J3}}},
      {"su11.[K3,K+]=K+", O::K3, O::Kplus, {{1, O::Kplus}}},
      {"su11.[K3,K-]=-K-", O::K3, O::Kminus, {{-1, O::Kminus}}},
      {"su11.[K+,K-]=-2K3", O::Kplus, O::Kminus, {{-2, O::K3}}},
      {"so21R.[R3,R+]=2R+", O::R3, O::Rplus, {{2, O::Rplus}}},
      {"so21R.[R3,R-]=-2R-", O::R3, O::Rminus, {{-2, O::Rminus}}},
      {"so21R.[R+,R-]=-4R3", O::Rplus, O::Rminus, {{-4, O::R3}}},
      {"so21S.[S3,S+]=2S+", O::S3, O::Splus, {{2, O::Splus}}},
      {"so21S.[S3,S-]=-2S-", O::S3, O::Sminus, {{-2, O::Sminus}}},
      {"so21S.[S+,S-]=-4S3", O::Splus, O::Sminus, {{-4, O::S3}}},
      {"so32.[R+,S-]=0", O::Rplus, O::Sminus, {}},
  };
}

SuiteReport algebra_suite(const VerifyOptions& o) {
  SuiteReport report{Suite::Algebra, {}};
  const Realization realization = o.realization();
  const int nmax = o.nmax;
  std::vector<BasisIndex> labels;
  for (int n = 0; n <= nmax; ++n)
    for (int p = 0; p <= nmax; ++p) labels.emplace_back(n, p);

  for (const Bracket& br : brackets()) {
    report.checks.push_back(run_check(br.name, "exact", 0.0, [&](Tally& t) {
      for (BasisIndex idx : labels) {
        const ExactLabelVector e = ExactLabelVector::basis(idx);
        const ExactLabelVector lhs = commutator_label(br.a, br.b, e, realization);
        ExactLabelVector rhs;
        for (const auto& [coeff, op] : br.rhs)
          rhs += (op ? apply_label(*op, e, realization) : e) * Surd(coeff);
        t.exact(lhs == rhs, max_abs_difference(lhs, rhs), "n,p=" + label_text(idx.n, idx.p));
      }
    }));
  }

  report.checks.push_back(run_check("composition.J_K_from_a_b", "exact", 0.0, [&](Tally& t) {
    using O = OperatorName;
    const std::array<std::array<O, 3>, 4> products{{{O::Jplus, O::Aplus, O::Bminus},
                                                    {O::Jminus, O::Aminus, O::Bplus},
                                                    {O::Kplus, O::Aplus, O::Bplus},
                                                    {O::Kminus, O::Aminus, O::Bminus}}};
    for (BasisIndex idx : labels)
      for (const auto& [op, outer, inner] : products) {
        const ExactLabelVector e = ExactLabelVector::basis(idx);
        const ExactLabelVector direct = apply_label(op, e, realization);
        const ExactLabelVector composed = apply_label(outer, apply_label(inner, e, realization), realization);
        t.exact(direct == composed, max_abs_difference(direct, composed),
                std::string(name_of(op)) + " at n,p=" + label_text(idx.n, idx.p));
      }
  }));

  report.checks.push_back(run_check("interchange.a_equals_minus_swapped_b", "exact", 0.0, [&](Tally& t) {
    // a(N,P) = -b(P,N): <n',p|a|n,p> = -s(n,p) s(p,n') <p,n'|b|p,n>, s = sign of M_{n,p} vs M_{p,n}.
    auto swap_sign = [](int n, int p) { return relative_sign(carrier_M(BasisIndex(n, p)), carrier_M(BasisIndex(p, n))); };
    for (BasisIndex idx : labels)
      for (auto [a_op, b_op, shift] : {std::tuple{OperatorName::Aplus, OperatorName::Bplus, 1},
                                       std::tuple{OperatorName::Aminus, OperatorName::Bminus, -1}}) {
        const ExactLabelVector a = apply_label(a_op, ExactLabelVector::basis(idx), realization);
        const ExactLabelVector b = apply_label(b_op, ExactLabelVector::basis(BasisIndex(idx.p, idx.n)), realization);
        const int moved = idx.n + shift;
        Surd lhs;
        Surd rhs;
        if (moved >= 0) {
          lhs = a.coefficient(BasisIndex(moved, idx.p));
          rhs = b.coefficient(BasisIndex(idx.p, moved)) * Surd(-swap_sign(idx.n, idx.p) * swap_sign(moved, idx.p));
        }
        const bool ok = lhs == rhs && a.terms().size() <= 1 && b.terms().size() <= 1;
        t.exact(ok, std::abs((lhs - rhs).to_double()),
                std::string(name_of(a_op)) + " at n,p=" + label_text(idx.n, idx.p));
      }
  }));

  for (CasimirKind kind : {CasimirKind::Cp, CasimirKind::Csu2, CasimirKind::Csu11, CasimirKind::CR, CasimirKind::CS}) {
    const std::string name = "casimir." + std::string(name_of(kind));
    report.checks.push_back(run_check(name, "exact", 0.0, [&](Tally& t) {
      static const std::map<CasimirKind, std::string> formula{{CasimirKind::Cp, "0"},
                                                              {CasimirKind::Csu2, "j(j+1)"},
                                                              {CasimirKind::Csu11, "m^2-1/4"},
                                                              {CasimirKind::CR, "-3/4"},
                                                              {CasimirKind::CS, "-3/4"}};
      t.details()["expected"] = formula.at(kind);
      json samples = json::object();
      for (BasisIndex idx : labels) {
        const std::string where = "n,p=" + label_text(idx.n, idx.p);
        try {
          const Rational value = casimir_eigenvalue(kind, idx, realization);
          const Rational expected = casimir_expected(kind, idx);
          t.exact(value == expected, std::abs(Rational(value - expected).get_d()), where);
          if (idx.n <= 2 && idx.p <= 2) samples[label_text(idx.n, idx.p)] = value.get_str();
        } catch (const ConsistencyError& e) {
          t.exact(false, 1.0, where + ": " + e.what());
        }
      }
      t.details()["samples"] = samples;
    }));
  }

  report.checks.push_back(run_check("E.annihilation_symbolic", "exact", 0.0, [&](Tally& t) {
    for (BasisIndex idx : labels) {
      const LaurentPoly r = e_residual_symbolic(idx);
      t.exact(r.is_zero(), max_abs_coefficient(r), "n,p=" + label_text(idx.n, idx.p));
    }
  }));

  const int dmax = std::min(nmax, 10);
  const std::vector<double> points = log_spaced(0.05, 20.0, 20);

  report.checks.push_back(run_check("E.annihilation_pointwise", "float", 1e-9, [&](Tally& t) {
    for (int n = 0; n <= dmax; ++n)
      for (int p = 0; p <= dmax; ++p) {
        const Carrier c = carrier_M(BasisIndex(n, p));
        for (double x : points) {
          const DiffEvaluation d = apply_diff_detailed(OperatorName::E, c, x);
          t.measure(std::abs(d.value) / d.scale, "n,p=" + label_text(n, p) + " x=" + std::to_string(x));
        }
      }
  }));

  report.checks.push_back(run_check("label_vs_differential", "float", 1e-9, [&](Tally& t) {
    using O = OperatorName;
    for (O op : {O::Bplus, O::Bminus, O::Jplus, O::Jminus, O::Kplus, O::Kminus})
      for (int n = 0; n <= dmax; ++n)
        for (int p = 0; p <= dmax; ++p) {
          const BasisIndex idx(n, p);
          const Carrier c = carrier_M(idx);
          const RealLabelVector image = apply_label(op, RealLabelVector::basis(idx), realization);
          for (double x : points) {
            const DiffEvaluation d = apply_diff_detailed(op, c, x);
            const double expected = eval_label(image, x);
            const double scale = std::max({d.scale, std::abs(expected), std::abs(d.value)});
            const double rel = scale == 0.0 ? 0.0 : std::abs(d.value - expected) / scale;
            t.measure(rel, std::string(name_of(op)) + " at n,p=" + label_text(n, p) + " x=" + std::to_string(x));
          }
        }
  }));
  return report;
}

// ---------------------------------------------------------------------------
// quadrature: rules, orthonormality, norms, projections

SuiteReport quadrature_suite(const VerifyOptions& o) {
  SuiteReport report{Suite::Quadrature, {}};
  std::vector<int> orders{1, 2, 8, 32, 64};
  if (std::find(orders.begin(), orders.end(), o.order) == orders.end()) orders.push_back(o.order);
  std::map<int, QuadratureRule> rules;
  for (int order : orders) rules.emplace(order, gauss_laguerre(order));
  const QuadratureRule& rule = rules.at(o.order);

  report.checks.push_back(run_check("rule.weight_sum", "float", 1e-13, [&](Tally& t) {
    for (const auto& [order, r] : rules) {
      double sum = 0.0;
      for (double w : r.weights) sum += w;
      t.measure(std::abs(sum - 1.0), "order=" + std::to_string(order));
    }
  }));

  report.checks.push_back(run_check("rule.moment_exactness", "float", 1e-12, [&](Tally& t) {
    for (const auto& [order, r] : rules) {
      for (int k = 0; k <= 2 * order - 1; ++k) {
        double sum = 0.0;
        for (int i = 0; i < order; ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
        const double exact = std::tgamma(k + 1.0);
        t.measure(std::abs(sum - exact) / exact, "order=" + std::to_string(order) + " k=" + std::to_string(k));
      }
    }
  }));

  report.checks.push_back(run_check("orthonormality", "float", 1e-11, [&](Tally& t) {
    for (int alpha : {0, 1, 2, 5}) {
      const auto members = family(alpha, 21);
      for (int n = 0; n <= 20; ++n)
        for (int m = 0; m <= 20; ++m) {
          const double value = inner_product(members[n], members[m], rule);
          t.measure(std::abs(value - (n == m ? 1.0 : 0.0)),
                    "alpha=" + std::to_string(alpha) + " n,m=" + label_text(n, m));
        }
    }
  }));

  report.checks.push_back(run_check("orthonormality.negative_alpha", "float", 1e-11, [&](Tally& t) {
    for (int alpha : {-1, -2, -5}) {
      const auto members = family(alpha, 16);
      for (std::size_t n = 0; n < members.size(); ++n)
        for (std::size_t m = 0; m < members.size(); ++m) {
          const double value = inner_product(members[n], members[m], rule);
          t.measure(std::abs(value - (n == m ? 1.0 : 0.0)),
                    "alpha=" + std::to_string(alpha) + " k,l=" + label_text(static_cast<int>(n), static_cast<int>(m)));
        }
    }
  }));

  report.checks.push_back(run_check("norm_formula", "float", 1e-11, [&](Tally& t) {
    for (int alpha : {0, 1, 2, 3})
      for (int n = 0; n <= 15; ++n) {
        const LaurentPoly l = laguerre(LaguerreIndex(n, alpha));
        const double value = weighted_inner_product(l, l, alpha, rule);
        const double exact = Rational(factorial(n + alpha) / factorial(n)).get_d();
        t.measure(std::abs(value - exact) / exact, "alpha,n=" + label_text(alpha, n));
      }
  }));

  report.checks.push_back(run_check("projection_convergence", "float", 1e-12, [&](Tally& t) {
    // Targets inside the alpha = 2 span: the family member M_4^(2) and x e^{-x/2} (1 + x).
    const Carrier member = carrier_M_alpha(4, 2);
    const Carrier poly(1, Rational(1, 38), 2, LaurentPoly::constant(1) + LaurentPoly::x());
    for (const auto& [target, degree, label] :
         {std::tuple{member, 4, std::string("M_4^(2)")}, std::tuple{poly, 1, std::string("x(1+x)e^{-x/2}")}}) {
      const auto norms = projection_convergence(target, 2, 8, rule);
      for (std::size_t k = degree; k < norms.size(); ++k) t.measure(norms[k], label + " N=" + std::to_string(k));
      for (std::size_t k = 1; k < norms.size(); ++k)
        if (norms[k] > norms[k - 1] + 1e-14) t.measure(1.0, label + " increases at N=" + std::to_string(k));
    }
  }));
  return report;
}

// ---------------------------------------------------------------------------
// plane: 2D modes on the polar grid

ModeCoefficients random_coefficients(int jmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ModeCoefficients c;
  c.jmax = jmax;
  for (int j = 0; j <= jmax; ++j)
    for (int m = -j; m <= j; ++m) {
      const double re = dist(rng);
      const double im = dist(rng);
      c.amplitudes.emplace(ModeIndex(j, m), Complex(re, im));
    }
  return c;
}

ExactModeCoefficients single_exact(ModeIndex idx, int jmax) {
  ExactModeCoefficients c;
  c.jmax = jmax;
  c.amplitudes.emplace(idx, Surd(1));
  return c;
}

ExactModeCoefficients combine(const ExactModeCoefficients& a, const ExactModeCoefficients& b, const Surd& scale_b) {
  ExactModeCoefficients out = a;
  for (const auto& [idx, c] : b.amplitudes) {
    Surd& slot = out.amplitudes[idx];
    slot += c * scale_b;
    if (slot.is_zero()) out.amplitudes.erase(idx);
  }
  return out;
}

SuiteReport plane_suite(const VerifyOptions& o) {
  SuiteReport report{Suite::Plane, {}};
  const Realization realization = o.realization();
  const PolarGrid grid(o.order, o.angular);
  const int jmax = o.jmax;
  std::vector<ModeIndex> modes;
  for (int j = 0; j <= jmax; ++j)
    for (int m = -j; m <= j; ++m) modes.emplace_back(j, m);

  report.checks.push_back(run_check("plane.gram", "float", 1e-10, [&](Tally& t) {
    for (ModeIndex a : modes)
      for (ModeIndex b : modes) {
        const Complex g = inner_product_2d(a, b, grid);
        t.measure(std::abs(g - Complex(a == b ? 1.0 : 0.0, 0.0)),
                  "(" + std::to_string(a.j) + "," + std::to_string(a.m) + ")x(" + std::to_string(b.j) + "," +
                      std::to_string(b.m) + ")");
      }
  }));

  report.checks.push_back(run_check("plane.radial_de", "float", 1e-9, [&](Tally& t) {
    for (ModeIndex idx : modes)
      for (double r : {0.3, 0.7, 1.5, 3.0})
        t.measure(radial_de_residual(idx, r),
                  "j,m=" + label_text(idx.j, idx.m) + " r=" + std::to_string(r));
  }));

  report.checks.push_back(run_check("plane.round_trip", "float", 1e-10, [&](Tally& t) {
    const ModeCoefficients c = random_coefficients(jmax, 0x5eed0001);
    const ModeCoefficients back = decompose(reconstruct(c, grid), jmax);
    for (const auto& [idx, value] : c.amplitudes)
      t.measure(std::abs(back.amplitudes.at(idx) - value), "j,m=" + label_text(idx.j, idx.m));
  }));

  report.checks.push_back(run_check("plane.mode_operators_vs_label_space", "exact", 0.0, [&](Tally& t) {
    // J+- on Z_j^m must reproduce the label-space J+- on |j+m, j-m>.
    for (ModeIndex idx : modes)
      for (auto [mode_op, label_op] : {std::pair{ModeOperator::Jplus, OperatorName::Jplus},
                                       std::pair{ModeOperator::Jminus, OperatorName::Jminus}}) {
        const ExactModeCoefficients image = apply_mode_operator(mode_op, single_exact(idx, jmax));
        const ExactLabelVector label_image = apply_label(
            label_op, ExactLabelVector::basis(BasisIndex(idx.j + idx.m, idx.j - idx.m)), realization);
        ExactLabelVector as_labels;
        for (const auto& [mi, c] : image.amplitudes) as_labels.add(BasisIndex(mi.j + mi.m, mi.j - mi.m), c);
        t.exact(as_labels == label_image, max_abs_difference(as_labels, label_image),
                std::string(name_of(label_op)) + " at j,m=" + label_text(idx.j, idx.m));
      }
  }));

  report.checks.push_back(run_check("plane.mode_operators_su2", "exact", 0.0, [&](Tally& t) {
    auto op = [](ModeOperator o2, const ExactModeCoefficients& c) { return apply_mode_operator(o2, c); };
    for (ModeIndex idx : modes) {
      const ExactModeCoefficients e = single_exact(idx, jmax);
      const auto where = "j,m=" + label_text(idx.j, idx.m);
      // [J+, J-] = 2 J3
      const auto comm_pm = combine(op(ModeOperator::Jplus, op(ModeOperator::Jminus, e)),
                                   op(ModeOperator::Jminus, op(ModeOperator::Jplus, e)), Surd(-1));
      const auto two_j3 = combine(ExactModeCoefficients{{}, jmax}, op(ModeOperator::J3, e), Surd(2));
      t.exact(comm_pm.amplitudes == two_j3.amplitudes, 0.0, "[J+,J-] at " + where);
      // [J3, J+-] = +-J+-
      for (auto [ladder, sign] : {std::pair{ModeOperator::Jplus, 1}, std::pair{ModeOperator::Jminus, -1}}) {
        const auto comm = combine(op(ModeOperator::J3, op(ladder, e)), op(ladder, op(ModeOperator::J3, e)), Surd(-1));
        const auto expected = combine(ExactModeCoefficients{{}, jmax}, op(ladder, e), Surd(sign));
        t.exact(comm.amplitudes == expected.amplitudes, 0.0, "[J3,J+-] at " + where);
      }
      // J3^2 + {J+, J-}/2 = j(j+1)
      auto casimir = combine(op(ModeOperator::J3, op(ModeOperator::J3, e)),
                             combine(op(ModeOperator::Jplus, op(ModeOperator::Jminus, e)),
                                     op(ModeOperator::Jminus, op(ModeOperator::Jplus, e)), Surd(1)),
                             Surd(Rational(1, 2)));
      const auto expected = combine(ExactModeCoefficients{{}, jmax}, e, Surd(idx.j * (idx.j + 1)));
      t.exact(casimir.amplitudes == expected.amplitudes, 0.0, "Casimir at " + where);
    }
  }));

  report.checks.push_back(run_check("plane.mode_operator_pointwise", "float", 1e-8, [&](Tally& t) {
    const ModeCoefficients c = random_coefficients(jmax, 0x5eed0002);
    const Field2D synthesized = reconstruct(apply_mode_operator(ModeOperator::Jplus, c), grid);
    Field2D direct(grid);
    for (const auto& [idx, amp] : c.amplitudes) {
      const Carrier radial = carrier_L(Rational(idx.j), Rational(idx.m));
      for (int k = 0; k < grid.radial_order(); ++k) {
        const double value = apply_diff(OperatorName::Jplus, radial, grid.x_nodes()[k]);
        for (int q = 0; q < grid.angular_count(); ++q)
          direct.at(k, q) += amp * std::polar(1.0, (idx.m + 1) * grid.angular_nodes()[q]) * value;
      }
    }
    double scale = 0.0;
    for (const Complex& v : direct.samples) scale = std::max(scale, std::abs(v));
    for (std::size_t s = 0; s < direct.samples.size(); ++s)
      t.measure(std::abs(direct.samples[s] - synthesized.samples[s]) / scale, "sample " + std::to_string(s));
  }));
  return report;
}

// ---------------------------------------------------------------------------
// so32: structure constants and the Killing-form Casimir

SuiteReport so32_suite(const VerifyOptions& o) {
  SuiteReport report{Suite::So32, {}};
  const Realization realization = o.realization();
  const auto states = default_sample_states();
  std::optional<StructureConstants> sc;
  try {
    sc = derive_structure_constants(states, realization);
  } catch (const std::exception& e) {
    report.checks.push_back(run_check("so32.closure", "float", 1e-9, [&](Tally&) { throw; }));
    return report;
  }

  report.checks.push_back(run_check("so32.closure", "float", 1e-9, [&](Tally& t) {
    for (const PairFit& f : sc->fits())
      if (f.in_so32) t.measure(f.residual, "[" + std::string(name_of(f.a)) + "," + std::string(name_of(f.b)) + "]");
    json outside = json::object();
    for (const PairFit& f : sc->fits())
      if (!f.in_so32 && f.residual > 1e-9)
        outside["[" + std::string(name_of(f.a)) + "," + std::string(name_of(f.b)) + "]"] = f.residual;
    t.details()["pairs_leaving_so32"] = outside.size();
    t.details()["sample_states"] = states.size();
  }));

  report.checks.push_back(run_check("so32.antisymmetry", "float", 1e-9,
                                    [&](Tally& t) { t.measure(sc->antisymmetry_defect(), "table"); }));
  report.checks.push_back(
      run_check("so32.jacobi", "float", 1e-9, [&](Tally& t) { t.measure(sc->jacobi_defect(), "table"); }));

  report.checks.push_back(run_check("so32.named_brackets", "float", 1e-9, [&](Tally& t) {
    using O = OperatorName;
    auto [r3, r3_residual] = expand_operator(O::R3, states, realization);
    t.measure(r3_residual, "R3 expansion");
    GeneratorVector k3{};
    k3[*so32_basis_position(O::K3)] = 1.0;
    const std::array<std::tuple<O, O, double, GeneratorVector, std::string>, 3> expected{{
        {O::Kplus, O::Kminus, -2.0, k3, "[K+,K-]=-2K3"},
        {O::Rplus, O::Rminus, -4.0, r3, "[R+,R-]=-4R3"},
        {O::Rplus, O::Splus, 0.0, k3, "[R+,S+]=0"},
    }};
    for (const auto& [a, b, factor, direction, label] : expected) {
      const GeneratorVector& got = sc->fit(a, b).coefficients;
      double worst = 0.0;
      for (std::size_t d = 0; d < got.size(); ++d) worst = std::max(worst, std::abs(got[d] - factor * direction[d]));
      t.measure(worst, label);
    }
  }));

  report.checks.push_back(run_check("so32.su2_killing_block", "float", 1e-10, [&](Tally& t) {
    t.measure(su2_killing_proportionality_residual(*sc), "{J+,J-,J3} block");
  }));

  std::vector<double> eigenvalues;
  report.checks.push_back(run_check("so32.killing_casimir_constant", "float", 1e-10, [&](Tally& t) {
    const std::vector<BasisIndex> probes{{0, 0}, {2, 4}, {5, 3}, {1, 1}, {6, 0}, {0, 1}, {3, 2}, {4, 7}};
    json values = json::object();
    double normalization = 0.0;
    for (BasisIndex idx : probes) {
      const KillingCasimir kc = killing_casimir(*sc, idx, realization);
      eigenvalues.push_back(kc.eigenvalue);
      normalization = kc.normalization;
      values[label_text(idx.n, idx.p)] = kc.eigenvalue;
    }
    const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
    t.measure(*hi - *lo, "spread over probe states");
    t.details()["eigenvalues"] = values;
    t.details()["normalization"] = normalization;
  }));

  report.checks.push_back(run_check("so32.killing_casimir_value", "float", 1e-8, [&](Tally& t) {
    if (eigenvalues.empty()) throw ConsistencyError("no Casimir eigenvalue available");
    t.details()["expected"] = -1.25;
    t.details()["observed"] = eigenvalues.front();
    t.details()["normalization_rule"] = "inverse Killing form scaled so its su(2) part is J3^2 + {J+,J-}/2";
    for (double v : eigenvalues) t.measure(std::abs(v + 1.25), "eigenvalue " + std::to_string(v));
  }));
  return report;
}

}  // namespace

std::string_view name_of(Suite suite) {
  switch (suite) {
    case Suite::Exact:
      return "exact";
    case Suite::Algebra:
      return "algebra";
    case Suite::Quadrature:
      return "quadrature";
    case Suite::Plane:
      return "plane";
    case Suite::So32:
      return "so32";
  }
  return "?";
}

std::optional<Suite> suite_from_name(std::string_view name) {
  for (Suite s : all_suites())
    if (name_of(s) == name) return s;
  return std::nullopt;
}

std::vector<Suite> all_suites() { return {Suite::Exact, Suite::Algebra, Suite::Quadrature, Suite::Plane, Suite::So32}; }

void VerifyOptions::validate() const {
  if (nmax < 1 || nmax > 30) throw ConfigurationError("nmax must lie in [1, 30]");
  if (order < 1 || order > kMaxQuadratureOrder) throw ConfigurationError("order must lie in [1, 200]");
  if (angular < 1 || angular > 4096 || (angular & (angular - 1)) != 0)
    throw ConfigurationError("angular must be a power of two in [1, 4096]");
  if (jmax < 0 || jmax > 16) throw ConfigurationError("jmax must lie in [0, 16]");
  if (order < jmax + 1) throw ConfigurationError("order too low for jmax; required order " + std::to_string(jmax + 1));
  if (angular <= 2 * jmax) throw ConfigurationError("angular count must exceed 2 * jmax");
  // Orthonormality of n, m <= 20 at alpha = 5 needs a 23-point rule.
  if (order < 23) throw ConfigurationError("order too low for the quadrature suite; required order 23");
  if (workers < 1) throw ConfigurationError("workers must be positive");
}

Realization VerifyOptions::realization() const {
  return fault ? Realization::with_sign_fault(fault->op, fault->at) : Realization::standard();
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
}

std::vector<std::string> VerifyReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& s : suites)
    for (const auto& c : s.checks)
      if (!c.pass) out.push_back(std::string(name_of(s.suite)) + "/" + c.name);
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  json root;
  root["tool"] = "ladder";
  root["version"] = std::string(kVersion);
  root["options"] = {{"nmax", options.nmax}, {"order", options.order}, {"angular", options.angular},
                     {"jmax", options.jmax}};
  if (options.fault)
    root["options"]["injected_fault"] = std::string(name_of(options.fault->op)) + "@" +
                                        label_text(options.fault->at.n, options.fault->at.p);
  json suites_json = json::array();
  for (const auto& s : suites) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      json entry{{"name", c.name},         {"mode", c.mode},   {"max_residual", c.max_residual},
                 {"tolerance", c.tolerance}, {"cases", c.cases}, {"pass", c.pass}};
      if (!c.details.empty()) entry["details"] = c.details;
      checks.push_back(std::move(entry));
    }
    suites_json.push_back({{"suite", std::string(name_of(s.suite))}, {"pass", s.pass()}, {"checks", checks}});
  }
  root["suites"] = suites_json;
  root["failed"] = failed_checks();
  root["pass"] = pass();
  return root;
}

SuiteReport run_suite(Suite suite, const VerifyOptions& options) {
  switch (suite) {
    case Suite::Exact:
      return exact_suite(options);
    case Suite::Algebra:
      return algebra_suite(options);
    case Suite::Quadrature:
      return quadrature_suite(options);
    case Suite::Plane:
      return plane_suite(options);
    case Suite::So32:
      return so32_suite(options);
  }
  throw ConfigurationError("unknown suite");
}

VerifyReport run_verification(std::span<const Suite> suites, const VerifyOptions& options) {
  options.validate();
  VerifyReport report{options, std::vector<SuiteReport>(suites.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suites.size(); i = next++) report.suites[i] = run_suite(suites[i], options);
  };
  const unsigned count = std::min<unsigned>(options.workers, static_cast<unsigned>(suites.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

}  // namespace ladder
