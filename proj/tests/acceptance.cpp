// Acceptance criteria AC1-AC9. Prints one PASS/FAIL line per criterion with the
// observed residual, the pinned tolerance and the runtime against its target.
// Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "ladder/verify.hpp"

using namespace ladder;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double runtime_limit_s;
  std::function<Outcome()> body;
};

double max_coefficient(const LaurentPoly& p) {
  double worst = 0.0;
  for (const auto& [e, c] : p.terms()) worst = std::max(worst, std::abs(c.get_d()));
  return worst;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const CheckResult* find_check(const SuiteReport& report, const std::string& name) {
  for (const auto& c : report.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// Requires each named check to be present, pass, and carry exactly the pinned tolerance.
Outcome require_checks(const SuiteReport& report, const std::vector<std::pair<std::string, double>>& pinned) {
  Outcome out;
  for (const auto& [name, tolerance] : pinned) {
    const CheckResult* c = find_check(report, name);
    if (c == nullptr) {
      out.pass = false;
      out.detail += name + "=missing; ";
      continue;
    }
    const bool ok = c->pass && c->tolerance == tolerance;
    out.pass = out.pass && ok;
    out.detail += name + "=" + fmt(c->max_residual) + (tolerance == 0.0 ? "/exact" : "/" + fmt(tolerance)) +
                  (ok ? "" : "!") + " ";
  }
  return out;
}

VerifyOptions defaults() { return VerifyOptions{}; }

Outcome ac1() {
  long cases = 0;
  double worst = 0.0;
  bool pass = true;
  for (int n = 0; n <= 30; ++n)
    for (int alpha = -n; alpha <= 10; ++alpha) {
      const LaurentPoly r = de_residual(LaguerreIndex(n, alpha));
      pass = pass && r.is_zero();
      worst = std::max(worst, max_coefficient(r));
      ++cases;
    }
  return {pass, "cases=" + std::to_string(cases) + " max|coef|=" + fmt(worst) + " tol=exact"};
}

Outcome ac2() {
  long cases = 0;
  bool pass = true;
  for (int n = 0; n <= 30; ++n)
    for (int alpha = -n; alpha <= 10; ++alpha) {
      const LaurentPoly l = laguerre(LaguerreIndex(n, alpha));
      if (n + alpha - 1 < 0) {
        // Lowering would leave the valid range; only the raising identity applies.
        const LaurentPoly raising = -derivative(l) + l - laguerre(LaguerreIndex(n, alpha + 1));
        pass = pass && raising.is_zero();
      } else {
        const auto r = alpha_ladder_check(LaguerreIndex(n, alpha));
        pass = pass && r.raising.is_zero() && r.lowering.is_zero();
      }
      ++cases;
    }
  return {pass, "cases=" + std::to_string(cases) + " tol=exact (lowering skipped where n+alpha-1<0)"};
}

Outcome ac3() {
  long cases = 0;
  bool pass = true;
  for (int n = 0; n <= 20; ++n)
    for (int p = 0; p <= 20; ++p) {
      pass = pass && e_residual_symbolic(BasisIndex(n, p)).is_zero();
      ++cases;
    }
  return {pass, "cases=" + std::to_string(cases) + " tol=exact"};
}

Outcome ac4() {
  VerifyOptions o = defaults();
  o.nmax = 12;
  const SuiteReport r = run_suite(Suite::Algebra, o);
  return require_checks(r, {{"h1.[b-,b+]=I", 0.0},
                            {"su2.[J3,J+]=J+", 0.0},
                            {"su2.[J3,J-]=-J-", 0.0},
                            {"su2.[J+,J-]=2J3", 0.0},
                            {"su11.[K3,K+]=K+", 0.0},
                            {"su11.[K3,K-]=-K-", 0.0},
                            {"su11.[K+,K-]=-2K3", 0.0},
                            {"so21R.[R3,R+]=2R+", 0.0},
                            {"so21R.[R3,R-]=-2R-", 0.0},
                            {"so21R.[R+,R-]=-4R3", 0.0},
                            {"so21S.[S3,S+]=2S+", 0.0},
                            {"so21S.[S3,S-]=-2S-", 0.0},
                            {"so21S.[S+,S-]=-4S3", 0.0},
                            {"casimir.Cp", 0.0},
                            {"casimir.Csu2", 0.0},
                            {"casimir.Csu11", 0.0},
                            {"casimir.CR", 0.0},
                            {"casimir.CS", 0.0}});
}

Outcome ac5() {
  VerifyOptions o = defaults();
  o.nmax = 10;
  const SuiteReport r = run_suite(Suite::Algebra, o);
  Outcome out = require_checks(r, {{"label_vs_differential", 1e-9}});
  if (const CheckResult* c = find_check(r, "label_vs_differential")) {
    // 6 operators x 11 x 11 labels x 20 points
    const bool complete = c->cases == 6L * 11 * 11 * 20;
    out.pass = out.pass && complete;
    out.detail += "cases=" + std::to_string(c->cases) + (complete ? "" : "!");
  }
  return out;
}

Outcome ac6() {
  const SuiteReport r = run_suite(Suite::Quadrature, defaults());
  return require_checks(r, {{"orthonormality", 1e-11}, {"norm_formula", 1e-11}});
}

Outcome ac7() {
  const SuiteReport r = run_suite(Suite::Plane, defaults());
  return require_checks(r, {{"plane.gram", 1e-10},
                            {"plane.radial_de", 1e-9},
                            {"plane.round_trip", 1e-10},
                            {"plane.mode_operators_vs_label_space", 0.0},
                            {"plane.mode_operators_su2", 0.0}});
}

Outcome ac8() {
  const SuiteReport r = run_suite(Suite::So32, defaults());
  Outcome out = require_checks(r, {{"so32.closure", 1e-9},
                                   {"so32.antisymmetry", 1e-9},
                                   {"so32.jacobi", 1e-9},
                                   {"so32.killing_casimir_constant", 1e-10},
                                   {"so32.killing_casimir_value", 1e-8}});
  if (const CheckResult* c = find_check(r, "so32.killing_casimir_value"); c && c->details.contains("observed"))
    out.detail += "C2=" + c->details["observed"].dump() + " (expected -1.25)";
  return out;
}

Outcome ac9() {
  Outcome out;
  const cli::Result clean = cli::run("verify --suite all > /dev/null");
  const cli::Result faulty = cli::run("verify --suite all --inject-fault Jplus@1,2 > /dev/null");
  const bool names_identity = faulty.err.find("FAILED: algebra/su2.[J+,J-]=2J3") != std::string::npos;
  out.pass = clean.exit_code == 0 && faulty.exit_code == 1 && names_identity;
  out.detail = "clean exit=" + std::to_string(clean.exit_code) + " (want 0), fault exit=" +
               std::to_string(faulty.exit_code) + " (want 1), names su2.[J+,J-]=2J3: " + (names_identity ? "yes" : "no");
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "exact DE residual, n<=30, -n<=alpha<=10", 5.0, ac1},
      {"AC2", "exact alpha raising/lowering, same range", 5.0, ac2},
      {"AC3", "E annihilation symbolic, n,p<=20", 10.0, ac3},
      {"AC4", "label-space commutators and Casimirs, n,p<=12", 10.0, ac4},
      {"AC5", "label vs differential forms, n,p<=10, 20 points", 10.0, ac5},
      {"AC6", "quadrature orthonormality and norms", 10.0, ac6},
      {"AC7", "plane Gram, radial DE, round trip, mode operators", 30.0, ac7},
      {"AC8", "so(3,2) closure and Killing Casimir", 20.0, ac8},
      {"AC9", "CLI verify exit codes and fault detection", 60.0, ac9},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.runtime_limit_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("%s %s  %s | %s | %.2fs < %.0fs%s\n", c.id.c_str(), pass ? "PASS" : "FAIL", c.title.c_str(),
                o.detail.c_str(), seconds, c.runtime_limit_s, in_time ? "" : " (too slow)");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
