// ladder: evaluation, tabulation, verification and 2D mode decomposition.
//
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
// input error.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ladder/errors.hpp"
#include "ladder/plane.hpp"
#include "ladder/quadrature.hpp"
#include "ladder/verify.hpp"

namespace {

using namespace ladder;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Input or usage problem detected by the front end itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format17(Complex c) { return format17(c.real()) + "," + format17(c.imag()); }

Rational parse_rational(const std::string& text, const char* what) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw UsageError(std::string(what) + " must be an integer or a fraction like 3/2, got '" + text + "'");
  q.canonicalize();
  return q;
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && end == text.data() + text.size() && std::isfinite(out);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i)
    if (i == line.size() || line[i] == ',') {
      cells.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  return cells;
}

// ---------------------------------------------------------------------------
// eval / table

struct FamilyArgs {
  std::string family = "M";
  int n = 0;
  int p = 0;
  int alpha = 0;
  std::string j = "0";
  std::string m = "0";
};

void add_family_options(CLI::App* cmd, FamilyArgs& f, bool with_z) {
  std::vector<std::string> families{"M", "scriptM", "L"};
  if (with_z) families.push_back("Z");
  cmd->add_option("--family", f.family, "Function family")->check(CLI::IsMember(families))->capture_default_str();
  cmd->add_option("--n", f.n, "Degree n (M, scriptM)");
  cmd->add_option("--alpha", f.alpha, "Order alpha (M)");
  cmd->add_option("--p", f.p, "Second label p (scriptM)");
  cmd->add_option("--j", f.j, "Label j, integer or half-integer (L, Z)");
  cmd->add_option("--m", f.m, "Label m, integer or half-integer (L, Z)");
}

Carrier carrier_for(const FamilyArgs& f) {
  if (f.family == "M") return carrier_M_alpha(f.n, f.alpha);
  if (f.family == "scriptM") return carrier_M(BasisIndex(f.n, f.p));
  return carrier_L(parse_rational(f.j, "j"), parse_rational(f.m, "m"));
}

ModeIndex mode_for(const FamilyArgs& f) {
  const Rational j = parse_rational(f.j, "j");
  const Rational m = parse_rational(f.m, "m");
  if (j.get_den() != 1 || m.get_den() != 1) throw DomainError("plane modes need integer j and m");
  return ModeIndex(static_cast<int>(j.get_num().get_si()), static_cast<int>(m.get_num().get_si()));
}

struct EvalArgs {
  FamilyArgs family;
  std::vector<double> x;
  std::vector<double> r;
  std::vector<double> phi;
};

int run_eval(const EvalArgs& a) {
  if (a.family.family == "Z") {
    const ModeIndex idx = mode_for(a.family);
    if (a.r.empty() || a.r.size() != a.phi.size()) throw UsageError("Z needs matching --r and --phi lists");
    if (a.r.size() == 1) {
      std::cout << format17(eval_Z(idx, a.r[0], a.phi[0])) << '\n';
      return 0;
    }
    std::cout << "r,phi,re,im\n";
    for (std::size_t i = 0; i < a.r.size(); ++i)
      std::cout << format17(a.r[i]) << ',' << format17(a.phi[i]) << ',' << format17(eval_Z(idx, a.r[i], a.phi[i]))
                << '\n';
    return 0;
  }
  if (a.x.empty()) throw UsageError("--x is required for family " + a.family.family);
  const Carrier c = carrier_for(a.family);
  if (a.x.size() == 1) {
    std::cout << format17(eval(c, a.x[0])) << '\n';
    return 0;
  }
  std::cout << "x,value\n";
  for (double x : a.x) std::cout << format17(x) << ',' << format17(eval(c, x)) << '\n';
  return 0;
}

struct TableArgs {
  FamilyArgs family;
  double from = 0.0;
  double to = 20.0;
  int count = 101;
};

int run_table(const TableArgs& a) {
  if (a.count < 2) throw UsageError("--count must be at least 2");
  if (!(a.from >= 0.0) || !(a.to > a.from)) throw UsageError("need 0 <= --from < --to");
  const Carrier c = carrier_for(a.family);
  std::cout << "x,value\n";
  for (int i = 0; i < a.count; ++i) {
    const double x = i + 1 == a.count ? a.to : a.from + (a.to - a.from) * i / (a.count - 1);
    std::cout << format17(x) << ',' << format17(eval(c, x)) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  VerifyOptions options;
  std::string fault;
};

SignFault parse_fault(const std::string& text) {
  // OP@n,p
  const auto at = text.find('@');
  const auto comma = text.find(',', at == std::string::npos ? 0 : at);
  if (at == std::string::npos || comma == std::string::npos) throw UsageError("fault must look like Jplus@1,2");
  const auto op = operator_from_name(text.substr(0, at));
  if (!op) throw UsageError("unknown operator in fault '" + text + "'");
  double n = 0.0;
  double p = 0.0;
  if (!parse_double(std::string_view(text).substr(at + 1, comma - at - 1), n) ||
      !parse_double(std::string_view(text).substr(comma + 1), p))
    throw UsageError("fault must look like Jplus@1,2");
  return SignFault{*op, BasisIndex(static_cast<int>(n), static_cast<int>(p))};
}

int run_verify(VerifyArgs a) {
  std::vector<Suite> suites;
  if (a.suite == "all") {
    suites = all_suites();
  } else {
    suites.push_back(*suite_from_name(a.suite));
  }
  if (!a.fault.empty()) a.options.fault = parse_fault(a.fault);
  const VerifyReport report = run_verification(suites, a.options);
  std::cout << report.to_json().dump(2) << '\n';
  for (const auto& name : report.failed_checks()) std::cerr << "FAILED: " << name << '\n';
  return report.pass() ? 0 : kExitFailure;
}

unsigned default_workers() {
  const char* env = std::getenv("LADDER_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  double v = 0.0;
  if (!parse_double(env, v) || v < 1 || v != std::floor(v)) throw UsageError("LADDER_WORKERS must be a positive integer");
  return static_cast<unsigned>(v);
}

// ---------------------------------------------------------------------------
// gram

struct GramArgs {
  std::string kind = "family";
  int alpha = 0;
  int nmax = 10;
  int order = 64;
  int angular = 64;
  int jmax = 6;
};

int run_gram(const GramArgs& a) {
  if (a.kind == "family") {
    if (a.nmax < 0) throw UsageError("--nmax must be non-negative");
    const QuadratureRule rule = gauss_laguerre(a.order);
    const auto members = family(a.alpha, a.nmax + 1);
    const int first = std::max(0, -a.alpha);
    std::cout << "n,m,value\n";
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t k = 0; k < members.size(); ++k)
        std::cout << first + i << ',' << first + k << ',' << format17(inner_product(members[i], members[k], rule))
                  << '\n';
    return 0;
  }
  const PolarGrid grid(a.order, a.angular);
  grid.require_jmax(a.jmax);
  std::vector<ModeIndex> modes;
  for (int j = 0; j <= a.jmax; ++j)
    for (int m = -j; m <= j; ++m) modes.emplace_back(j, m);
  std::cout << "j,m,j2,m2,re,im\n";
  for (ModeIndex x : modes)
    for (ModeIndex y : modes)
      std::cout << x.j << ',' << x.m << ',' << y.j << ',' << y.m << ',' << format17(inner_product_2d(x, y, grid))
                << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// decompose / modes

void write_modes(const ModeCoefficients& c, double min_power) {
  std::cout << "j,m,re,im,power\n";
  double total = 0.0;
  for (const auto& [idx, amp] : c.amplitudes) {
    const double power = std::norm(amp);
    total += power;
    if (power < min_power) continue;
    std::cout << idx.j << ',' << idx.m << ',' << format17(amp) << ',' << format17(power) << '\n';
  }
  std::cerr << "total power: " << format17(total) << '\n';
}

// Reads `r,phi,re,im` rows (radial-major) and infers the polar grid they sample.
Field2D read_field(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) { throw UsageError("line " + std::to_string(line_no) + ": " + why); };

  if (!std::getline(in, line)) throw UsageError("line 1: empty input, expected header r,phi,re,im");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,phi,re,im") fail("expected header r,phi,re,im");

  struct Row {
    double r, phi, re, im;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    if (cells.size() != 4) fail("expected 4 fields, found " + std::to_string(cells.size()));
    Row row{0, 0, 0, 0, line_no};
    double* slots[] = {&row.r, &row.phi, &row.re, &row.im};
    for (int i = 0; i < 4; ++i)
      if (!parse_double(cells[i], *slots[i])) fail("non-numeric value '" + std::string(cells[i]) + "'");
    rows.push_back(row);
  }
  if (rows.empty()) throw UsageError("line " + std::to_string(line_no) + ": no samples");

  std::size_t angular = 1;
  while (angular < rows.size() && rows[angular].r == rows[0].r) ++angular;
  if (rows.size() % angular != 0)
    throw UsageError("sample count " + std::to_string(rows.size()) + " is not a multiple of the " +
                     std::to_string(angular) + " angular nodes in the first ring");
  const int order = static_cast<int>(rows.size() / angular);
  if (order > kMaxQuadratureOrder)
    throw UsageError("field has " + std::to_string(order) + " radial rings; at most " +
                     std::to_string(kMaxQuadratureOrder) + " are supported");
  PolarGrid grid(order, static_cast<int>(angular));

  std::vector<Complex> samples(rows.size());
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const Row& row = rows[s];
    const int k = static_cast<int>(s / angular);
    const int q = static_cast<int>(s % angular);
    const double r = grid.radial_nodes()[k];
    const double phi = grid.angular_nodes()[q];
    if (std::abs(row.r - r) > 1e-9 * r || std::abs(row.phi - phi) > 1e-9) {
      line_no = row.line;
      fail("sample (r=" + format17(row.r) + ", phi=" + format17(row.phi) + ") is not node (" + std::to_string(k) +
           "," + std::to_string(q) + ") of the polar grid with radial order " + std::to_string(order) + " and " +
           std::to_string(angular) + " angular nodes");
    }
    samples[s] = Complex(row.re, row.im);
  }
  return Field2D(std::move(grid), std::move(samples));
}

struct DecomposeArgs {
  std::string input = "-";
  int jmax = 6;
  double min_power = 1e-20;
};

int run_decompose(const DecomposeArgs& a) {
  Field2D field = [&] {
    if (a.input == "-") return read_field(std::cin);
    std::ifstream in(a.input);
    if (!in) throw UsageError("cannot open input file '" + a.input + "'");
    return read_field(in);
  }();
  write_modes(decompose(field, a.jmax), a.min_power);
  return 0;
}

struct ModesArgs {
  std::vector<std::string> modes;
  std::vector<std::string> apply;
  bool synthesize = false;
  int order = 64;
  int angular = 64;
  double min_power = 0.0;
};

int run_modes(const ModesArgs& a) {
  if (a.modes.empty()) throw UsageError("at least one --mode j,m,re,im is required");
  ModeCoefficients c;
  for (const std::string& text : a.modes) {
    const auto cells = split_commas(text);
    double v[4] = {0, 0, 0, 0};
    if (cells.size() < 2 || cells.size() > 4) throw UsageError("--mode expects j,m[,re[,im]], got '" + text + "'");
    v[2] = 1.0;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!parse_double(cells[i], v[i])) throw UsageError("--mode expects numbers, got '" + text + "'");
    if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) throw DomainError("plane modes need integer j and m");
    const ModeIndex idx(static_cast<int>(v[0]), static_cast<int>(v[1]));
    c.amplitudes[idx] += Complex(v[2], v[3]);
    c.jmax = std::max(c.jmax, idx.j);
  }
  for (const std::string& name : a.apply) {
    if (name == "Jplus") {
      c = apply_mode_operator(ModeOperator::Jplus, c);
    } else if (name == "Jminus") {
      c = apply_mode_operator(ModeOperator::Jminus, c);
    } else if (name == "J3") {
      c = apply_mode_operator(ModeOperator::J3, c);
    } else {
      throw UsageError("--apply accepts Jplus, Jminus or J3, got '" + name + "'");
    }
  }
  if (!a.synthesize) {
    write_modes(c, a.min_power);
    return 0;
  }
  const PolarGrid grid(a.order, a.angular);
  grid.require_jmax(c.jmax);
  const Field2D field = reconstruct(c, grid);
  std::cout << "r,phi,re,im\n";
  for (int k = 0; k < grid.radial_order(); ++k)
    for (int q = 0; q < grid.angular_count(); ++q)
      std::cout << format17(grid.radial_nodes()[k]) << ',' << format17(grid.angular_nodes()[q]) << ','
                << format17(field.at(k, q)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laguerre ladder operators: exact evaluation, verification and plane-mode tools", "ladder"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate M_n^(alpha), scriptM_{n,p}, scriptL_j^m or Z_j^m");
  add_family_options(eval_cmd, eval_args.family, true);
  eval_cmd->add_option("--x", eval_args.x, "Point(s) x >= 0");
  eval_cmd->add_option("--r", eval_args.r, "Radius (Z)");
  eval_cmd->add_option("--phi", eval_args.phi, "Angle in [-pi, pi) (Z)");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "Tabulate a carrier on a uniform x grid as CSV x,value");
  add_family_options(table_cmd, table_args.family, false);
  table_cmd->add_option("--from", table_args.from, "First x")->capture_default_str();
  table_cmd->add_option("--to", table_args.to, "Last x")->capture_default_str();
  table_cmd->add_option("--count", table_args.count, "Number of points")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run identity suites and print a JSON report");
  verify_cmd->add_option("--suite", verify_args.suite, "Suite to run")
      ->check(CLI::IsMember({"exact", "algebra", "quadrature", "plane", "so32", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--nmax", verify_args.options.nmax, "Largest label in exact and label-space checks [1, 30]")
      ->capture_default_str();
  verify_cmd->add_option("--order", verify_args.options.order, "Gauss-Laguerre order [23, 200]")->capture_default_str();
  verify_cmd->add_option("--angular", verify_args.options.angular, "Angular nodes, a power of two")
      ->capture_default_str();
  verify_cmd->add_option("--jmax", verify_args.options.jmax, "Largest plane-mode j [0, 16]")->capture_default_str();
  verify_cmd->add_option("--workers", verify_args.options.workers, "Worker threads (default: LADDER_WORKERS or 1)");
  verify_cmd->add_option("--inject-fault", verify_args.fault, "Flip the sign of one matrix element, e.g. Jplus@1,2")
      ->group("");

  GramArgs gram_args;
  auto* gram_cmd = app.add_subcommand("gram", "Dump a Gram matrix as CSV");
  gram_cmd->add_option("--kind", gram_args.kind, "family: M_n^(alpha) on the line; plane: Z_j^m on the polar grid")
      ->check(CLI::IsMember({"family", "plane"}))
      ->capture_default_str();
  gram_cmd->add_option("--alpha", gram_args.alpha, "Family order alpha")->capture_default_str();
  gram_cmd->add_option("--nmax", gram_args.nmax, "Number of family members minus one")->capture_default_str();
  gram_cmd->add_option("--order", gram_args.order, "Gauss-Laguerre order")->capture_default_str();
  gram_cmd->add_option("--angular", gram_args.angular, "Angular nodes (plane)")->capture_default_str();
  gram_cmd->add_option("--jmax", gram_args.jmax, "Largest j (plane)")->capture_default_str();

  DecomposeArgs decompose_args;
  auto* decompose_cmd = app.add_subcommand("decompose", "Decompose a sampled field (CSV r,phi,re,im) into Z_j^m modes");
  decompose_cmd->add_option("input", decompose_args.input, "Field CSV, '-' for standard input")->capture_default_str();
  decompose_cmd->add_option("--jmax", decompose_args.jmax, "Largest j")->capture_default_str();
  decompose_cmd->add_option("--min-power", decompose_args.min_power, "Omit modes with smaller |c|^2")
      ->capture_default_str();

  ModesArgs modes_args;
  auto* modes_cmd = app.add_subcommand("modes", "Apply J+, J-, J3 to a mode spectrum or synthesize its field");
  modes_cmd->add_option("--mode", modes_args.modes, "Mode j,m[,re[,im]] (repeatable)");
  modes_cmd->add_option("--apply", modes_args.apply, "Operator applied in order: Jplus, Jminus, J3");
  modes_cmd->add_flag("--synthesize", modes_args.synthesize, "Print the field on the polar grid as r,phi,re,im");
  modes_cmd->add_option("--order", modes_args.order, "Radial order for --synthesize")->capture_default_str();
  modes_cmd->add_option("--angular", modes_args.angular, "Angular nodes for --synthesize")->capture_default_str();
  modes_cmd->add_option("--min-power", modes_args.min_power, "Omit modes with smaller |c|^2")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval_args);
    if (*table_cmd) return run_table(table_args);
    if (*verify_cmd) {
      if (verify_cmd->count("--workers") == 0) verify_args.options.workers = default_workers();
      return run_verify(verify_args);
    }
    if (*gram_cmd) return run_gram(gram_args);
    if (*decompose_cmd) return run_decompose(decompose_args);
    if (*modes_cmd) return run_modes(modes_args);
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
