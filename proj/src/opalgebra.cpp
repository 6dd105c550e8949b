#include "ladder/opalgebra.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

constexpr std::array<std::pair<OperatorName, std::string_view>, 21> kNames{{
    {OperatorName::Aplus, "Aplus"},   {OperatorName::Aminus, "Aminus"}, {OperatorName::Bplus, "Bplus"},
    {OperatorName::Bminus, "Bminus"}, {OperatorName::Jplus, "Jplus"},   {OperatorName::Jminus, "Jminus"},
    {OperatorName::J3, "J3"},         {OperatorName::Kplus, "Kplus"},   {OperatorName::Kminus, "Kminus"},
    {OperatorName::K3, "K3"},         {OperatorName::Rplus, "Rplus"},   {OperatorName::Rminus, "Rminus"},
    {OperatorName::R3, "R3"},         {OperatorName::Splus, "Splus"},   {OperatorName::Sminus, "Sminus"},
    {OperatorName::S3, "S3"},         {OperatorName::X, "X"},           {OperatorName::Dx, "Dx"},
    {OperatorName::N, "N"},           {OperatorName::P, "P"},           {OperatorName::E, "E"},
}};

}  // namespace

std::string_view name_of(OperatorName op) {
  for (const auto& [o, name] : kNames)
    if (o == op) return name;
  return "?";
}

std::optional<OperatorName> operator_from_name(std::string_view name) {
  for (const auto& [o, n] : kNames)
    if (n == name) return o;
  return std::nullopt;
}

bool is_diagonal(OperatorName op) {
  switch (op) {
    case OperatorName::N:
    case OperatorName::P:
    case OperatorName::J3:
    case OperatorName::K3:
    case OperatorName::R3:
    case OperatorName::S3:
    case OperatorName::E:
      return true;
    default:
      return false;
  }
}

bool has_label_action(OperatorName op) { return op != OperatorName::X && op != OperatorName::Dx; }

bool has_differential_form(OperatorName op) {
  switch (op) {
    case OperatorName::Aplus:
    case OperatorName::Aminus:
    case OperatorName::Rplus:
    case OperatorName::Rminus:
    case OperatorName::Splus:
    case OperatorName::Sminus:
      return false;
    default:
      return true;
  }
}

const Realization& Realization::standard() {
  static const Realization instance;
  return instance;
}

Realization Realization::with_sign_fault(OperatorName op, BasisIndex at) {
  Realization r;
  r.fault_ = Fault{op, at};
  return r;
}

std::optional<LadderStep> Realization::step(OperatorName op, BasisIndex from) const {
  const int n = from.n;
  const int p = from.p;
  std::optional<LadderStep> out;
  switch (op) {
    case OperatorName::Aplus:
      out = LadderStep{BasisIndex(n + 1, p), Rational(n + 1)};
      break;
    case OperatorName::Aminus:
      if (n > 0) out = LadderStep{BasisIndex(n - 1, p), Rational(n)};
      break;
    case OperatorName::Bplus:
      out = LadderStep{BasisIndex(n, p + 1), Rational(p + 1)};
      break;
    case OperatorName::Bminus:
      if (p > 0) out = LadderStep{BasisIndex(n, p - 1), Rational(p)};
      break;
    case OperatorName::Jplus:
      if (p > 0) out = LadderStep{BasisIndex(n + 1, p - 1), Rational((n + 1) * p)};
      break;
    case OperatorName::Jminus:
      if (n > 0) out = LadderStep{BasisIndex(n - 1, p + 1), Rational(n * (p + 1))};
      break;
    case OperatorName::Kplus:
      out = LadderStep{BasisIndex(n + 1, p + 1), Rational((n + 1) * (p + 1))};
      break;
    case OperatorName::Kminus:
      if (n > 0 && p > 0) out = LadderStep{BasisIndex(n - 1, p - 1), Rational(n * p)};
      break;
    default:
      throw UnsupportedOperatorError(std::string(name_of(op)) + " is not a primitive ladder generator");
  }
  if (out && fault_ && fault_->op == op && fault_->at == from) out->sign = -out->sign;
  return out;
}

Rational Realization::eigenvalue(OperatorName op, BasisIndex at) const {
  const Rational n(at.n);
  const Rational p(at.p);
  switch (op) {
    case OperatorName::N:
      return n;
    case OperatorName::P:
      return p;
    case OperatorName::J3:
      return (n - p) / 2;
    case OperatorName::K3:
      return (n + p + 1) / 2;
    case OperatorName::R3:  // J + M + 1/2
      return n + Rational(1, 2);
    case OperatorName::S3:  // J - M + 1/2
      return p + Rational(1, 2);
    case OperatorName::E:
      return 0;
    default:
      throw UnsupportedOperatorError(std::string(name_of(op)) + " is not diagonal on the basis");
  }
}

template <class T>
LabelVector<T> apply_label(OperatorName op, const LabelVector<T>& v, const Realization& realization) {
  using Traits = ScalarTraits<T>;
  if (!has_label_action(op))
    throw UnsupportedOperatorError(std::string(name_of(op)) + " has no label-space action");

  auto compose = [&](OperatorName outer, OperatorName inner) {
    return apply_label(outer, apply_label(inner, v, realization), realization);
  };

  switch (op) {
    // R+ = [J+, K+], R- = -[J-, K-], S+ = [J-, K+], S- = -[J+, K-]
    case OperatorName::Rplus:
      return compose(OperatorName::Jplus, OperatorName::Kplus) - compose(OperatorName::Kplus, OperatorName::Jplus);
    case OperatorName::Rminus:
      return compose(OperatorName::Kminus, OperatorName::Jminus) -
             compose(OperatorName::Jminus, OperatorName::Kminus);
    case OperatorName::Splus:
      return compose(OperatorName::Jminus, OperatorName::Kplus) - compose(OperatorName::Kplus, OperatorName::Jminus);
    case OperatorName::Sminus:
      return compose(OperatorName::Kminus, OperatorName::Jplus) - compose(OperatorName::Jplus, OperatorName::Kminus);
    default:
      break;
  }

  LabelVector<T> out;
  if (is_diagonal(op)) {
    for (const auto& [idx, c] : v.terms()) out.add(idx, c * Traits::from(realization.eigenvalue(op, idx)));
    return out;
  }
  for (const auto& [idx, c] : v.terms()) {
    auto step = realization.step(op, idx);
    if (!step) continue;
    T element = Traits::sqrt_of(step->squared);
    if (step->sign < 0) element = -element;
    out.add(step->target, c * element);
  }
  return out;
}

template <class T>
LabelVector<T> commutator_label(OperatorName a, OperatorName b, const LabelVector<T>& v,
                                const Realization& realization) {
  return apply_label(a, apply_label(b, v, realization), realization) -
         apply_label(b, apply_label(a, v, realization), realization);
}

template LabelVector<double> apply_label(OperatorName, const LabelVector<double>&, const Realization&);
template LabelVector<Surd> apply_label(OperatorName, const LabelVector<Surd>&, const Realization&);
template LabelVector<double> commutator_label(OperatorName, OperatorName, const LabelVector<double>&,
                                              const Realization&);
template LabelVector<Surd> commutator_label(OperatorName, OperatorName, const LabelVector<Surd>&,
                                            const Realization&);

DiffEvaluation apply_diff_detailed(OperatorName op, const Carrier& c, double x) {
  if (!has_differential_form(op))
    throw UnsupportedOperatorError(std::string(name_of(op)) + " is only realized in label space");
  if (!c.label()) throw DomainError("carrier has no (n, p) label to substitute for N and P");
  if (!(x > 0.0)) throw DomainError("differential forms are evaluated on x > 0");

  const double n = c.label()->n;
  const double p = c.label()->p;
  const double f = eval(c, x);
  const double f1 = eval_derivative(c, x, 1);
  const double sx = std::sqrt(x);

  DiffEvaluation out;
  auto terms = [&out](std::initializer_list<double> parts) {
    for (double t : parts) {
      out.value += t;
      out.scale = std::max(out.scale, std::abs(t));
    }
  };

  switch (op) {
    case OperatorName::Bplus:
    case OperatorName::Bminus: {
      // b+- = -+ sqrt(X) D + sqrt(X)/2 + (P - N) / (2 sqrt(X))
      const double sign = op == OperatorName::Bplus ? -1.0 : 1.0;
      terms({sign * sx * f1, 0.5 * sx * f, (p - n) / (2.0 * sx) * f});
      break;
    }
    case OperatorName::Jplus:
    case OperatorName::Jminus: {
      // J+- = -+ D (N - P +- 1) + (N - P +- 1)(N - P) / (2X) - (N + P + 1) / 2
      const double pm = op == OperatorName::Jplus ? 1.0 : -1.0;
      const double shift = n - p + pm;
      terms({-pm * shift * f1, shift * (n - p) / (2.0 * x) * f, -0.5 * (n + p + 1.0) * f});
      break;
    }
    case OperatorName::Kplus:
      terms({x * f1, 0.5 * (n + p + 2.0) * f, -0.5 * x * f});
      break;
    case OperatorName::Kminus:
      terms({-x * f1, 0.5 * (n + p) * f, -0.5 * x * f});
      break;
    case OperatorName::X:
      terms({x * f});
      break;
    case OperatorName::Dx:
      terms({f1});
      break;
    case OperatorName::E: {
      // X D^2 + D + (N + P + 1)/2 - (P - N)^2 / (4X) - X/4
      const double f2 = eval_derivative(c, x, 2);
      terms({x * f2, f1, 0.5 * (n + p + 1.0) * f, -(p - n) * (p - n) / (4.0 * x) * f, -0.25 * x * f});
      break;
    }
    default:
      terms({Realization::standard().eigenvalue(op, *c.label()).get_d() * f});
      break;
  }
  return out;
}

double apply_diff(OperatorName op, const Carrier& c, double x) { return apply_diff_detailed(op, c, x).value; }

double eval_label(const RealLabelVector& v, double x) {
  double sum = 0.0;
  for (const auto& [idx, c] : v.terms()) sum += c * eval(carrier_M(idx), x);
  return sum;
}

LaurentPoly e_residual_symbolic(BasisIndex idx) {
  const Carrier canonical = carrier_M(idx);
  const Carrier bare(1, 1, canonical.half_power(), canonical.core());
  const Carrier d1 = differentiate(bare);
  const Carrier d2 = differentiate(d1);
  const LaurentPoly& c = bare.core();

  LaurentPoly g = d2.core().shifted(1);
  g += d1.core();
  g += c * Rational(idx.n + idx.p + 1, 2);
  g -= c.shifted(-1) * Rational((idx.p - idx.n) * (idx.p - idx.n), 4);
  g -= c.shifted(1) * Rational(1, 4);
  return g;
}

std::string_view name_of(CasimirKind kind) {
  switch (kind) {
    case CasimirKind::Cp:
      return "Cp";
    case CasimirKind::Csu2:
      return "Csu2";
    case CasimirKind::Csu11:
      return "Csu11";
    case CasimirKind::CR:
      return "CR";
    case CasimirKind::CS:
      return "CS";
  }
  return "?";
}

Rational casimir_eigenvalue(CasimirKind kind, BasisIndex idx, const Realization& realization) {
  const ExactLabelVector e = ExactLabelVector::basis(idx);
  auto two = [&](OperatorName outer, OperatorName inner) {
    return apply_label(outer, apply_label(inner, e, realization), realization);
  };
  const Surd half(Rational(1, 2));

  ExactLabelVector result;
  switch (kind) {
    case CasimirKind::Cp:
      // {b-, b+} - 2(P + 1/2)
      result = two(OperatorName::Bminus, OperatorName::Bplus) + two(OperatorName::Bplus, OperatorName::Bminus) -
               apply_label(OperatorName::P, e, realization) * Surd(2) - e;
      break;
    case CasimirKind::Csu2:
      result = two(OperatorName::J3, OperatorName::J3) +
               (two(OperatorName::Jplus, OperatorName::Jminus) + two(OperatorName::Jminus, OperatorName::Jplus)) * half;
      break;
    case CasimirKind::Csu11:
      result = two(OperatorName::K3, OperatorName::K3) -
               (two(OperatorName::Kplus, OperatorName::Kminus) + two(OperatorName::Kminus, OperatorName::Kplus)) * half;
      break;
    case CasimirKind::CR:
      result = two(OperatorName::R3, OperatorName::R3) -
               (two(OperatorName::Rplus, OperatorName::Rminus) + two(OperatorName::Rminus, OperatorName::Rplus)) * half;
      break;
    case CasimirKind::CS:
      result = two(OperatorName::S3, OperatorName::S3) -
               (two(OperatorName::Splus, OperatorName::Sminus) + two(OperatorName::Sminus, OperatorName::Splus)) * half;
      break;
  }

  for (const auto& [label, c] : result.terms())
    if (label != idx)
      throw ConsistencyError(std::string(name_of(kind)) + " maps |" + std::to_string(idx.n) + "," +
                             std::to_string(idx.p) + "> off the diagonal");
  return result.coefficient(idx).rational_value();
}

Rational casimir_expected(CasimirKind kind, BasisIndex idx) {
  const Rational j = idx.j();
  const Rational m = idx.m();
  switch (kind) {
    case CasimirKind::Cp:
      return 0;
    case CasimirKind::Csu2:
      return j * (j + 1);
    case CasimirKind::Csu11:
      return m * m - Rational(1, 4);
    case CasimirKind::CR:
    case CasimirKind::CS:
      return Rational(-3, 4);
  }
  return 0;
}

}  // namespace ladder
