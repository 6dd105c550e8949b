#include "ladder/so32.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

constexpr std::size_t kMinStates = 12;

std::string pair_name(OperatorName a, OperatorName b) {
  return "[" + std::string(name_of(a)) + ", " + std::string(name_of(b)) + "]";
}

// Stacks the sampled matrix elements of every basis generator into a design
// matrix; rows are (sample state, output label) pairs.
class Design {
 public:
  Design(std::span<const BasisIndex> states, const Realization& realization) : states_(states.begin(), states.end()) {
    if (states_.size() < kMinStates)
      throw ConfigurationError("structure-constant fit needs at least " + std::to_string(kMinStates) +
                               " sample states, got " + std::to_string(states_.size()));
    for (std::size_t s = 0; s < states_.size(); ++s) {
      const RealLabelVector e = RealLabelVector::basis(states_[s]);
      for (std::size_t d = 0; d < kSo32Basis.size(); ++d) {
        const RealLabelVector image = apply_label(kSo32Basis[d], e, realization);
        for (const auto& [label, c] : image.terms()) entries_.push_back({row(s, label), static_cast<int>(d), c});
      }
    }
    matrix_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_.size()), kSo32Basis.size());
    for (const auto& entry : entries_) matrix_(entry.row, entry.column) += entry.value;
    qr_.compute(matrix_);
    if (qr_.rank() < static_cast<Eigen::Index>(kSo32Basis.size()))
      throw ConfigurationError("sample states leave the generator fit underdetermined (rank " +
                               std::to_string(qr_.rank()) + " < 10)");
  }

  std::pair<GeneratorVector, double> fit(const std::function<RealLabelVector(const RealLabelVector&)>& action) {
    std::vector<std::pair<int, double>> targets;
    for (std::size_t s = 0; s < states_.size(); ++s) {
      const RealLabelVector image = action(RealLabelVector::basis(states_[s]));
      for (const auto& [label, c] : image.terms()) targets.emplace_back(row(s, label), c);
    }

    // New rows may appear when the action leaves the span of the generators.
    const auto rows = static_cast<Eigen::Index>(rows_.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (const auto& [r, c] : targets) rhs(r) += c;

    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, kSo32Basis.size());
    design.topRows(matrix_.rows()) = matrix_;
    Eigen::VectorXd solution = qr_.solve(rhs.head(matrix_.rows()));
    const double residual = rows == 0 ? 0.0 : (design * solution - rhs).cwiseAbs().maxCoeff();

    GeneratorVector out{};
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = solution(static_cast<Eigen::Index>(d));
    return {out, residual};
  }

 private:
  struct Entry {
    int row;
    int column;
    double value;
  };

  int row(std::size_t state, BasisIndex label) {
    auto [it, inserted] = rows_.try_emplace({state, label}, static_cast<int>(rows_.size()));
    return it->second;
  }

  std::vector<BasisIndex> states_;
  std::map<std::pair<std::size_t, BasisIndex>, int> rows_;
  std::vector<Entry> entries_;
  Eigen::MatrixXd matrix_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

}  // namespace

bool in_so32(OperatorName op) {
  switch (op) {
    case OperatorName::Jplus:
    case OperatorName::Jminus:
    case OperatorName::J3:
    case OperatorName::Kplus:
    case OperatorName::Kminus:
    case OperatorName::K3:
    case OperatorName::Rplus:
    case OperatorName::Rminus:
    case OperatorName::R3:
    case OperatorName::Splus:
    case OperatorName::Sminus:
    case OperatorName::S3:
      return true;
    default:
      return false;
  }
}

std::optional<int> so32_basis_position(OperatorName op) {
  for (std::size_t d = 0; d < kSo32Basis.size(); ++d)
    if (kSo32Basis[d] == op) return static_cast<int>(d);
  return std::nullopt;
}

StructureConstants::StructureConstants(std::vector<PairFit> fits, double tolerance)
    : fits_(std::move(fits)), tolerance_(tolerance) {
  for (const auto& f : fits_) {
    if (f.in_so32 && f.residual >= max_residual_) {
      max_residual_ = f.residual;
      worst_pair_ = {f.a, f.b};
    }
    auto a = so32_basis_position(f.a);
    auto b = so32_basis_position(f.b);
    if (a && b) table_[*a][*b] = f.coefficients;
  }
}

const PairFit& StructureConstants::fit(OperatorName a, OperatorName b) const {
  for (const auto& f : fits_)
    if (f.a == a && f.b == b) return f;
  throw DomainError("no fit recorded for " + pair_name(a, b));
}

double StructureConstants::antisymmetry_defect() const {
  double worst = 0.0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int d = 0; d < 10; ++d) worst = std::max(worst, std::abs(table_[a][b][d] + table_[b][a][d]));
  return worst;
}

double StructureConstants::jacobi_defect() const {
  double worst = 0.0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c)
        for (int e = 0; e < 10; ++e) {
          double sum = 0.0;
          for (int d = 0; d < 10; ++d)
            sum += table_[a][b][d] * table_[d][c][e] + table_[b][c][d] * table_[d][a][e] +
                   table_[c][a][d] * table_[d][b][e];
          worst = std::max(worst, std::abs(sum));
        }
  return worst;
}

std::vector<BasisIndex> default_sample_states() {
  return {{2, 2}, {2, 3}, {3, 2}, {2, 5}, {5, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}, {3, 6}, {6, 4}, {5, 5}};
}

std::pair<GeneratorVector, double> expand_operator(OperatorName op, std::span<const BasisIndex> states,
                                                   const Realization& realization) {
  Design design(states, realization);
  return design.fit([&](const RealLabelVector& v) { return apply_label(op, v, realization); });
}

StructureConstants derive_structure_constants(std::span<const BasisIndex> states, const Realization& realization,
                                              double tolerance) {
  Design design(states, realization);
  std::vector<PairFit> fits;
  fits.reserve(kNamedGenerators.size() * kNamedGenerators.size());
  for (OperatorName a : kNamedGenerators) {
    for (OperatorName b : kNamedGenerators) {
      auto [coefficients, residual] =
          design.fit([&](const RealLabelVector& v) { return commutator_label(a, b, v, realization); });
      fits.push_back(PairFit{a, b, coefficients, residual, in_so32(a) && in_so32(b)});
    }
  }
  return StructureConstants(std::move(fits), tolerance);
}

KillingMatrix killing_form(const StructureConstants& sc) {
  KillingMatrix killing = KillingMatrix::Zero();
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) {
      double sum = 0.0;
      for (int c = 0; c < 10; ++c)
        for (int d = 0; d < 10; ++d) sum += sc.constant(a, c, d) * sc.constant(b, d, c);
      killing(a, b) = sum;
    }
  return killing;
}

double su2_killing_proportionality_residual(const StructureConstants& sc) {
  const std::array<int, 3> sub{*so32_basis_position(OperatorName::Jplus), *so32_basis_position(OperatorName::Jminus),
                               *so32_basis_position(OperatorName::J3)};
  const KillingMatrix full = killing_form(sc);

  Eigen::Matrix3d block;
  Eigen::Matrix3d own;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      block(i, k) = full(sub[i], sub[k]);
      double sum = 0.0;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) sum += sc.constant(sub[i], sub[c], sub[d]) * sc.constant(sub[k], sub[d], sub[c]);
      own(i, k) = sum;
    }
  if (own(2, 2) == 0.0) throw NumericalError("su(2) Killing form vanishes on J3");
  const double ratio = block(2, 2) / own(2, 2);
  return (block - ratio * own).cwiseAbs().maxCoeff() / block.cwiseAbs().maxCoeff();
}

KillingCasimir killing_casimir(const StructureConstants& sc, BasisIndex idx, const Realization& realization) {
  if (sc.residual_flag()) {
    auto [a, b] = sc.worst_pair();
    throw ClosureError("commutator " + pair_name(a, b) + " does not close on so(3,2)");
  }
  const KillingMatrix killing = killing_form(sc);
  Eigen::FullPivLU<KillingMatrix> lu(killing);
  if (!lu.isInvertible()) throw NumericalError("Killing form is degenerate");
  const KillingMatrix inverse = lu.inverse();

  const int jp = *so32_basis_position(OperatorName::Jplus);
  const int jm = *so32_basis_position(OperatorName::Jminus);
  const int j3 = *so32_basis_position(OperatorName::J3);
  const double normalization = 1.0 / inverse(j3, j3);
  const double off_diagonal = 0.5 * (inverse(jp, jm) + inverse(jm, jp)) * normalization;
  if (std::abs(off_diagonal - 0.5) > 1e-10)
    throw ConsistencyError("inverse Killing form is not proportional to J3^2 + {J+, J-}/2 on su(2)");

  const RealLabelVector e = RealLabelVector::basis(idx);
  std::array<RealLabelVector, 10> once;
  for (int b = 0; b < 10; ++b) once[b] = apply_label(kSo32Basis[b], e, realization);

  RealLabelVector omega;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) {
      const double weight = normalization * inverse(a, b);
      if (weight == 0.0) continue;
      omega += apply_label(kSo32Basis[a], once[b], realization) * weight;
    }

  const double value = omega.coefficient(idx);
  for (const auto& [label, c] : omega.terms())
    if (label != idx && std::abs(c) > 1e-9)
      throw ConsistencyError("Killing Casimir maps |" + std::to_string(idx.n) + "," + std::to_string(idx.p) +
                             "> off the diagonal");
  return {value, normalization};
}

}  // namespace ladder
