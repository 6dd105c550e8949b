#pragma once

// so(3,2) closure of the quadratic generators, derived numerically from the
// label-space actions: structure constants by least squares, Killing form,
// and the quadratic Casimir built from its inverse.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ladder/opalgebra.hpp"

namespace ladder {

/// Basis of so(3,2) used for all expansions. R3 = K3 + J3 and S3 = K3 - J3 are not
/// independent and are expanded like any other operator.
inline constexpr std::array<OperatorName, 10> kSo32Basis{
    OperatorName::Jplus, OperatorName::Jminus, OperatorName::J3, OperatorName::Kplus, OperatorName::Kminus,
    OperatorName::K3,    OperatorName::Rplus,  OperatorName::Rminus, OperatorName::Splus, OperatorName::Sminus,
};

/// The sixteen named generators: h(1)+h(1) ladders followed by the so(3,2) families.
inline constexpr std::array<OperatorName, 16> kNamedGenerators{
    OperatorName::Aplus, OperatorName::Aminus, OperatorName::Bplus,  OperatorName::Bminus,
    OperatorName::Jplus, OperatorName::Jminus, OperatorName::J3,     OperatorName::Kplus,
    OperatorName::Kminus, OperatorName::K3,    OperatorName::Rplus,  OperatorName::Rminus,
    OperatorName::R3,    OperatorName::Splus,  OperatorName::Sminus, OperatorName::S3,
};

bool in_so32(OperatorName op);
std::optional<int> so32_basis_position(OperatorName op);

using GeneratorVector = std::array<double, 10>;
using KillingMatrix = Eigen::Matrix<double, 10, 10>;

struct PairFit {
  OperatorName a;
  OperatorName b;
  GeneratorVector coefficients{};
  double residual = 0.0;
  bool in_so32 = false;  // both operands belong to so(3,2); only these feed the closure flag
};

class StructureConstants {
 public:
  StructureConstants(std::vector<PairFit> fits, double tolerance);

  /// c_{ab}^d with a, b, d positions in kSo32Basis: [X_a, X_b] = sum_d c_{ab}^d X_d.
  double constant(int a, int b, int d) const { return table_[a][b][d]; }
  const PairFit& fit(OperatorName a, OperatorName b) const;
  const std::vector<PairFit>& fits() const { return fits_; }

  bool residual_flag() const { return max_residual_ > tolerance_; }
  double max_residual() const { return max_residual_; }
  /// so(3,2) pair with the largest fit residual.
  std::pair<OperatorName, OperatorName> worst_pair() const { return worst_pair_; }
  double tolerance() const { return tolerance_; }

  double antisymmetry_defect() const;
  double jacobi_defect() const;

 private:
  std::vector<PairFit> fits_;
  std::array<std::array<GeneratorVector, 10>, 10> table_{};
  double tolerance_;
  double max_residual_ = 0.0;
  std::pair<OperatorName, OperatorName> worst_pair_{OperatorName::Jplus, OperatorName::Jplus};
};

/// Twelve interior labels (n, p in [2, 6], both parities of n + p).
std::vector<BasisIndex> default_sample_states();

/// Least-squares expansion of op's label action over kSo32Basis; the second
/// member is the largest absolute residual over the sampled matrix elements.
std::pair<GeneratorVector, double> expand_operator(OperatorName op, std::span<const BasisIndex> states,
                                                   const Realization& realization = Realization::standard());

/// Fits every ordered pair of the sixteen named generators. Throws ConfigurationError
/// for fewer than 12 states or a rank-deficient design.
StructureConstants derive_structure_constants(std::span<const BasisIndex> states,
                                              const Realization& realization = Realization::standard(),
                                              double tolerance = 1e-9);

/// B_ab = sum_{c,d} c_{ac}^d c_{bd}^c
KillingMatrix killing_form(const StructureConstants& sc);

/// Relative deviation of the {J+, J-, J3} block of the Killing form from a multiple
/// of the su(2) Killing form computed from that subalgebra alone.
double su2_killing_proportionality_residual(const StructureConstants& sc);

struct KillingCasimir {
  double eigenvalue = 0.0;
  /// Factor applied to sum B^{ab} X_a X_b so that its su(2) part is J3^2 + {J+, J-}/2.
  double normalization = 0.0;
};

/// Quadratic Casimir from the inverse Killing form, applied to |idx>.
KillingCasimir killing_casimir(const StructureConstants& sc, BasisIndex idx,
                               const Realization& realization = Realization::standard());

}  // namespace ladder
