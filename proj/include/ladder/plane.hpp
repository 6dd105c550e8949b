#pragma once

// Plane modes Z_j^m(r, phi) = e^{i m phi} L_j^m(r^2) on L2(R^2): evaluation,
// discrete orthonormality on a polar Gauss-Laguerre x uniform grid,
// decomposition/synthesis of sampled fields, and the phase-dressed su(2)
// operators acting on mode spectra.

#include <complex>
#include <map>

#include "ladder/quadrature.hpp"
#include "ladder/surd.hpp"

namespace ladder {

using Complex = std::complex<double>;

/// Integer (j, m) with |m| <= j.
struct ModeIndex {
  int j = 0;
  int m = 0;

  ModeIndex() = default;
  ModeIndex(int j_, int m_);

  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

/// Radial nodes r_k = sqrt(x_k) of a Gauss-Laguerre rule in x = r^2, uniform
/// angles phi_q = -pi + 2 pi q / Q. Integrates (1/2pi) int dphi int 2r dr.
class PolarGrid {
 public:
  PolarGrid(int radial_order, int angular_count);

  int radial_order() const { return rule_.order(); }
  int angular_count() const { return angular_count_; }
  std::size_t size() const { return rule_.nodes.size() * static_cast<std::size_t>(angular_count_); }

  const std::vector<double>& x_nodes() const { return rule_.nodes; }
  const std::vector<double>& radial_nodes() const { return radii_; }
  /// w_k e^{x_k}: weights for integral_0^inf dx g(x) with the decay inside g.
  const std::vector<double>& radial_weights() const { return rule_.scaled_weights; }
  const std::vector<double>& angular_nodes() const { return angles_; }

  /// Largest j for which every product Z*Z' with j, j' <= jmax is integrated exactly.
  int max_jmax() const;
  /// Throws ConfigurationError naming the missing resolution.
  void require_jmax(int jmax) const;

 private:
  QuadratureRule rule_;
  int angular_count_;
  std::vector<double> radii_;
  std::vector<double> angles_;
};

/// Complex samples, radial-major: sample(k, q) = samples[k * Q + q].
struct Field2D {
  PolarGrid grid;
  std::vector<Complex> samples;

  explicit Field2D(PolarGrid g);
  Field2D(PolarGrid g, std::vector<Complex> s);

  Complex& at(int k, int q) { return samples[static_cast<std::size_t>(k) * grid.angular_count() + q]; }
  const Complex& at(int k, int q) const { return samples[static_cast<std::size_t>(k) * grid.angular_count() + q]; }
};

template <class T>
struct BasicModeCoefficients {
  std::map<ModeIndex, T> amplitudes;
  int jmax = 0;
};

using ModeCoefficients = BasicModeCoefficients<Complex>;
/// Real exact amplitudes; used to check the operator algebra without rounding.
using ExactModeCoefficients = BasicModeCoefficients<Surd>;

Complex eval_Z(ModeIndex idx, double r, double phi);

/// Residual of [d^2/dr^2 + (1/r) d/dr - 4m^2/r^2 - r^2 + 4(j + 1/2)] on L_j^m(r^2),
/// divided by the largest of its terms. r > 0.
double radial_de_residual(ModeIndex idx, double r);

/// (1/2pi) int dphi int 2r dr conj(Z_a) Z_b on the grid.
Complex inner_product_2d(ModeIndex a, ModeIndex b, const PolarGrid& grid);

/// c_{j,m} = <Z_j^m, field> for all j <= jmax.
ModeCoefficients decompose(const Field2D& field, int jmax);

Field2D reconstruct(const ModeCoefficients& coeffs, const PolarGrid& grid);

enum class ModeOperator { Jplus, Jminus, J3 };

/// J3 multiplies by m; J+- moves c_{j,m} to m +- 1 with sqrt((j -+ m)(j +- m + 1)).
template <class T>
BasicModeCoefficients<T> apply_mode_operator(ModeOperator op, const BasicModeCoefficients<T>& coeffs);

extern template ModeCoefficients apply_mode_operator(ModeOperator, const ModeCoefficients&);
extern template ExactModeCoefficients apply_mode_operator(ModeOperator, const ExactModeCoefficients&);

}  // namespace ladder
