#include "ladder/plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

Carrier radial_carrier(ModeIndex idx) { return carrier_L(Rational(idx.j), Rational(idx.m)); }

std::vector<double> radial_profile(ModeIndex idx, const std::vector<double>& x_nodes) {
  const Carrier c = radial_carrier(idx);
  std::vector<double> out(x_nodes.size());
  for (std::size_t k = 0; k < x_nodes.size(); ++k) out[k] = eval(c, x_nodes[k]);
  return out;
}

Complex times_sqrt(const Complex& c, const Rational& q) { return c * std::sqrt(q.get_d()); }
Surd times_sqrt(const Surd& c, const Rational& q) { return c * Surd::sqrt_of(q); }
Complex times_rational(const Complex& c, const Rational& q) { return c * q.get_d(); }
Surd times_rational(const Surd& c, const Rational& q) { return c * Surd(q); }
bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
bool is_zero(const Surd& c) { return c.is_zero(); }

}  // namespace

ModeIndex::ModeIndex(int j_, int m_) : j(j_), m(m_) {
  if (j < 0) throw DomainError("mode index j must be non-negative");
  if (std::abs(m) > j) throw DomainError("mode index needs |m| <= j");
}

PolarGrid::PolarGrid(int radial_order, int angular_count) : angular_count_(angular_count) {
  if (angular_count < 1 || (angular_count & (angular_count - 1)) != 0)
    throw ConfigurationError("angular node count must be a power of two, got " + std::to_string(angular_count));
  rule_ = gauss_laguerre(radial_order);
  radii_.reserve(rule_.nodes.size());
  for (double x : rule_.nodes) radii_.push_back(std::sqrt(x));
  angles_.reserve(angular_count);
  for (int q = 0; q < angular_count; ++q)
    angles_.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * q / angular_count);
}

int PolarGrid::max_jmax() const { return std::min(radial_order() - 1, (angular_count_ - 1) / 2); }

void PolarGrid::require_jmax(int jmax) const {
  if (jmax < 0) throw ConfigurationError("jmax must be non-negative");
  if (radial_order() < jmax + 1)
    throw ConfigurationError("radial order " + std::to_string(radial_order()) + " too low for jmax " +
                             std::to_string(jmax) + "; required order " + std::to_string(jmax + 1));
  if (angular_count_ <= 2 * jmax)
    throw ConfigurationError("angular count " + std::to_string(angular_count_) + " too low for jmax " +
                             std::to_string(jmax) + "; need more than " + std::to_string(2 * jmax));
}

Field2D::Field2D(PolarGrid g) : grid(std::move(g)), samples(grid.size()) {}

Field2D::Field2D(PolarGrid g, std::vector<Complex> s) : grid(std::move(g)), samples(std::move(s)) {
  if (samples.size() != grid.size())
    throw ConfigurationError("field has " + std::to_string(samples.size()) + " samples, grid expects " +
                             std::to_string(grid.size()));
}

Complex eval_Z(ModeIndex idx, double r, double phi) {
  if (!(r >= 0.0)) throw DomainError("r must be non-negative");
  if (!(phi >= -std::numbers::pi && phi < std::numbers::pi)) throw DomainError("phi must lie in [-pi, pi)");
  return std::polar(1.0, idx.m * phi) * eval(radial_carrier(idx), r * r);
}

double radial_de_residual(ModeIndex idx, double r) {
  if (!(r > 0.0)) throw DomainError("radial equation is evaluated on r > 0");
  const Carrier c = radial_carrier(idx);
  const double x = r * r;
  const double f = eval(c, x);
  const double f1 = eval_derivative(c, x, 1);
  const double f2 = eval_derivative(c, x, 2);
  // R = f(r^2): R'' = 2 f' + 4 r^2 f'', R'/r = 2 f'
  const double terms[] = {2.0 * f1,
                          4.0 * x * f2,
                          2.0 * f1,
                          -4.0 * idx.m * idx.m / x * f,
                          -x * f,
                          4.0 * (idx.j + 0.5) * f};
  double sum = 0.0;
  double scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

Complex inner_product_2d(ModeIndex a, ModeIndex b, const PolarGrid& grid) {
  grid.require_jmax(std::max(a.j, b.j));
  Complex angular = 0.0;
  for (double phi : grid.angular_nodes()) angular += std::polar(1.0, (b.m - a.m) * phi);
  angular /= static_cast<double>(grid.angular_count());

  const auto pa = radial_profile(a, grid.x_nodes());
  const auto pb = radial_profile(b, grid.x_nodes());
  double radial = 0.0;
  for (int k = 0; k < grid.radial_order(); ++k) radial += grid.radial_weights()[k] * pa[k] * pb[k];
  return angular * radial;
}

ModeCoefficients decompose(const Field2D& field, int jmax) {
  const PolarGrid& grid = field.grid;
  grid.require_jmax(jmax);
  const int radial = grid.radial_order();
  const int angular = grid.angular_count();

  // Angular Fourier components F_m(k) = (1/Q) sum_q e^{-i m phi_q} f(k, q).
  std::map<int, std::vector<Complex>> fourier;
  for (int m = -jmax; m <= jmax; ++m) {
    std::vector<Complex> column(radial);
    for (int q = 0; q < angular; ++q) {
      const Complex phase = std::polar(1.0, -m * grid.angular_nodes()[q]);
      for (int k = 0; k < radial; ++k) column[k] += phase * field.at(k, q);
    }
    for (auto& value : column) value /= static_cast<double>(angular);
    fourier.emplace(m, std::move(column));
  }

  ModeCoefficients out;
  out.jmax = jmax;
  for (int j = 0; j <= jmax; ++j) {
    for (int m = -j; m <= j; ++m) {
      const ModeIndex idx(j, m);
      const auto profile = radial_profile(idx, grid.x_nodes());
      const auto& column = fourier.at(m);
      Complex c = 0.0;
      for (int k = 0; k < radial; ++k) c += grid.radial_weights()[k] * profile[k] * column[k];
      out.amplitudes.emplace(idx, c);
    }
  }
  return out;
}

Field2D reconstruct(const ModeCoefficients& coeffs, const PolarGrid& grid) {
  Field2D field(grid);
  for (const auto& [idx, c] : coeffs.amplitudes) {
    if (c == Complex(0.0, 0.0)) continue;
    const auto profile = radial_profile(idx, grid.x_nodes());
    for (int q = 0; q < grid.angular_count(); ++q) {
      const Complex phase = c * std::polar(1.0, idx.m * grid.angular_nodes()[q]);
      for (int k = 0; k < grid.radial_order(); ++k) field.at(k, q) += phase * profile[k];
    }
  }
  return field;
}

template <class T>
BasicModeCoefficients<T> apply_mode_operator(ModeOperator op, const BasicModeCoefficients<T>& coeffs) {
  BasicModeCoefficients<T> out;
  out.jmax = coeffs.jmax;
  auto emit = [&out](ModeIndex idx, const T& value) {
    if (is_zero(value)) return;
    auto [it, inserted] = out.amplitudes.try_emplace(idx, value);
    if (!inserted) {
      it->second += value;
      if (is_zero(it->second)) out.amplitudes.erase(it);
    }
  };
  for (const auto& [idx, c] : coeffs.amplitudes) {
    const int j = idx.j;
    const int m = idx.m;
    switch (op) {
      case ModeOperator::J3:
        emit(idx, times_rational(c, Rational(m)));
        break;
      case ModeOperator::Jplus:
        if (m < j) emit(ModeIndex(j, m + 1), times_sqrt(c, Rational((j - m) * (j + m + 1))));
        break;
      case ModeOperator::Jminus:
        if (m > -j) emit(ModeIndex(j, m - 1), times_sqrt(c, Rational((j + m) * (j - m + 1))));
        break;
    }
  }
  return out;
}

template ModeCoefficients apply_mode_operator(ModeOperator, const ModeCoefficients&);
template ExactModeCoefficients apply_mode_operator(ModeOperator, const ExactModeCoefficients&);

}  // namespace ladder
