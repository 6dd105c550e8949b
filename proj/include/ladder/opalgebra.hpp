#pragma once

// Ladder generators on span{scriptM_{n,p}}: sparse label-space actions (the
// reference realization) and first-order differential forms acting on carriers.

#include <cmath>
#include <map>
#include <optional>
#include <string_view>

#include "ladder/basis.hpp"
#include "ladder/surd.hpp"

namespace ladder {

enum class OperatorName {
  Aplus, Aminus, Bplus, Bminus,
  Jplus, Jminus, J3,
  Kplus, Kminus, K3,
  Rplus, Rminus, R3,
  Splus, Sminus, S3,
  X, Dx, N, P, E,
};

std::string_view name_of(OperatorName op);
std::optional<OperatorName> operator_from_name(std::string_view name);

bool is_diagonal(OperatorName op);         // N, P, J3, K3, R3, S3, E
bool has_label_action(OperatorName op);    // everything except X and Dx
bool has_differential_form(OperatorName op);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double sqrt_of(const Rational& q) { return std::sqrt(q.get_d()); }
  static double from(const Rational& q) { return q.get_d(); }
  static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct ScalarTraits<Surd> {
  static Surd sqrt_of(const Rational& q) { return Surd::sqrt_of(q); }
  static Surd from(const Rational& q) { return Surd(q); }
  static bool is_zero(const Surd& v) { return v.is_zero(); }
};

/// Finite combination sum c_{n,p} |n,p>. Zero coefficients are dropped.
template <class T>
class LabelVector {
 public:
  using Terms = std::map<BasisIndex, T>;

  LabelVector() = default;
  static LabelVector basis(BasisIndex idx) {
    LabelVector v;
    v.add(idx, ScalarTraits<T>::from(1));
    return v;
  }

  void add(BasisIndex idx, const T& c) {
    if (ScalarTraits<T>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<T>::is_zero(it->second)) terms_.erase(it);
    }
  }

  T coefficient(BasisIndex idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? ScalarTraits<T>::from(0) : it->second;
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  LabelVector& operator+=(const LabelVector& rhs) {
    for (const auto& [idx, c] : rhs.terms_) add(idx, c);
    return *this;
  }
  LabelVector& operator-=(const LabelVector& rhs) {
    for (const auto& [idx, c] : rhs.terms_) add(idx, -c);
    return *this;
  }
  LabelVector& operator*=(const T& s) {
    LabelVector out;
    for (const auto& [idx, c] : terms_) out.add(idx, c * s);
    return *this = std::move(out);
  }
  friend LabelVector operator+(LabelVector a, const LabelVector& b) { return a += b; }
  friend LabelVector operator-(LabelVector a, const LabelVector& b) { return a -= b; }
  friend LabelVector operator*(LabelVector a, const T& s) { return a *= s; }
  friend bool operator==(const LabelVector& a, const LabelVector& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

using RealLabelVector = LabelVector<double>;
using ExactLabelVector = LabelVector<Surd>;

/// One ladder move: |from> -> sign * sqrt(squared) |target>.
struct LadderStep {
  BasisIndex target;
  Rational squared;
  int sign = 1;
};

/// Matrix elements of the primitive ladder generators a+-, b+-, J+-, K+- and the
/// eigenvalues of the diagonal ones. R+- and S+- are always composed from J and K.
class Realization {
 public:
  static const Realization& standard();

  /// Copy of the standard realization with the sign of one matrix element flipped.
  /// Exists so verification runs can be shown to catch a corrupted element.
  static Realization with_sign_fault(OperatorName op, BasisIndex at);

  /// nullopt when |from> is annihilated.
  std::optional<LadderStep> step(OperatorName op, BasisIndex from) const;
  Rational eigenvalue(OperatorName op, BasisIndex at) const;

  bool faulty() const { return fault_.has_value(); }

 private:
  struct Fault {
    OperatorName op;
    BasisIndex at;
  };
  std::optional<Fault> fault_;
};

template <class T>
LabelVector<T> apply_label(OperatorName op, const LabelVector<T>& v,
                           const Realization& realization = Realization::standard());

/// (A B - B A) v
template <class T>
LabelVector<T> commutator_label(OperatorName a, OperatorName b, const LabelVector<T>& v,
                                const Realization& realization = Realization::standard());

extern template LabelVector<double> apply_label(OperatorName, const LabelVector<double>&, const Realization&);
extern template LabelVector<Surd> apply_label(OperatorName, const LabelVector<Surd>&, const Realization&);
extern template LabelVector<double> commutator_label(OperatorName, OperatorName, const LabelVector<double>&,
                                                     const Realization&);
extern template LabelVector<Surd> commutator_label(OperatorName, OperatorName, const LabelVector<Surd>&,
                                                   const Realization&);

/// Value of a differential form together with the magnitude of its largest term,
/// the natural scale for judging cancellation.
struct DiffEvaluation {
  double value = 0.0;
  double scale = 0.0;
};

/// Differential form of op applied to c at x, with N, P replaced by the carrier's labels.
/// a+-, R+-, S+- have no differential form here (UnsupportedOperatorError).
DiffEvaluation apply_diff_detailed(OperatorName op, const Carrier& c, double x);
double apply_diff(OperatorName op, const Carrier& c, double x);

/// sum_{n,p} c_{n,p} scriptM_{n,p}(x)
double eval_label(const RealLabelVector& v, double x);

/// Laurent factor g with E [x^(k/2) e^(-x/2) core] = x^(k/2) e^(-x/2) g for the
/// unnormalized canonical carrier of idx.
LaurentPoly e_residual_symbolic(BasisIndex idx);

enum class CasimirKind { Cp, Csu2, Csu11, CR, CS };

std::string_view name_of(CasimirKind kind);

/// Builds the Casimir from exact label actions and returns its eigenvalue on |idx>.
/// Throws ConsistencyError if |idx> is not an eigenvector or the value is irrational.
Rational casimir_eigenvalue(CasimirKind kind, BasisIndex idx,
                            const Realization& realization = Realization::standard());

/// Expected eigenvalue: 0, j(j+1), m^2 - 1/4, -3/4, -3/4.
Rational casimir_expected(CasimirKind kind, BasisIndex idx);

}  // namespace ladder
