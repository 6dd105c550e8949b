#include "ladder/exactpoly.hpp"

#include <sstream>
#include <string>

#include "ladder/errors.hpp"

namespace ladder {

Rational factorial(int k) {
  if (k < 0) throw DomainError("factorial of a negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

LaurentPoly::LaurentPoly(Terms terms) {
  for (auto& [k, c] : terms) add_term(k, c);
}

LaurentPoly LaurentPoly::constant(const Rational& c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(const Rational& c, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

LaurentPoly LaurentPoly::x() { return monomial(1, 1); }

Rational LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no lowest term");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no degree");
  return terms_.rbegin()->first;
}

void LaurentPoly::add_term(int exponent, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  LaurentPoly out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_) out.add_term(ea + eb, ca * cb);
  *this = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Rational LaurentPoly::evaluate_exact(const Rational& x) const {
  if (terms_.empty()) return 0;
  const int lo = min_exponent();
  const int hi = max_exponent();
  if (x == 0) {
    if (lo < 0) throw DomainError("Laurent polynomial with negative powers evaluated at x = 0");
    return coefficient(0);
  }

  // Integer Horner on common-denominator numerators:
  //   sum_e a_e num^e den^(deg-e) / (D * den^deg), then times x^lo.
  mpz_class common = 1;
  for (const auto& [e, c] : terms_) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());

  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  const int deg = hi - lo;

  auto scaled = [&](int exponent) -> mpz_class {
    auto it = terms_.find(exponent);
    if (it == terms_.end()) return 0;
    return it->second.get_num() * (common / it->second.get_den());
  };

  mpz_class acc = scaled(hi);
  mpz_class den_power = 1;
  for (int e = deg - 1; e >= 0; --e) {
    den_power *= den;
    acc = acc * num + scaled(lo + e) * den_power;
  }
  mpz_class den_total = common * den_power;

  mpz_class num_shift = 1;
  mpz_class den_shift = 1;
  if (lo > 0) {
    mpz_pow_ui(num_shift.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(lo));
    mpz_pow_ui(den_shift.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(lo));
  } else if (lo < 0) {
    mpz_pow_ui(num_shift.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-lo));
    mpz_pow_ui(den_shift.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-lo));
  }
  Rational value(acc * num_shift, den_total * den_shift);
  value.canonicalize();
  return value;
}

double LaurentPoly::evaluate(double x) const { return evaluate_exact(Rational(x)).get_d(); }

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.get_str() << "*x^" << e;
  }
  return out.str();
}

LaurentPoly derivative(const LaurentPoly& p) {
  LaurentPoly::Terms terms;
  for (const auto& [e, c] : p.terms())
    if (e != 0) terms.emplace(e - 1, c * e);
  return LaurentPoly(std::move(terms));
}

LaguerreIndex::LaguerreIndex(int n_, int alpha_) : n(n_), alpha(alpha_) {
  if (n < 0) throw DomainError("n must be non-negative");
  if (n + alpha < 0) throw DomainError("n + alpha must be non-negative");
}

LaurentPoly laguerre_recurrence(int n, int alpha) {
  if (n < 0) throw DomainError("n must be non-negative");
  LaurentPoly previous = LaurentPoly::constant(1);
  if (n == 0) return previous;
  LaurentPoly current = LaurentPoly::constant(1 + alpha) - LaurentPoly::x();
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    LaurentPoly next = (LaurentPoly::constant(2 * k + 1 + alpha) - LaurentPoly::x()) * current;
    next -= previous * Rational(k + alpha);
    next *= Rational(1, k + 1);
    previous = std::move(current);
    current = std::move(next);
  }
  return current;
}

LaurentPoly laguerre(LaguerreIndex idx) {
  if (idx.alpha >= 0) return laguerre_recurrence(idx.n, idx.alpha);
  const int a = -idx.alpha;
  Rational prefactor = factorial(idx.n - a) / factorial(idx.n);
  if (a % 2 == 1) prefactor = -prefactor;
  return laguerre_recurrence(idx.n - a, a).shifted(a) * prefactor;
}

LaurentPoly de_residual(LaguerreIndex idx) {
  const LaurentPoly p = laguerre(idx);
  const LaurentPoly d1 = derivative(p);
  const LaurentPoly d2 = derivative(d1);
  LaurentPoly r = d2.shifted(1);
  r += d1 * Rational(1 + idx.alpha);
  r -= d1.shifted(1);
  r += p * Rational(idx.n);
  return r;
}

LadderResiduals alpha_ladder_check(LaguerreIndex idx) {
  if (idx.n + idx.alpha - 1 < 0)
    throw DomainError("lowering identity needs n + alpha - 1 >= 0");
  const LaurentPoly p = laguerre(idx);
  const LaurentPoly d1 = derivative(p);

  LadderResiduals out;
  out.raising = p - d1 - laguerre(LaguerreIndex(idx.n, idx.alpha + 1));
  out.lowering = d1.shifted(1) + p * Rational(idx.alpha) -
                 laguerre(LaguerreIndex(idx.n, idx.alpha - 1)) * Rational(idx.n + idx.alpha);
  return out;
}

}  // namespace ladder
