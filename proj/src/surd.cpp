#include "ladder/surd.hpp"

#include <cmath>
#include <sstream>

#include "ladder/errors.hpp"

namespace ladder {

std::pair<mpz_class, mpz_class> split_square(const mpz_class& n) {
  if (n <= 0) throw DomainError("split_square needs a positive integer");
  mpz_class rest = n;
  mpz_class square_root = 1;
  mpz_class free_part = 1;
  // Radicands here are products of small labels, so trial division is enough.
  for (mpz_class d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    int power = 0;
    while (rest % d == 0) {
      rest /= d;
      ++power;
    }
    for (int i = 0; i < power / 2; ++i) square_root *= d;
    if (power % 2 == 1) free_part *= d;
  }
  free_part *= rest;
  return {square_root, free_part};
}

Surd::Surd(const Rational& q) { add_term(1, q); }

Surd Surd::sqrt_of(const Rational& q) {
  if (q < 0) throw DomainError("square root of a negative rational");
  Surd out;
  if (q == 0) return out;
  // sqrt(a/b) = sqrt(a b) / b
  const mpz_class& a = q.get_num();
  const mpz_class& b = q.get_den();
  auto [s, r] = split_square(a * b);
  Rational coeff(s, b);
  coeff.canonicalize();
  out.add_term(r, coeff);
  return out;
}

bool Surd::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational Surd::rational_value() const {
  if (!is_rational()) throw ConsistencyError("irrational surd " + to_string() + " where a rational was expected");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double Surd::to_double() const {
  double sum = 0.0;
  for (const auto& [r, c] : terms_) sum += c.get_d() * std::sqrt(r.get_d());
  return sum;
}

std::string Surd::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [r, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.get_str();
    if (r != 1) out << "*sqrt(" << r.get_str() << ")";
  }
  return out.str();
}

void Surd::add_term(const mpz_class& radicand, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(radicand, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Surd& Surd::operator+=(const Surd& rhs) {
  for (const auto& [r, c] : rhs.terms_) add_term(r, c);
  return *this;
}

Surd& Surd::operator-=(const Surd& rhs) {
  for (const auto& [r, c] : rhs.terms_) add_term(r, -c);
  return *this;
}

Surd& Surd::operator*=(const Surd& rhs) {
  Surd out;
  for (const auto& [ra, ca] : terms_) {
    for (const auto& [rb, cb] : rhs.terms_) {
      // sqrt(ra) sqrt(rb) = g sqrt((ra/g)(rb/g)); the product stays square-free.
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), ra.get_mpz_t(), rb.get_mpz_t());
      out.add_term((ra / g) * (rb / g), ca * cb * Rational(g));
    }
  }
  *this = std::move(out);
  return *this;
}

Surd Surd::operator-() const {
  Surd out = *this;
  for (auto& [r, c] : out.terms_) c = -c;
  return out;
}

}  // namespace ladder
