#include "wgcalc/dimension.hpp"

namespace wgcalc {

Dimension Dimension::numeric(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension N must be positive, got " + std::to_string(n));
  Dimension d;
  d.n_ = n;
  return d;
}

long Dimension::value() const {
  if (!n_) throw Error(ErrorKind::InvalidArgument, "symbolic dimension has no numeric value");
  return *n_;
}

std::string to_string(const Value& v) {
  return std::visit([](const auto& x) { return x.to_string(); }, v);
}

LeadingTerm value_leading_term(const Value& v) {
  if (const auto* f = std::get_if<RationalFunction>(&v)) return leading_term(*f);
  const auto& q = std::get<Rational>(v);
  return {q, 0};
}

Rational inverse_falling(NumericN d, int m) {
  Rational prod(1);
  if (m >= 0) {
    for (int i = 0; i < m; ++i) prod *= Rational(d.n - i);
    if (prod.is_zero()) {
      throw Error(ErrorKind::Pole, "(N)_" + std::to_string(m) + " vanishes at N=" + std::to_string(d.n));
    }
    return prod.inverse();
  }
  for (int t = 1; t <= -m; ++t) prod *= Rational(d.n + t);
  return prod;
}

RationalFunction inverse_falling(SymbolicN, int m) {
  if (m >= 0) return RationalFunction(Polynomial(1), falling_factorial_polynomial(m));
  Polynomial prod(1);
  for (int t = 1; t <= -m; ++t) prod *= Polynomial::linear(t);
  return RationalFunction(prod);
}

Rational inverse_power(NumericN d, int i) { return Rational(d.n).pow(-i); }

RationalFunction inverse_power(SymbolicN, int i) {
  if (i >= 0) return RationalFunction(Polynomial(1), Polynomial::monomial(1, i));
  return RationalFunction(Polynomial::monomial(1, -i));
}

}  // namespace wgcalc
