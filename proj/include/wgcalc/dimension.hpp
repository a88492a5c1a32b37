#pragma once

// The dimension N is either a concrete positive integer or the formal
// variable of Z[N]. Formula code is templated over the two context types
// below; the public API carries the choice at runtime as a Dimension.

#include <optional>
#include <string>
#include <variant>

#include "wgcalc/error.hpp"
#include "wgcalc/exact.hpp"

namespace wgcalc {

class Dimension {
 public:
  static Dimension symbolic() { return Dimension(); }
  static Dimension numeric(long n);

  bool is_symbolic() const { return !n_.has_value(); }
  long value() const;
  std::string to_string() const { return n_ ? std::to_string(*n_) : "N"; }

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  Dimension() = default;
  std::optional<long> n_;
};

using Value = std::variant<Rational, RationalFunction>;

std::string to_string(const Value& v);
// Leading term of the value as a function of N; numeric values are constants (exponent 0).
LeadingTerm value_leading_term(const Value& v);

struct NumericN {
  using Scalar = Rational;
  long n;
};

struct SymbolicN {
  using Scalar = RationalFunction;
};

template <class D>
using ScalarOf = typename D::Scalar;

inline Rational dim_value(NumericN d) { return Rational(d.n); }
inline RationalFunction dim_value(SymbolicN) { return RationalFunction::variable(); }

// 1/(N)_m, extended to m < 0 by 1/(N)_m := (N-m)!/N! = (N+1)...(N-m).
Rational inverse_falling(NumericN d, int m);
RationalFunction inverse_falling(SymbolicN d, int m);

// N^-i (i may be negative).
Rational inverse_power(NumericN d, int i);
RationalFunction inverse_power(SymbolicN d, int i);

}  // namespace wgcalc
