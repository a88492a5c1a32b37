#pragma once

// Exact arithmetic: GMP-backed rationals, integer polynomials in the formal
// dimension variable N, and reduced quotients of such polynomials.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace wgcalc {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

  static Rational parse(const std::string& text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(int e) const;

  // "p/q", or "p" when q == 1.
  std::string to_string() const;
  // Fixed significant-digit decimal rendering for human output only.
  std::string to_decimal(int digits = 15) const;
  double to_double() const { return q_.get_d(); }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

// Integer-coefficient polynomial in N, ascending degree, trailing zeros trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  Polynomial(const BigInt& c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<BigInt> coeffs);

  static Polynomial variable();                 // N
  static Polynomial monomial(const BigInt& c, int degree);
  static Polynomial linear(long shift);         // N + shift

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  const BigInt& leading() const { return coeffs_.back(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int e) const;

  BigInt content() const;  // non-negative gcd of coefficients
  Polynomial primitive_part() const;

  BigInt evaluate(const BigInt& x) const;
  Rational evaluate(const Rational& x) const;

  // Sparse "c*N^e" sum, descending exponents; "0" for the zero polynomial.
  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Exact quotient in Z[N]; throws std::logic_error when the division leaves a remainder.
  Polynomial divide_exact(const Polynomial& divisor) const;
  Polynomial divide_exact(const BigInt& divisor) const;
  // lc(b)^(deg a - deg b + 1) * a = q * b + r with deg r < deg b.
  Polynomial pseudo_remainder(const Polynomial& divisor) const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

// gcd in Z[N], positive leading coefficient (content included).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// num/den reduced in Z[N] with lc(den) > 0. Z[N] is a UFD, so this form is
// unique: structural equality coincides with equality of functions.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0 && den_.leading() == 1; }

  RationalFunction inverse() const;

  // Exact substitution; throws Error{Pole} when den(N) == 0.
  Rational evaluate(long n) const;

  // "num/den", parenthesizing multi-term polynomials
  std::string to_string() const;
  // Sum of c*N^e terms when den is a single monomial, e.g. "2/N^5 - 5/N^6".
  std::optional<std::string> to_laurent_string() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

struct LeadingTerm {
  Rational coeff;
  int exponent = 0;

  friend bool operator==(const LeadingTerm&, const LeadingTerm&) = default;
};

// f(N) = coeff * N^exponent * (1 + O(1/N)); the zero function gives (0, 0).
LeadingTerm leading_term(const RationalFunction& f);

// Combinatorial primitives.
BigInt binomial(long n, long r);           // 0 when r < 0 or r > n
BigInt double_factorial_odd(long n);       // n odd, n >= -1; (-1)!! = 1
BigInt factorial(long n);

__extension__ typedef __int128 Int128;
BigInt to_bigint(Int128 v);
Rational falling_factorial(const Rational& x, int n);
RationalFunction falling_factorial(const RationalFunction& x, int n);
Polynomial falling_factorial_polynomial(int n);   // (N)_n as a polynomial in N

}  // namespace wgcalc
