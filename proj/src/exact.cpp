#include "wgcalc/exact.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "wgcalc/error.hpp"

namespace wgcalc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::GroundSetMismatch: return "ground set mismatch";
    case ErrorKind::DimensionTooSmall: return "dimension too small";
    case ErrorKind::EnumerationTooLarge: return "enumeration too large";
    case ErrorKind::OracleTooLarge: return "oracle too large";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::RecursionPole: return "recursion pole";
    case ErrorKind::Config: return "configuration error";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  BigInt num;
  BigInt den = 1;
  auto parse_int = [&](const std::string& s, BigInt& out) {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || out.set_str(t, 10) != 0) {
      throw Error(ErrorKind::InvalidArgument, "malformed rational '" + text + "'");
    }
  };
  if (slash == std::string::npos) {
    parse_int(text, num);
  } else {
    parse_int(text.substr(0, slash), num);
    parse_int(text.substr(slash + 1), den);
  }
  return Rational(num, den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  return Rational(mpq_class(1) / q_);
}

Rational Rational::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  BigInt n;
  BigInt d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  mpf_class f(q_, 512);
  std::array<char, 128> buf{};
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  return buf.data();
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

Polynomial::Polynomial(const BigInt& c) {
  if (c != 0) coeffs_.push_back(c);
}

Polynomial::Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::variable() { return monomial(1, 1); }

Polynomial Polynomial::monomial(const BigInt& c, int degree) {
  if (c == 0) return {};
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, BigInt(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(long shift) {
  return Polynomial(std::vector<BigInt>{BigInt(shift), BigInt(1)});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt Polynomial::coefficient(int e) const {
  if (e < 0 || e > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(e)];
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return {};
  return divide_exact(content());
}

BigInt Polynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int e = degree(); e >= 0; --e) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const BigInt mag = ::abs(c);
    if (e == 0 || mag != 1) out += mag.get_str();
    if (e > 0) {
      if (mag != 1) out += "*";
      out += "N";
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial operator-(Polynomial a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

Polynomial Polynomial::divide_exact(const BigInt& divisor) const {
  if (divisor == 0) throw std::logic_error("polynomial division by zero constant");
  Polynomial out = *this;
  for (auto& c : out.coeffs_) {
    if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t())) {
      throw std::logic_error("inexact polynomial division");
    }
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
  }
  return out;
}

Polynomial Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::logic_error("polynomial division by zero");
  if (divisor.degree() == 0) return divide_exact(divisor.leading());
  if (is_zero()) return {};
  const int n = divisor.degree();
  const int m = degree();
  if (m < n) throw std::logic_error("inexact polynomial division");
  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> quot(static_cast<std::size_t>(m - n) + 1, BigInt(0));
  const BigInt& lc = divisor.leading();
  for (int i = m - n; i >= 0; --i) {
    BigInt& top = rem[static_cast<std::size_t>(n + i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) {
      throw std::logic_error("inexact polynomial division");
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (int j = 0; j <= n; ++j) {
      mpz_submul(rem[static_cast<std::size_t>(i + j)].get_mpz_t(), q.get_mpz_t(),
                 divisor.coeffs_[static_cast<std::size_t>(j)].get_mpz_t());
    }
    quot[static_cast<std::size_t>(i)] = q;
  }
  for (const auto& r : rem) {
    if (r != 0) throw std::logic_error("inexact polynomial division");
  }
  return Polynomial(std::move(quot));
}

Polynomial Polynomial::pseudo_remainder(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::logic_error("pseudo-remainder by zero");
  const int n = divisor.degree();
  if (degree() < n) return *this;
  Polynomial r = *this;
  int e = degree() - n + 1;
  const BigInt lc = divisor.leading();
  while (!r.is_zero() && r.degree() >= n) {
    const Polynomial t = monomial(r.leading(), r.degree() - n);
    r = Polynomial(lc) * r - t * divisor;
    --e;
  }
  BigInt scale;
  mpz_pow_ui(scale.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
  return Polynomial(scale) * r;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero() || b.is_zero()) {
    Polynomial g = a.is_zero() ? b : a;
    return g.leading() < 0 ? -g : g;
  }
  BigInt c;
  const BigInt ca = a.content();
  const BigInt cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Polynomial x = a.divide_exact(ca);
  Polynomial y = b.divide_exact(cb);
  if (x.degree() < y.degree()) std::swap(x, y);
  // Primitive polynomial remainder sequence.
  while (!y.is_zero() && y.degree() > 0) {
    Polynomial r = x.pseudo_remainder(y);
    x = std::move(y);
    y = r.primitive_part();
  }
  if (!y.is_zero()) return Polynomial(c);  // constant remainder: coprime primitive parts
  Polynomial g = Polynomial(c) * x;
  return g.leading() < 0 ? -g : g;
}

// -------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(const Rational& c)
    : num_(c.numerator()), den_(c.denominator()) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (!(g.degree() == 0 && g.leading() == 1)) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of the zero function");
  return RationalFunction(den_, num_);
}

Rational RationalFunction::evaluate(long n) const {
  const BigInt x = n;
  const BigInt d = den_.evaluate(x);
  if (d == 0) throw Error(ErrorKind::Pole, "pole at N=" + std::to_string(n));
  return Rational(num_.evaluate(x), d);
}

std::string RationalFunction::to_string() const {
  // Parenthesize only sums; a bare term or constant reads unambiguously.
  const auto wrap = [](const Polynomial& p) {
    int terms = 0;
    for (int e = 0; e <= p.degree(); ++e) terms += p.coefficient(e) != 0 ? 1 : 0;
    return terms > 1 ? "(" + p.to_string() + ")" : p.to_string();
  };
  if (den_.degree() == 0 && den_.coefficient(0) == 1) return num_.to_string();
  std::string num = wrap(num_);
  return num + "/" + wrap(den_);
}

std::optional<std::string> RationalFunction::to_laurent_string() const {
  const int shift = den_.degree();
  for (int e = 0; e < shift; ++e) {
    if (den_.coefficient(e) != 0) return std::nullopt;
  }
  if (is_zero()) return std::string("0");
  const BigInt scale = den_.leading();
  std::string out;
  for (int e = num_.degree(); e >= 0; --e) {
    const BigInt c = num_.coefficient(e);
    if (c == 0) continue;
    const Rational q(c, scale);
    if (out.empty()) {
      if (q.sign() < 0) out += "-";
    } else {
      out += q.sign() < 0 ? " - " : " + ";
    }
    const Rational mag = q.abs();
    const int power = e - shift;
    const std::string pw = std::abs(power) == 1 ? "N" : "N^" + std::to_string(std::abs(power));
    if (power == 0) {
      out += mag.to_string();
    } else if (power > 0) {
      out += mag == Rational(1) ? pw : mag.to_string() + "*" + pw;
    } else if (mag.denominator() == 1) {
      out += mag.numerator().get_str() + "/" + pw;
    } else {
      out += mag.numerator().get_str() + "/(" + mag.denominator().get_str() + "*" + pw + ")";
    }
  }
  return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction operator-(const RationalFunction& a) {
  RationalFunction r = a;
  r.num_ = -r.num_;
  return r;
}

LeadingTerm leading_term(const RationalFunction& f) {
  if (f.is_zero()) return {Rational(0), 0};
  return {Rational(f.num().leading(), f.den().leading()), f.num().degree() - f.den().degree()};
}

// ------------------------------------------------------------ combinatorics

BigInt binomial(long n, long r) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "binomial with negative n");
  if (r < 0 || r > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

BigInt double_factorial_odd(long n) {
  if (n < -1 || n % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "double factorial needs an odd n >= -1, got " + std::to_string(n));
  }
  if (n == -1) return 1;
  BigInt out;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigInt to_bigint(Int128 v) {
  __extension__ typedef unsigned __int128 UInt128;
  const bool neg = v < 0;
  const UInt128 u = neg ? static_cast<UInt128>(0) - static_cast<UInt128>(v) : static_cast<UInt128>(v);
  BigInt out(static_cast<unsigned long>(u >> 64));
  out <<= 64;
  out += BigInt(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  return neg ? BigInt(-out) : out;
}

BigInt factorial(long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "factorial of a negative number");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Rational falling_factorial(const Rational& x, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "falling factorial needs n >= 0");
  Rational out(1);
  for (int i = 0; i < n; ++i) out *= x - Rational(i);
  return out;
}

RationalFunction falling_factorial(const RationalFunction& x, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "falling factorial needs n >= 0");
  RationalFunction out(1);
  for (int i = 0; i < n; ++i) out *= x - RationalFunction(i);
  return out;
}

Polynomial falling_factorial_polynomial(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "falling factorial needs n >= 0");
  Polynomial out(1);
  for (int i = 0; i < n; ++i) out *= Polynomial::linear(-i);
  return out;
}

}  // namespace wgcalc
