#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hecke {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "p", "-p", "p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational abs() const { return Rational(::abs(q_)); }
  Rational inverse() const;
  mpz_class floor() const;

  /// Representative of this value modulo m in [0, m); m must be positive.
  Rational mod(const Rational& m) const;

  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

/// Closed interval [lo, hi] of rationals; exact when lo == hi.
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval exact(const Rational& v) { return {v, v}; }
  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }

  RationalInterval& operator+=(const RationalInterval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
  /// Both endpoints must be nonnegative.
  RationalInterval scaled(const Rational& nonneg) const { return {lo * nonneg, hi * nonneg}; }
  RationalInterval squared_nonneg() const { return {lo * lo, hi * hi}; }
  std::string str() const;
};

/// Certified enclosure of sqrt(v) for v >= 0, of width at most 2^-bits.
/// Exact when v is the square of a rational.
RationalInterval sqrt_enclosure(const Rational& v, unsigned bits = 40);

/// Exact complex rational re + im*i.
struct CRational {
  Rational re;
  Rational im;

  CRational() = default;
  CRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  CRational(long r) : re(r) {}                 // NOLINT(google-explicit-constructor)
  CRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  /// Accepts "3", "-1/2", "2i", "-i", "1/2+3i", "1-2/3i".
  static CRational parse(std::string_view text);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  CRational conj() const { return {re, -im}; }
  Rational norm_squared() const { return re * re + im * im; }
  RationalInterval abs() const;
  std::string str() const;

  CRational operator-() const { return {-re, -im}; }
  CRational& operator+=(const CRational& o) { re += o.re; im += o.im; return *this; }
  CRational& operator-=(const CRational& o) { re -= o.re; im -= o.im; return *this; }
  CRational& operator*=(const CRational& o);
  CRational& operator/=(const CRational& o);

  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  friend std::ostream& operator<<(std::ostream& os, const CRational& z) { return os << z.str(); }
};

}  // namespace hecke

template <>
struct std::hash<hecke::Rational> {
  std::size_t operator()(const hecke::Rational& r) const {
    return std::hash<std::string>{}(r.str());
  }
};
