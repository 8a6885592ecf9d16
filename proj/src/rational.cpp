#include "hecke/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hecke {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return part;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid(s)) throw std::invalid_argument("not a rational: '" + s + "'");
    return Rational(mpz_class(strip_plus(s)), mpz_class(1));
  }
  std::string n = s.substr(0, slash), d = s.substr(slash + 1);
  if (!valid(n) || !valid(d) || d[0] == '-' || d[0] == '+')
    throw std::invalid_argument("not a rational: '" + s + "'");
  mpz_class den(d);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(mpz_class(strip_plus(n)), den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::mod(const Rational& m) const {
  if (m.sign() <= 0) throw std::domain_error("Rational::mod: modulus must be positive");
  Rational quotient = *this / m;
  return *this - m * Rational(quotient.floor(), mpz_class(1));
}

std::string RationalInterval::str() const {
  if (is_exact()) return lo.str();
  return "[" + lo.str() + ", " + hi.str() + "]";
}

RationalInterval sqrt_enclosure(const Rational& v, unsigned bits) {
  if (v.sign() < 0) throw std::domain_error("sqrt_enclosure: negative argument");
  mpz_class p = v.num(), q = v.den();
  mpz_class sp, sq;
  if (mpz_perfect_square_p(p.get_mpz_t()) && mpz_perfect_square_p(q.get_mpz_t())) {
    mpz_sqrt(sp.get_mpz_t(), p.get_mpz_t());
    mpz_sqrt(sq.get_mpz_t(), q.get_mpz_t());
    return RationalInterval::exact(Rational(sp, sq));
  }
  // sqrt(p/q) = sqrt(p*q*4^bits) / (q*2^bits)
  mpz_class scale = mpz_class(1) << bits;
  mpz_class radicand = p * q * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  mpz_class den = q * scale;
  return {Rational(root, den), Rational(root + 1, den)};
}

namespace {

bool is_blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

CRational CRational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty() || is_blank(s)) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return CRational(Rational::parse(s));
  // Split at the last sign that is not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size() - 1; i > 0; --i) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string imag_part = split == std::string::npos ? s : s.substr(split);
  imag_part.pop_back();  // the 'i'
  if (imag_part.empty() || imag_part == "+") imag_part = "1";
  if (imag_part == "-") imag_part = "-1";
  Rational re = real_part.empty() ? Rational(0) : Rational::parse(real_part);
  return {re, Rational::parse(imag_part)};
}

RationalInterval CRational::abs() const {
  if (im.is_zero()) return RationalInterval::exact(re.abs());
  if (re.is_zero()) return RationalInterval::exact(im.abs());
  return sqrt_enclosure(norm_squared());
}

std::string CRational::str() const {
  if (im.is_zero()) return re.str();
  std::string imag = im.str();
  if (im == Rational(1)) imag = "";
  if (im == Rational(-1)) imag = "-";
  if (re.is_zero()) return imag + "i";
  if (im.sign() > 0) return re.str() + "+" + imag + "i";
  return re.str() + imag + "i";
}

CRational& CRational::operator*=(const CRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRational& CRational::operator/=(const CRational& o) {
  Rational n = o.norm_squared();
  if (n.is_zero()) throw std::domain_error("CRational: division by zero");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

}  // namespace hecke
