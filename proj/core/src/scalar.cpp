#include "rmp/scalar.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace rmp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::padic(std::uint64_t prime) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("p-adic field requires a prime, got " + std::to_string(prime));
  }
  return {FieldKind::Padic, prime};
}

std::string FieldSpec::to_string() const {
  return is_real() ? std::string("real") : "Q_" + std::to_string(p);
}

PadicField::PadicField(std::uint64_t prime) : p(prime) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("p-adic field requires a prime, got " + std::to_string(prime));
  }
}

long PadicField::valuation(const mpz_class& x) const {
  if (x == 0) throw std::domain_error("valuation of zero");
  mpz_class rest;
  mpz_class prime(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

long PadicField::valuation(const Rational& x) const {
  if (x == 0) throw std::domain_error("valuation of zero");
  return valuation(mpz_class(x.get_num())) - valuation(mpz_class(x.get_den()));
}

double PadicField::norm_from_valuation(long v) const {
  return std::pow(static_cast<double>(p), static_cast<double>(-v));
}

double PadicField::abs(const Rational& x) const {
  if (x == 0) return 0.0;
  return norm_from_valuation(valuation(x));
}

double PadicField::log_abs(const Rational& x) const {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return -static_cast<double>(valuation(x)) * std::log(static_cast<double>(p));
}

Rational PadicField::power(long m) const {
  mpz_class base(static_cast<unsigned long>(p));
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m < 0 ? -m : m));
  if (m >= 0) return Rational(pk);
  Rational r(mpz_class(1), pk);
  r.canonicalize();
  return r;
}

double abs(const Scalar& x, const FieldSpec& field) {
  if (field.is_real()) {
    if (const auto* d = std::get_if<double>(&x)) return std::fabs(*d);
    return std::fabs(std::get<Rational>(x).get_d());
  }
  const PadicField f(field.p);
  if (const auto* q = std::get_if<Rational>(&x)) return f.abs(*q);
  throw std::invalid_argument("p-adic absolute value needs an exact rational");
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0) {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits.push_back(s[i++]);
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i++]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + text + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    }
    i += used;
    exponent += e;
  }
  if (i != s.size()) throw std::invalid_argument("trailing characters in '" + text + "'");

  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace rmp
