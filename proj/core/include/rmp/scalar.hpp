#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

namespace rmp {

using Rational = mpq_class;

bool is_prime(std::uint64_t n);

enum class FieldKind { Real, Padic };

/// Runtime description of the base field: the reals or Q_p.
struct FieldSpec {
  FieldKind kind = FieldKind::Real;
  std::uint64_t p = 0;

  static FieldSpec real() { return {}; }
  static FieldSpec padic(std::uint64_t prime);

  bool is_real() const { return kind == FieldKind::Real; }
  bool operator==(const FieldSpec&) const = default;
  std::string to_string() const;
};

/// Field policy for binary64 arithmetic over R.
struct RealField {
  using scalar = double;
  static constexpr bool exact = false;

  /// Relative tolerance for equality and rank decisions.
  double rel_tol = 1e-12;

  FieldSpec spec() const { return FieldSpec::real(); }
  double abs(double x) const { return std::fabs(x); }
  double log_abs(double x) const { return std::log(std::fabs(x)); }
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& q) { return q.get_d(); }
};

/// Field policy for Q_p. Elements are exact rationals; only the absolute value looks at p.
struct PadicField {
  using scalar = Rational;
  static constexpr bool exact = true;

  std::uint64_t p = 2;

  PadicField() = default;
  explicit PadicField(std::uint64_t prime);

  FieldSpec spec() const { return FieldSpec::padic(p); }

  /// p-adic valuation. Throws std::domain_error on zero.
  long valuation(const Rational& x) const;
  long valuation(const mpz_class& x) const;

  /// |x|_p = p^{-v(x)}, with |0| = 0.
  double abs(const Rational& x) const;
  double log_abs(const Rational& x) const;

  /// The element p^m.
  Rational power(long m) const;

  /// Value p^{-v} as a double; this is how norms are reported.
  double norm_from_valuation(long v) const;

  bool is_integral(const Rational& x) const { return x == 0 || valuation(x) >= 0; }
  bool is_unit(const Rational& x) const { return x != 0 && valuation(x) == 0; }

  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_rational(const Rational& q) { return q; }
};

/// A field element tagged by representation.
using Scalar = std::variant<double, Rational>;

/// Absolute value of a scalar under the given field.
double abs(const Scalar& x, const FieldSpec& field);

/// Parse "a/b", "a", or a decimal string such as "-0.25" or "1e-3" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical text for a rational: "num/den" or "num" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace rmp
