#include <gtest/gtest.h>

#include <cmath>

#include "rmp/linalg.hpp"
#include "rmp/rng.hpp"
#include "rmp/scalar.hpp"

using namespace rmp;

TEST(Scalar, PadicAbsoluteValue) {
  const PadicField q2(2);
  EXPECT_DOUBLE_EQ(q2.abs(Rational(12)), 0.25);
  EXPECT_DOUBLE_EQ(q2.abs(Rational(1, 2)), 2.0);
  EXPECT_DOUBLE_EQ(q2.abs(Rational(0)), 0.0);
  EXPECT_EQ(q2.valuation(Rational(3, 40)), -3);
  EXPECT_THROW(q2.valuation(Rational(0)), std::domain_error);
}

TEST(Scalar, RealAbsoluteValue) {
  EXPECT_DOUBLE_EQ(abs(Scalar{-3.5}, FieldSpec::real()), 3.5);
  EXPECT_DOUBLE_EQ(abs(Scalar{Rational(12)}, FieldSpec::padic(2)), 0.25);
}

TEST(Scalar, RejectsNonPrime) {
  EXPECT_THROW(PadicField(4), std::invalid_argument);
  EXPECT_THROW(FieldSpec::padic(1), std::invalid_argument);
  EXPECT_NO_THROW(PadicField(7));
}

TEST(Scalar, MultiplicativeAndUltrametric) {
  const PadicField q3(3);
  RngStream rng(11);
  for (int i = 0; i < 500; ++i) {
    auto draw = [&] {
      long num = static_cast<long>(rng.below(2001)) - 1000;
      if (num == 0) num = 1;
      Rational q(num, static_cast<long>(rng.below(300)) + 1);
      q.canonicalize();
      return q;
    };
    const Rational x = draw(), y = draw();
    EXPECT_DOUBLE_EQ(q3.abs(x * y), q3.abs(x) * q3.abs(y));
    EXPECT_LE(q3.abs(x + y), std::max(q3.abs(x), q3.abs(y)));
  }
}

TEST(Scalar, ParseRational) {
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(Rational(5)), "5");
}

TEST(Scalar, PolarPart) {
  const RealField r;
  const auto pr = polar_part(r, Vector<double>{3.0, 4.0});
  EXPECT_DOUBLE_EQ(pr.scale, 5.0);
  EXPECT_DOUBLE_EQ(pr.direction[0], 0.6);
  EXPECT_DOUBLE_EQ(pr.direction[1], 0.8);

  const PadicField q2(2);
  const auto pp = polar_part(q2, Vector<Rational>{2, 4});
  EXPECT_EQ(pp.scale, Rational(2));
  EXPECT_EQ(pp.direction, (Vector<Rational>{1, 2}));
  const auto unit = polar_part(q2, Vector<Rational>{1, 2});
  EXPECT_EQ(unit.scale, Rational(1));
  EXPECT_EQ(unit.direction, (Vector<Rational>{1, 2}));

  EXPECT_THROW(polar_part(r, Vector<double>{0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(polar_part(q2, Vector<Rational>{0, 0}), std::invalid_argument);
}

TEST(Scalar, PolarPartProperties) {
  const PadicField q5(5);
  RngStream rng(5);
  for (int i = 0; i < 200; ++i) {
    Vector<Rational> x(3);
    for (auto& c : x) {
      c = Rational(static_cast<long>(rng.below(401)) - 200, static_cast<long>(rng.below(50)) + 1);
      c.canonicalize();
    }
    if (vector_norm(q5, x) == 0) continue;
    const auto pp = polar_part(q5, x);
    EXPECT_EQ(q5.abs(pp.scale), vector_norm(q5, x));
    EXPECT_EQ(polar_part(q5, pp.direction).scale, Rational(1));
  }
}
