#include <gtest/gtest.h>

#include <cmath>

#include "rmp/examples.hpp"
#include "rmp/measure.hpp"

using namespace rmp;

TEST(Measure, ValidateExamples) {
  for (int id = 1; id <= 3; ++id) {
    EXPECT_TRUE(validate(examples::example(id)).ok()) << id;
    EXPECT_TRUE(validate(examples::example_padic(id, 2)).ok()) << id;
  }
}

TEST(Measure, ValidateFailures) {
  auto spec = examples::example(1);
  spec.weights = {Rational(1, 2), Rational(3, 5)};
  auto rep = validate(spec);
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.summary().find("weights sum != 1"), std::string::npos);

  auto singular = uniform_measure(RealField{}, {Matrix<double>{{1.0, 2.0}, {2.0, 4.0}}});
  rep = validate(singular);
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.summary().find("atom 0 not invertible"), std::string::npos);

  auto padic = uniform_measure(PadicField(3), {Matrix<Rational>{{3, 6}, {1, 2}}});
  EXPECT_FALSE(validate(padic).ok());

  MeasureSpec<RealField> empty;
  EXPECT_FALSE(validate(empty).ok());

  auto negative = examples::example(2);
  negative.weights = {Rational(3, 2), Rational(-1, 2)};
  EXPECT_FALSE(validate(negative).ok());
}

TEST(Measure, SamplePointMass) {
  const auto spec = examples::diag21();
  for (auto k : sample(spec, RngStream(1), 100)) EXPECT_EQ(k, 0u);
}

TEST(Measure, SampleUniformFrequency) {
  const auto spec = examples::example(1);
  const std::size_t n = 1000000;
  const auto draws = sample(spec, RngStream(77), n);
  std::size_t ones = 0;
  for (auto k : draws) ones += k;
  const double freq = static_cast<double>(ones) / static_cast<double>(n);
  EXPECT_LE(std::fabs(freq - 0.5), 3.0 * std::sqrt(0.25 / static_cast<double>(n)));
}

TEST(Measure, SampleNonUniformWeights) {
  auto spec = examples::example(3);
  spec.weights = {Rational(1, 10), Rational(3, 10), Rational(3, 5)};
  const std::size_t n = 300000;
  const auto draws = sample(spec, RngStream(4), n);
  std::vector<double> counts(3, 0.0);
  for (auto k : draws) counts[k] += 1.0;
  const double p[] = {0.1, 0.3, 0.6};
  for (int i = 0; i < 3; ++i)
    EXPECT_LE(std::fabs(counts[i] / n - p[i]), 3.0 * std::sqrt(p[i] * (1 - p[i]) / n));
}

TEST(Measure, Deterministic) {
  const auto spec = examples::example(3);
  EXPECT_EQ(sample(spec, RngStream(5, 9), 1000), sample(spec, RngStream(5, 9), 1000));
  EXPECT_NE(sample(spec, RngStream(5, 9), 1000), sample(spec, RngStream(5, 10), 1000));
  const RngStream parent(5, 9);
  EXPECT_EQ(sample(spec, parent.substream(3), 100), sample(spec, RngStream(5, 9).substream(3), 100));
}

TEST(Measure, Transpose) {
  const auto spec = examples::example(1);
  const auto t = transpose_measure(spec);
  EXPECT_EQ(t.atoms[0], spec.atoms[0].transpose());
  EXPECT_EQ(t.atoms[0](2, 0), 3.0);
  EXPECT_EQ(t.atoms[0](0, 2), 0.0);
  EXPECT_EQ(t.weights, spec.weights);
  const auto tt = transpose_measure(t);
  EXPECT_EQ(tt.atoms, spec.atoms);
  EXPECT_TRUE(validate(t).ok());
  const auto d = examples::diag21();
  EXPECT_EQ(transpose_measure(d).atoms, d.atoms);
}

TEST(Measure, RestrictionAndQuotient) {
  const auto spec = examples::example(2);
  const RealField r;
  const auto l = Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3);
  const auto res = restrict_measure(spec, l);
  EXPECT_DOUBLE_EQ(res.atoms[0](0, 0), 0.5);
  const auto quo = quotient_measure(spec, l);
  EXPECT_EQ(quo.atoms[0], (Matrix<double>{{1.0, 1.0}, {0.0, 1.0}}));
  EXPECT_EQ(quo.atoms[1], (Matrix<double>{{0.0, -1.0}, {1.0, 0.0}}));
  const auto e2 = Subspace<RealField>::span(r, {{0.0, 1.0, 0.0}}, 3);
  EXPECT_THROW(restrict_measure(spec, e2), std::invalid_argument);
}
