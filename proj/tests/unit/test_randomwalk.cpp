#include <gtest/gtest.h>

#include <cmath>

#include "rmp/examples.hpp"
#include "rmp/parallel.hpp"
#include "rmp/randomwalk.hpp"

using namespace rmp;

TEST(Walk, IdentityKeepsZeroScale) {
  const RealField r;
  auto s = start_walk(r, 3);
  for (int i = 0; i < 1000; ++i) s = step_left(r, s, Matrix<double>::identity(3));
  EXPECT_EQ(s.log_scale, 0.0);
  EXPECT_EQ(s.step, 1000u);
}

TEST(Walk, DiagonalGrowth) {
  const RealField r;
  auto s = start_walk(r, 2);
  const Matrix<double> g{{2.0, 0.0}, {0.0, 1.0}};
  const int n = 500;
  for (int i = 0; i < n; ++i) s = step_right(r, s, g);
  EXPECT_NEAR(log_norm(r, s), n * std::log(2.0), 1e-9);
  EXPECT_GT(s.log_scale, 0.0);
  EXPECT_LE(std::log(vector_norm(r, s.product.data())), 16.0 + 1e-9);
}

TEST(Walk, MatchesNaiveProduct) {
  const RealField r;
  RngStream rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix<double>> gs;
    for (int k = 0; k < 20; ++k) {
      // random SL2 element: rotation * diag(t, 1/t) * rotation
      const double a = rng.uniform() * 6.3, b = rng.uniform() * 6.3, t = std::exp(3.0 * rng.uniform());
      const Matrix<double> ra{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
      const Matrix<double> rb{{std::cos(b), -std::sin(b)}, {std::sin(b), std::cos(b)}};
      gs.push_back(ra * Matrix<double>{{t, 0.0}, {0.0, 1.0 / t}} * rb);
    }
    auto left = start_walk(r, 2);
    Matrix<double> naive = Matrix<double>::identity(2);
    for (const auto& g : gs) {
      left = step_left(r, left, g);
      naive = g * naive;
    }
    const auto rebuilt = true_product(r, left);
    EXPECT_LE(op_norm(r, rebuilt - naive) / op_norm(r, naive), 1e-10);
  }
}

TEST(Walk, PadicExactProduct) {
  const PadicField q2(2);
  const auto spec = examples::example_padic(3, 2);
  auto s = start_walk(q2, 3);
  Matrix<Rational> naive = Matrix<Rational>::identity(3);
  const auto draws = sample(spec, RngStream(3), 60);
  for (auto k : draws) {
    s = step_left(q2, s, spec.atoms[k]);
    naive = spec.atoms[k] * naive;
  }
  EXPECT_EQ(true_product(q2, s), naive);
  EXPECT_DOUBLE_EQ(vector_norm(q2, s.product.data()), 1.0);
}

TEST(Spectrum, DiagonalExact) {
  const auto est = lyapunov_spectrum(examples::diag21(), 100, 4, RngStream(1));
  EXPECT_NEAR(est.lambda[0], std::log(2.0), 1e-14);
  EXPECT_NEAR(est.lambda[1], 0.0, 1e-14);
  const auto gap = top_gap(examples::diag21(), 100, 4, RngStream(1));
  EXPECT_NEAR(gap.gap, std::log(2.0), 1e-14);
  EXPECT_TRUE(gap.simple_top);
}

TEST(Spectrum, IdentityHasNoGap) {
  const auto gap = top_gap(examples::identity_measure(3), 200, 10, RngStream(1));
  EXPECT_EQ(gap.gap, 0.0);
  EXPECT_FALSE(gap.simple_top);
}

TEST(Spectrum, SortedAndSumMatchesDeterminant) {
  // λ1 + λ2 + λ3 = E log|det| exactly per trajectory up to the burn-in window.
  SpectrumOptions opt;
  opt.burn_in_fraction = 0.0;
  const auto spec = examples::example(3);
  const auto est = lyapunov_spectrum(spec, 400, 20, RngStream(2), opt);
  for (const auto& row : est.per_trial) {
    EXPECT_GE(row[0], row[1]);
    EXPECT_GE(row[1], row[2]);
  }
  // every atom of example 3 has |det| = 1/2
  EXPECT_NEAR(est.lambda[0] + est.lambda[1] + est.lambda[2], std::log(0.5), 1e-10);
}

TEST(Spectrum, QuotientPairHasPositiveExponent) {
  const RealField r;
  const auto spec = examples::example(1);
  const auto l = Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3);
  const auto quo = quotient_measure(spec, l);
  const auto est = lyapunov_spectrum(quo, 1000, 100, RngStream(3));
  EXPECT_GT(est.ci(0).lo, 0.0);
}

TEST(Spectrum, BlockTriangularUnion) {
  const RealField r;
  const auto spec = examples::example(2);
  const auto l = Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3);
  const auto full = lyapunov_spectrum(spec, 1000, 200, RngStream(4));
  const auto quo = lyapunov_spectrum(quotient_measure(spec, l), 1000, 200, RngStream(5));
  const auto res = lyapunov_spectrum(restrict_measure(spec, l), 1000, 10, RngStream(6));
  EXPECT_NEAR(res.lambda[0], std::log(0.5), 1e-12);
  const double se = std::hypot(full.stderr_[0], quo.stderr_[0]);
  EXPECT_LE(std::fabs(full.lambda[0] - quo.lambda[0]), kZ99 * se);
}

TEST(Spectrum, PadicDiagonal) {
  const PadicField q2(2);
  const auto spec = uniform_measure(q2, {Matrix<Rational>{{2, 0}, {0, 1}}});
  const auto est = lyapunov_spectrum(spec, 50, 2, RngStream(1));
  // |2|_2 = 1/2 so the growth rates are (0, -log 2)
  EXPECT_NEAR(est.lambda[0], 0.0, 1e-15);
  EXPECT_NEAR(est.lambda[1], -std::log(2.0), 1e-15);
}

TEST(Spectrum, IsometryConjugationInvariance) {
  const auto spec = examples::example(3);
  const RealField r;
  const double a = 0.4;
  const Matrix<double> q{{std::cos(a), -std::sin(a), 0.0}, {std::sin(a), std::cos(a), 0.0}, {0.0, 0.0, 1.0}};
  const auto conj = map_atoms(spec, r, [&](const auto& g) { return q * g * q.transpose(); });
  SpectrumOptions opt;
  opt.burn_in_fraction = 0.0;
  // A frame that starts inside the invariant line locks in at once; a rotated frame needs an
  // O(1/n) transient, so lower exponents agree only at long horizons.
  const auto xs = lyapunov_spectrum(spec, 300, 8, RngStream(10), opt);
  const auto ys = lyapunov_spectrum(conj, 300, 8, RngStream(10), opt);
  EXPECT_NEAR(xs.lambda[0], ys.lambda[0], 5e-3);
  EXPECT_NEAR(xs.lambda[0] + xs.lambda[1] + xs.lambda[2], ys.lambda[0] + ys.lambda[1] + ys.lambda[2], 1e-10);
  const auto x = lyapunov_spectrum(spec, 20000, 8, RngStream(10), opt);
  const auto y = lyapunov_spectrum(conj, 20000, 8, RngStream(10), opt);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(x.lambda[i], y.lambda[i], 5e-3);
}

TEST(Spectrum, ThreadCountIndependent) {
  const auto spec = examples::example(2);
  set_thread_count(1);
  const auto a = lyapunov_spectrum(spec, 200, 16, RngStream(9));
  set_thread_count(4);
  const auto b = lyapunov_spectrum(spec, 200, 16, RngStream(9));
  set_thread_count(0);
  EXPECT_EQ(a.per_trial, b.per_trial);
  EXPECT_EQ(a.lambda, b.lambda);
}

TEST(Growth, RestrictedLineIsDeterministic) {
  const auto rates = growth_rates(examples::example(2), {1.0, 0.0, 0.0}, 1000, 5, RngStream(1));
  for (double r : rates) EXPECT_NEAR(r, std::log(0.5), 1e-12);
  const auto prates = growth_rates(examples::example_padic(2, 2), {1, 0, 0}, 200, 3, RngStream(1));
  for (double r : prates) EXPECT_NEAR(r, std::log(2.0), 1e-15);  // |1/2|_2 = 2
}

TEST(ExteriorPower, DiagonalConsistent) {
  const auto c = exterior_power_check(uniform_measure(RealField{}, {Matrix<double>::diagonal({3.0, 2.0, 0.5})}),
                                      100, 4, RngStream(2));
  EXPECT_NEAR(c.sum_top_two, std::log(6.0), 1e-12);
  EXPECT_NEAR(c.wedge_top, std::log(6.0), 1e-12);
  EXPECT_TRUE(c.consistent);
}
