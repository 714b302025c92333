#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rmp/examples.hpp"
#include "rmp/stationary.hpp"

using namespace rmp;

namespace {

const RealField kR;

Subspace<RealField> e1_line() { return Subspace<RealField>::span(kR, {{1.0, 0.0, 0.0}}, 3); }

EmpiricalMeasure great_circle(std::size_t count, RngStream rng) {
  // uniform on the circle spanned by two random orthonormal vectors
  const Vector<double> a0{rng.normal(), rng.normal(), rng.normal()};
  const Vector<double> b0{rng.normal(), rng.normal(), rng.normal()};
  const auto basis = orthonormal_basis(kR, Matrix<double>::from_columns({a0, b0}, 3));
  EmpiricalMeasure m;
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double th = pi * rng.uniform();
    Vector<double> v(3);
    for (std::size_t k = 0; k < 3; ++k) v[k] = std::cos(th) * basis(k, 0) + std::sin(th) * basis(k, 1);
    m.points.push_back(v);
  }
  return m;
}

}  // namespace

TEST(Stationary, DiagonalTopDirectionIsE1) {
  const auto nu = sample_stationary(examples::diag21(), 60, 20, RngStream(1), TopDirection{});
  ASSERT_EQ(nu.size(), 20u);
  for (const auto& p : nu.points) EXPECT_EQ(p, (Vector<double>{1.0, 0.0}));
  const auto pushed = sample_stationary(examples::diag21(), 60, 5, RngStream(1), PushForward{{1.0, 1.0}, {}});
  for (const auto& p : pushed.points) EXPECT_LE(fs_distance_unit(p, {1.0, 0.0}), std::ldexp(1.0, -59));
}

TEST(Stationary, PushForwardRejectsPointsOfL) {
  try {
    sample_stationary(examples::example(2), 10, 2, RngStream(1), PushForward{{2.0, 0.0, 0.0}, e1_line()});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("L_mu"), std::string::npos);
  }
}

TEST(Stationary, ProvenanceAndDeterminism) {
  const auto a = sample_stationary(examples::example(2), 50, 30, RngStream(4, 2), TopDirection{});
  const auto b = sample_stationary(examples::example(2), 50, 30, RngStream(4, 2), TopDirection{});
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.sampler, "top_direction");
  EXPECT_EQ(a.n, 50u);
  EXPECT_EQ(a.seed, 4u);
  for (const auto& p : a.points) EXPECT_NEAR(vector_norm(kR, p), 1.0, 1e-14);
}

TEST(Energy, IdenticalSamplesGiveZero) {
  const std::vector<Vector<double>> pts(50, Vector<double>{0.0, 1.0, 0.0});
  const auto t = energy_test(pts, pts, RngStream(1));
  EXPECT_EQ(t.statistic, 0.0);
  EXPECT_FALSE(t.reject);
}

TEST(Energy, SeparatesDifferentDistributions) {
  RngStream rng(3);
  std::vector<Vector<double>> x, y;
  for (int i = 0; i < 400; ++i) {
    x.push_back(polar_part(kR, Vector<double>{rng.normal(), rng.normal(), rng.normal()}).direction);
    y.push_back(polar_part(kR, Vector<double>{1.0 + 0.3 * rng.normal(), 0.3 * rng.normal(), 0.3 * rng.normal()}).direction);
  }
  EXPECT_TRUE(energy_test(x, y, RngStream(4)).reject);
  std::vector<Vector<double>> x2;
  for (int i = 0; i < 400; ++i)
    x2.push_back(polar_part(kR, Vector<double>{rng.normal(), rng.normal(), rng.normal()}).direction);
  EXPECT_FALSE(energy_test(x, x2, RngStream(5)).reject);
}

TEST(Stationary, ExampleTwoSamplersAgree) {
  const auto spec = examples::example(2);
  const auto top = sample_stationary(spec, 200, 10000, RngStream(10, 1), TopDirection{});
  const auto push = sample_stationary(spec, 200, 10000, RngStream(10, 2), PushForward{{0.0, 0.6, 0.8}, e1_line()});
  const auto push2 = sample_stationary(spec, 200, 10000, RngStream(10, 3), PushForward{{1.0, -2.0, 0.5}, e1_line()});
  const auto t = energy_test(top.points, push.points, RngStream(11));
  EXPECT_FALSE(t.reject) << t.statistic << " > " << t.threshold;
  const auto t2 = energy_test(push.points, push2.points, RngStream(12));
  EXPECT_FALSE(t2.reject) << t2.statistic << " > " << t2.threshold;
}

TEST(Stationary, ExampleTwoResidualAndNegativeControl) {
  const auto spec = examples::example(2);
  const auto nu = sample_stationary(spec, 200, 10000, RngStream(20), TopDirection{});
  const auto res = stationarity_residual(nu, spec, RngStream(21));
  EXPECT_FALSE(res.reject) << res.statistic << " > " << res.threshold;
  const auto planted = great_circle(10000, RngStream(22));
  const auto bad = stationarity_residual(planted, spec, RngStream(23));
  EXPECT_TRUE(bad.reject) << bad.statistic << " <= " << bad.threshold;
}

TEST(Stationary, ResidualOfCommonFixedPointIsZero) {
  EmpiricalMeasure m;
  m.points.assign(40, Vector<double>{1.0, 0.0, 0.0});
  const auto res = stationarity_residual(m, examples::example(2), RngStream(1));
  EXPECT_EQ(res.statistic, 0.0);
  EXPECT_FALSE(res.reject);
}

TEST(Stationary, SubspaceMasses) {
  const auto spec = examples::example(2);
  const auto nu = sample_stationary(spec, 200, 10000, RngStream(30), TopDirection{});
  EXPECT_LE(subspace_mass(nu, e1_line(), 1e-3), 1e-3);
  EXPECT_EQ(subspace_mass(nu, Subspace<RealField>::full(kR, 3), 1e-6), 1.0);
  EXPECT_EQ(subspace_mass(nu, Subspace<RealField>(kR, 3), 1e-6), 0.0);
  const std::vector<std::vector<Vector<double>>> planes{
      {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, {{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}},
      {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, {{1.0, 2.0, -1.0}, {0.5, 0.0, 3.0}}};
  for (const auto& basis : planes)
    EXPECT_LE(subspace_mass(nu, Subspace<RealField>::span(kR, basis, 3), 1e-3), 1e-2);
}

TEST(Stationary, ExampleOneQuotientMarginal) {
  const auto spec = examples::example(1);
  const auto nu = sample_stationary(spec, 200, 4000, RngStream(40), TopDirection{});
  const auto marginal = quotient_marginal(nu, e1_line());
  const auto quo = quotient_measure(spec, e1_line());
  const auto direct = sample_stationary(quo, 200, 4000, RngStream(41), TopDirection{});
  const auto t = energy_test(marginal, direct.points, RngStream(42));
  EXPECT_FALSE(t.reject) << t.statistic << " > " << t.threshold;
}

TEST(Boundary, DiagonalRate) {
  EmpiricalMeasure nu;
  RngStream rng(5);
  for (int i = 0; i < 30; ++i) nu.points.push_back(polar_part(kR, Vector<double>{1.0 + rng.uniform(), rng.normal()}).direction);
  const std::vector<std::size_t> ns{10, 20, 40, 80};
  const auto curve = boundary_convergence(examples::diag21(), nu, ns, 3, RngStream(6));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    // closed form: δ(R x, R y) = 2^n |x1 y2 - x2 y1| / (|(2^n x1, x2)| |(2^n y1, y2)|)
    const double s = std::ldexp(1.0, static_cast<int>(ns[i]));
    std::vector<double> deltas;
    for (std::size_t a = 0; a < nu.size(); ++a)
      for (std::size_t b = a + 1; b < nu.size(); ++b) {
        const auto& x = nu.points[a];
        const auto& y = nu.points[b];
        deltas.push_back(s * std::fabs(x[0] * y[1] - x[1] * y[0]) /
                         (std::hypot(s * x[0], x[1]) * std::hypot(s * y[0], y[1])));
      }
    std::sort(deltas.begin(), deltas.end());
    const std::size_t mid = deltas.size() / 2;
    const double expected = deltas.size() % 2 ? deltas[mid] : 0.5 * (deltas[mid - 1] + deltas[mid]);
    EXPECT_NEAR(curve.diameter[i] / expected, 1.0, 1e-12);
  }
  const double slope = std::log(curve.diameter[3] / curve.diameter[2]) / 40.0;
  EXPECT_NEAR(slope, -std::log(2.0), 1e-12);
}

TEST(Boundary, ExampleTwoDecreasing) {
  const auto spec = examples::example(2);
  const auto nu = sample_stationary(spec, 200, 200, RngStream(50), TopDirection{});
  std::vector<std::size_t> ns;
  for (std::size_t n = 10; n <= 200; n += 10) ns.push_back(n);
  const auto curve = boundary_convergence(spec, nu, ns, 41, RngStream(51));
  for (std::size_t i = 1; i < ns.size(); ++i) EXPECT_LT(curve.diameter[i], curve.diameter[i - 1]) << ns[i];
  EXPECT_LT(curve.diameter.back(), 1e-10);
}

TEST(Boundary, PointMassStaysAtZero) {
  EmpiricalMeasure nu;
  nu.points.assign(10, Vector<double>{0.0, 0.6, 0.8});
  const auto curve = boundary_convergence(examples::example(2), nu, {1, 5, 25}, 3, RngStream(1));
  for (double v : curve.diameter) EXPECT_EQ(v, 0.0);
}
