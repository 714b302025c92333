#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmp/linalg.hpp"
#include "rmp/rng.hpp"

using namespace rmp;

namespace {

Matrix<double> random_matrix(std::size_t d, RngStream& rng) {
  Matrix<double> m(d, d);
  for (auto& x : m.data()) x = rng.normal();
  return m;
}

Rational random_padic_entry(RngStream& rng, int vmin, int vmax) {
  // odd unit times 2^v, v uniform in [vmin, vmax]
  const long unit = 2 * static_cast<long>(rng.below(16)) + 1;
  const long sign = rng.below(2) ? 1 : -1;
  const int v = vmin + static_cast<int>(rng.below(static_cast<std::uint64_t>(vmax - vmin + 1)));
  Rational q(sign * unit);
  const PadicField q2(2);
  return q * q2.power(v);
}

std::vector<std::vector<mpq_class>> to_rows(const Matrix<Rational>& m) {
  std::vector<std::vector<mpq_class>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row(i);
  return rows;
}

}  // namespace

TEST(Fubini, Examples) {
  const RealField r;
  EXPECT_DOUBLE_EQ(fubini_distance(r, {1.0, 0.0}, {0.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(fubini_distance(r, {0.3, -2.0}, {0.3, -2.0}), 0.0);
  EXPECT_NEAR(fubini_distance(r, {1.0, 1.0}, {1.0, 0.0}), 1.0 / std::sqrt(2.0), 1e-15);
  const PadicField q2(2);
  EXPECT_DOUBLE_EQ(fubini_distance(q2, {1, 0}, {0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(fubini_distance(q2, {1, 2}, {1, 0}), 0.5);
}

TEST(Fubini, MetricAxiomsAndUltrametric) {
  RngStream rng(3);
  const RealField r;
  for (int i = 0; i < 300; ++i) {
    Vector<double> x(3), y(3), z(3);
    for (auto* v : {&x, &y, &z})
      for (auto& c : *v) c = rng.normal();
    const double dxy = fubini_distance(r, x, y), dyz = fubini_distance(r, y, z), dxz = fubini_distance(r, x, z);
    EXPECT_NEAR(dxy, fubini_distance(r, y, x), 1e-15);
    EXPECT_LE(dxz, dxy + dyz + 1e-12);
    EXPECT_LE(dxy, 1.0);
    EXPECT_NEAR(dxy, oracle::fs_distance(x, y), 1e-12);
  }
  const PadicField q3(3);
  for (int i = 0; i < 300; ++i) {
    Vector<Rational> x(3), y(3), z(3);
    for (auto* v : {&x, &y, &z})
      for (auto& c : *v) c = Rational(static_cast<long>(rng.below(61)) - 30);
    if (vector_norm(q3, x) == 0 || vector_norm(q3, y) == 0 || vector_norm(q3, z) == 0) continue;
    EXPECT_LE(fubini_distance(q3, x, z), std::max(fubini_distance(q3, x, y), fubini_distance(q3, y, z)));
  }
}

TEST(Fubini, ContractionBookkeeping) {
  RngStream rng(17);
  const RealField r;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_matrix(3, rng);
    Vector<double> x(3), y(3);
    for (auto& c : x) c = rng.normal();
    for (auto& c : y) c = rng.normal();
    const double lhs = fubini_distance(r, g * x, g * y);
    const double ginv = op_norm(r, inverse(r, g));
    const double rhs = op_norm(r, wedge_square(g)) * ginv * ginv * fubini_distance(r, x, y);
    EXPECT_LE(lhs, rhs * (1 + 1e-9) + 1e-14);
  }
}

TEST(DistanceToSubspace, Examples) {
  const RealField r;
  const auto e1 = Subspace<RealField>::span(r, {{1.0, 0.0}}, 2);
  EXPECT_NEAR(distance_to_subspace(Vector<double>{1.0, 1.0}, e1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(distance_to_subspace(Vector<double>{3.0, 0.0}, e1), 0.0);
  const PadicField q2(2);
  const auto pe1 = Subspace<PadicField>::span(q2, {{1, 0}}, 2);
  EXPECT_DOUBLE_EQ(distance_to_subspace(Vector<Rational>{1, 2}, pe1), 0.5);
  EXPECT_DOUBLE_EQ(distance_to_subspace(Vector<Rational>{5, 0}, pe1), 0.0);
  EXPECT_THROW(distance_to_subspace(Vector<double>{1.0, 1.0}, Subspace<RealField>::full(r, 2)), std::invalid_argument);
  EXPECT_THROW(distance_to_subspace(Vector<double>{1.0, 1.0}, Subspace<RealField>(r, 2)), std::invalid_argument);
}

TEST(DistanceToSubspace, PadicOneDimensionalOracle) {
  // min of δ over y in {a e1 : v2(a) in [-8, 8]} for x = (1, 2)
  const PadicField q2(2);
  const auto pe1 = Subspace<PadicField>::span(q2, {{1, 0}}, 2);
  long best = -(1L << 40);
  for (int v = -8; v <= 8; ++v)
    best = std::max(best, oracle::fs_exponent_padic({1, 2}, {q2.power(v), 0}, 2));
  EXPECT_DOUBLE_EQ(distance_to_subspace(Vector<Rational>{1, 2}, pe1), std::pow(2.0, -best));
}

TEST(DistanceToSubspace, RealBruteForce) {
  RngStream rng(2024);
  const RealField r;
  for (int i = 0; i < 40; ++i) {
    const std::size_t k = 1 + rng.below(2);
    std::vector<Vector<double>> basis(k, Vector<double>(3));
    for (auto& b : basis)
      for (auto& c : b) c = rng.normal();
    Vector<double> x(3);
    for (auto& c : x) c = rng.normal();
    const auto e = Subspace<RealField>::span(r, basis, 3);
    std::vector<std::vector<double>> ortho;
    for (std::size_t j = 0; j < e.dim(); ++j) ortho.push_back(e.basis_vector(j));
    EXPECT_NEAR(distance_to_subspace(x, e), oracle::brute_distance_real(x, ortho), 1e-6);
  }
}

TEST(DistanceToSubspace, PadicGrid) {
  RngStream rng(99);
  const PadicField q2(2);
  for (int i = 0; i < 12; ++i) {
    const std::size_t d = 2 + (i % 2);
    const std::size_t k = d == 2 ? 1 : 1 + rng.below(2);
    std::vector<Vector<Rational>> basis(k, Vector<Rational>(d));
    for (auto& b : basis)
      for (auto& c : b) c = Rational(static_cast<long>(rng.below(9)) - 4);
    Vector<Rational> x(d);
    for (auto& c : x) c = Rational(static_cast<long>(rng.below(17)) - 8);
    const auto e = Subspace<PadicField>::span(q2, basis, d);
    if (!e.is_proper_nonzero() || vector_norm(q2, x) == 0 || e.dim() != k) continue;
    const long expo = oracle::brute_distance_padic_exponent(x, basis, 2, 16, 4);
    const double expected = expo >= (1L << 39) ? 0.0 : std::pow(2.0, -static_cast<double>(expo));
    EXPECT_EQ(distance_to_subspace(x, e), expected) << "instance " << i;
  }
}

TEST(Kak, RealExamples) {
  const RealField r;
  const auto k = kak_decompose(r, Matrix<double>{{3.0, 0.0}, {0.0, 1.0}});
  EXPECT_NEAR(k.a[0], 3.0, 1e-15);
  EXPECT_NEAR(k.a[1], 1.0, 1e-15);
  EXPECT_NEAR(std::fabs(k.k_left(0, 0)), 1.0, 1e-15);
  const double c = std::cos(0.7), s = std::sin(0.7);
  const auto rot = kak_decompose(r, Matrix<double>{{c, -s}, {s, c}});
  EXPECT_NEAR(rot.a[0], 1.0, 1e-14);
  EXPECT_NEAR(rot.a[1], 1.0, 1e-14);
}

TEST(Kak, RealReconstruction) {
  RngStream rng(8);
  const RealField r;
  for (int i = 0; i < 100; ++i) {
    const auto g = random_matrix(2 + rng.below(4), rng);
    const auto kak = kak_decompose(r, g);
    const auto diff = kak_product(kak) - g;
    EXPECT_LE(op_norm(r, diff) / op_norm(r, g), 1e-10);
    for (std::size_t j = 1; j < kak.a.size(); ++j) EXPECT_GE(kak.a[j - 1], kak.a[j]);
    const auto id = Matrix<double>::identity(g.rows());
    EXPECT_LE(op_norm(r, kak.k_left.transpose() * kak.k_left - id), 1e-12);
    EXPECT_LE(op_norm(r, kak.u_right * kak.u_right.transpose() - id), 1e-12);
    EXPECT_NEAR(op_norm(r, g), kak.a[0], 1e-12 * kak.a[0]);
  }
}

TEST(Kak, PadicExample) {
  const PadicField q2(2);
  const Matrix<Rational> g{{2, 1}, {0, 1}};
  const auto kak = kak_decompose(q2, g);
  EXPECT_EQ(kak.a, (Vector<Rational>{1, 2}));
  EXPECT_TRUE(in_gl_integral(q2, kak.k_left));
  EXPECT_TRUE(in_gl_integral(q2, kak.u_right));
  EXPECT_EQ(kak_product(kak), g);
}

TEST(Kak, PadicRandomExact) {
  RngStream rng(41);
  const PadicField q2(2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 2 + rng.below(3);
    Matrix<Rational> g(d, d);
    for (auto& x : g.data()) x = random_padic_entry(rng, -4, 4);
    if (determinant(g) == 0) continue;
    const auto kak = kak_decompose(q2, g);
    EXPECT_EQ(kak_product(kak), g);
    for (const auto* m : {&kak.k_left, &kak.u_right}) {
      for (const auto& x : m->data()) EXPECT_TRUE(x == 0 || oracle::val_p(x, 2) >= 0);
      EXPECT_EQ(oracle::val_p(oracle::cofactor_det(to_rows(*m)), 2), 0);
    }
    for (std::size_t j = 0; j < d; ++j) {
      // a_j = 2^m exactly, valuations nondecreasing
      EXPECT_EQ(kak.a[j], q2.power(q2.valuation(kak.a[j])));
      if (j) EXPECT_LE(q2.valuation(kak.a[j - 1]), q2.valuation(kak.a[j]));
    }
    EXPECT_DOUBLE_EQ(op_norm(q2, g), q2.abs(kak.a[0]));
  }
  EXPECT_THROW(kak_decompose(q2, Matrix<Rational>{{1, 2}, {2, 4}}), std::domain_error);
}

TEST(Complement, RealCanonical) {
  const RealField r;
  const auto e1 = Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3);
  const auto w = orthogonal_complement(e1);
  EXPECT_TRUE(w.equals(Subspace<RealField>::span(r, {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, 3)));
  EXPECT_EQ(w.basis_vector(0), (Vector<double>{0.0, 1.0, 0.0}));
  EXPECT_TRUE(is_orthogonal_complement(e1, w));
}

TEST(Complement, PadicNonUnique) {
  const PadicField q2(2);
  const auto e = Subspace<PadicField>::span(q2, {{1, 0}}, 2);
  const auto w = orthogonal_complement(e);
  EXPECT_TRUE(w.equals(Subspace<PadicField>::span(q2, {{0, 1}}, 2)));
  EXPECT_TRUE(is_orthogonal_complement(e, Subspace<PadicField>::span(q2, {{1, 1}}, 2)));
  EXPECT_TRUE(is_orthogonal_complement(e, w));
  EXPECT_FALSE(is_orthogonal_complement(e, Subspace<PadicField>::span(q2, {{1, 2}}, 2)));

  const auto e21 = Subspace<PadicField>::span(q2, {{2, 1}}, 2);
  const auto w21 = orthogonal_complement(e21);
  const auto transition = e21.basis().hcat(w21.basis());
  EXPECT_TRUE(in_gl_integral(q2, transition));
  EXPECT_TRUE(in_gl_integral(q2, inverse(q2, transition)));
}

TEST(Complement, PadicPythagorasIsMax) {
  RngStream rng(7);
  const PadicField q3(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vector<Rational>> basis(2, Vector<Rational>(4));
    for (auto& b : basis)
      for (auto& c : b) c = Rational(static_cast<long>(rng.below(41)) - 20, static_cast<long>(rng.below(9)) + 1);
    const auto e = Subspace<PadicField>::span(q3, basis, 4);
    if (!e.is_proper_nonzero()) continue;
    const auto w = orthogonal_complement(e);
    ASSERT_TRUE(is_orthogonal_complement(e, w));
    Vector<Rational> a(e.dim()), b(w.dim());
    for (auto& c : a) c = Rational(static_cast<long>(rng.below(61)) - 30, 4);
    for (auto& c : b) c = Rational(static_cast<long>(rng.below(61)) - 30, 9);
    const auto u = e.basis() * a;
    const auto v = w.basis() * b;
    Vector<Rational> s(4);
    for (std::size_t k = 0; k < 4; ++k) s[k] = u[k] + v[k];
    EXPECT_EQ(vector_norm(q3, s), std::max(vector_norm(q3, u), vector_norm(q3, v)));
  }
}

TEST(WedgeSquare, Examples) {
  const Matrix<double> g2{{2.0, 3.0}, {1.0, 5.0}};
  const auto w2 = wedge_square(g2);
  ASSERT_EQ(w2.rows(), 1u);
  EXPECT_DOUBLE_EQ(w2(0, 0), 7.0);
  EXPECT_EQ(wedge_square(Matrix<double>::identity(4)), Matrix<double>::identity(6));
  const auto d = wedge_square(Matrix<Rational>::diagonal({2, 3, 5}));
  EXPECT_EQ(d, Matrix<Rational>::diagonal({6, 10, 15}));
}

TEST(WedgeSquare, Multiplicative) {
  RngStream rng(12);
  const RealField r;
  for (int i = 0; i < 50; ++i) {
    const auto g = random_matrix(4, rng), h = random_matrix(4, rng);
    const auto lhs = wedge_square(g * h);
    const auto rhs = wedge_square(g) * wedge_square(h);
    EXPECT_LE(op_norm(r, lhs - rhs), 1e-12 * op_norm(r, lhs));
  }
}

TEST(Subspace, SumIntersectionAnnihilator) {
  const RealField r;
  const auto a = Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, 3);
  const auto b = Subspace<RealField>::span(r, {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, 3);
  EXPECT_TRUE(subspace_intersection(a, b).equals(Subspace<RealField>::span(r, {{0.0, 2.0, 0.0}}, 3)));
  EXPECT_TRUE(subspace_sum(a, b).is_full());
  EXPECT_TRUE(annihilator(a).equals(Subspace<RealField>::span(r, {{0.0, 0.0, 1.0}}, 3)));

  const PadicField q5(5);
  const auto pa = Subspace<PadicField>::span(q5, {{1, 1, 0}, {0, 1, 1}}, 3);
  const auto pb = Subspace<PadicField>::span(q5, {{1, 0, 0}, {0, 0, 1}}, 3);
  const auto inter = subspace_intersection(pa, pb);
  EXPECT_EQ(inter.dim(), 1u);
  EXPECT_TRUE(inter.contains(Vector<Rational>{1, 0, -1}));
  EXPECT_TRUE(annihilator(pa).equals(Subspace<PadicField>::span(q5, {{1, -1, 1}}, 3)));
}

TEST(ProjPoint, CanonicalRepresentative) {
  const RealField r;
  const ProjPoint<RealField> p(r, {-3.0, 0.0, -4.0});
  EXPECT_NEAR(p.vector()[2], 0.8, 1e-15);
  EXPECT_NEAR(p.vector()[0], 0.6, 1e-15);
  const PadicField q2(2);
  const ProjPoint<PadicField> a(q2, {4, 6}), b(q2, {2, 3});
  EXPECT_EQ(a.vector(), b.vector());
  EXPECT_DOUBLE_EQ(vector_norm(q2, a.vector()), 1.0);
}

TEST(Svd, TallAndWide) {
  RngStream rng(5);
  const RealField r;
  Matrix<double> a(5, 3), b(2, 4);
  for (auto& x : a.data()) x = rng.normal();
  for (auto& x : b.data()) x = rng.normal();
  for (const auto* m : {&a, &b}) {
    const auto s = svd(*m);
    const auto rec = s.u * Matrix<double>::diagonal(s.s) * s.v.transpose();
    EXPECT_LE(op_norm(r, rec - *m), 1e-12);
  }
  EXPECT_EQ(rank(r, Matrix<double>{{1.0, 2.0}, {2.0, 4.0}}), 1u);
  EXPECT_EQ(null_space(r, Matrix<double>{{1.0, 2.0, 3.0}}).cols(), 2u);
}
