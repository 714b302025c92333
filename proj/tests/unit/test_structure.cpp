#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmp/examples.hpp"
#include "rmp/structure.hpp"

using namespace rmp;

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

TEST(Algebra, Examples) {
  const RealField r;
  EXPECT_EQ(algebra_closure(r, {Matrix<double>::identity(3)}).dim(), 1u);
  EXPECT_EQ(algebra_closure(r, {Matrix<double>{{1.0, 1.0}, {0.0, 1.0}}}).dim(), 2u);
  const auto ex1 = examples::example(1);
  const auto alg = algebra_closure(r, ex1.atoms);
  EXPECT_EQ(alg.dim(), 7u);
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& g : ex1.atoms) gens.push_back(to_eigen(g));
  EXPECT_EQ(static_cast<int>(alg.dim()), oracle::enumerated_algebra_dim(gens, 8));
  const PadicField q2(2);
  EXPECT_EQ(algebra_closure(q2, examples::example_padic(3, 2).atoms).dim(), 7u);
}

TEST(Algebra, CyclicModules) {
  const RealField r;
  const auto ex1 = examples::example(1);
  const auto alg = algebra_closure(r, ex1.atoms);
  const auto l = minimal_invariant_subspace(r, alg, {1.0, 0.0, 0.0});
  EXPECT_TRUE(l.equals(Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3)));
  EXPECT_TRUE(minimal_invariant_subspace(r, alg, {0.0, 1.0, 0.0}).is_full());
  const auto trivial = algebra_closure(r, {Matrix<double>::identity(3)});
  EXPECT_EQ(minimal_invariant_subspace(r, trivial, {1.0, 2.0, 3.0}).dim(), 1u);
  for (const auto& g : ex1.atoms) EXPECT_TRUE(is_invariant(g, l));
}

TEST(Exponent, OfSubspace) {
  const RealField r;
  const auto d = examples::diag21();
  const auto e2 = Subspace<RealField>::span(r, {{0.0, 1.0}}, 2);
  EXPECT_NEAR(exponent_of_subspace(d, e2, 50, 2, RngStream(1)).value, 0.0, 1e-14);
  const auto l = Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3);
  EXPECT_NEAR(exponent_of_subspace(examples::example(2), l, 200, 4, RngStream(1)).value, std::log(0.5), 1e-12);
  EXPECT_NEAR(exponent_of_subspace(examples::example(1), l, 200, 4, RngStream(1)).value, 0.0, 1e-12);
  const auto bad = Subspace<RealField>::span(r, {{0.0, 1.0, 0.0}}, 3);
  EXPECT_THROW(exponent_of_subspace(examples::example(1), bad, 10, 2, RngStream(1)), std::invalid_argument);
}

TEST(Structure, Diagonal) {
  const RealField r;
  const auto rep = compute_structure(examples::diag21(), 200, 8, RngStream(1));
  ASSERT_TRUE(rep.gap_certified);
  EXPECT_TRUE(rep.L_mu.equals(Subspace<RealField>::span(r, {{0.0, 1.0}}, 2)));
  ASSERT_TRUE(rep.U_mu.has_value());
  EXPECT_TRUE(rep.U_mu->equals(Subspace<RealField>::span(r, {{1.0, 0.0}}, 2)));
  ASSERT_EQ(rep.fk_levels.size(), 2u);
  EXPECT_NEAR(rep.fk_levels[0].beta, std::log(2.0), 1e-12);
  EXPECT_NEAR(rep.fk_levels[1].beta, 0.0, 1e-12);
  EXPECT_TRUE(duality_check(examples::diag21(), rep, 200, 8, RngStream(2)));
}

TEST(Structure, IdentityIsUncertified) {
  const auto spec = examples::identity_measure(2);
  const auto rep = compute_structure(spec, 100, 8, RngStream(1));
  EXPECT_FALSE(rep.gap_certified);
  EXPECT_FALSE(rep.U_mu.has_value());
  EXPECT_THROW(duality_check(spec, rep, 100, 8, RngStream(1)), GapUncertified);
}

TEST(Structure, ExampleTwoQuick) {
  const RealField r;
  const auto spec = examples::example(2);
  const auto rep = compute_structure(spec, 1000, 100, RngStream(5));
  ASSERT_TRUE(rep.gap_certified);
  EXPECT_TRUE(rep.L_mu.equals(Subspace<RealField>::span(r, {{1.0, 0.0, 0.0}}, 3)));
  ASSERT_TRUE(rep.U_mu.has_value());
  EXPECT_TRUE(rep.U_mu->is_full());
  EXPECT_FALSE(rep.L_mu.contains(*rep.U_mu));
  ASSERT_EQ(rep.fk_levels.size(), 2u);
  EXPECT_NEAR(rep.fk_levels[1].beta, std::log(0.5), 1e-12);
  for (const auto& lvl : rep.fk_levels)
    for (const auto& g : spec.atoms) EXPECT_TRUE(is_invariant(g, lvl.subspace));
}

TEST(Structure, PadicDiagonal) {
  const PadicField q3(3);
  const auto spec = uniform_measure(q3, {Matrix<Rational>{{1, 0}, {0, 3}}});
  const auto rep = compute_structure(spec, 30, 2, RngStream(1));
  ASSERT_TRUE(rep.gap_certified);
  // |3|_3 = 1/3 so e1 carries the top exponent
  EXPECT_TRUE(rep.L_mu.equals(Subspace<PadicField>::span(q3, {{0, 1}}, 2)));
  EXPECT_TRUE(rep.U_mu->equals(Subspace<PadicField>::span(q3, {{1, 0}}, 2)));
}
