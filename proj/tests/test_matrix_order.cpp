#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "absorder/generators.hpp"
#include "absorder/matrix_order.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace absorder;

namespace {
const ToleranceConfig kCfg = [] {
  ToleranceConfig c;
  c.samples = 120;
  c.seed = 29;
  return c;
}();
}  // namespace

TEST_CASE("abs_mn on a row over hermitian(1)") {
  const auto h1 = SpaceModel::hermitian(1);
  Mat row(1, 2);
  row << Cplx(1, 0), Cplx(0, 0);
  const Element v{row, {1, 2}};
  const Element a = abs_mn(h1, v);
  CHECK(a.level == Level{2, 2});
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = Cplx(1, 0);
  CHECK(frobenius(a - Element{expected, {2, 2}}) < 1e-12);
}

TEST_CASE("abs_mn is consistent with the base absolute value on squares") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(41);
  for (int t = 0; t < 10; ++t) {
    const Element v = draw_self_adjoint(h2, rng, 2);
    CHECK(frobenius(abs_mn(h2, v) - abs_element(h2, v)) < 1e-12);
  }
}

TEST_CASE("rectangular abs agrees with the SVD polar oracle") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(43);
  for (int t = 0; t < 15; ++t) {
    const int m = rng.uniform_int(1, 3);
    const int n = rng.uniform_int(1, 3);
    const Element v{draw_ginibre(h2, rng, {m, n}), {m, n}};
    const Mat expected = oracles::abs_rectangular_svd(v.coords);
    CHECK((abs_mn(h2, v).coords - expected).norm() < 1e-9);
  }
}

TEST_CASE("matrix axiom suite holds on hermitian models") {
  const CheckReport rep = matrix_axiom_suite(SpaceModel::hermitian(2), kCfg);
  INFO(to_text(rep));
  CHECK(rep.passed());
}

TEST_CASE("compression inequality collapses for unitary alpha, beta") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(47);
  const Element v{draw_ginibre(h2, rng, {2, 2}), {2, 2}};
  const Mat id2 = Mat::Identity(2, 2);
  const Element lhs = abs_mn(h2, scalar_compress(h2, id2, v, id2));
  const Element rhs = abs_mn(h2, v);
  CHECK(frobenius(lhs - rhs) < 1e-12);
}

TEST_CASE("direct sum identity is exact for diagonal payloads") {
  const auto h1 = SpaceModel::hermitian(1);
  const Element v = testutil::diag({2, -3});
  const Element w = testutil::diag({-1, 5});
  // over hermitian(1), level (2,2) elements are plain 2x2 matrices
  const Element vv{v.coords, {2, 2}};
  const Element ww{w.coords, {2, 2}};
  const Element lhs = abs_mn(h1, direct_sum(h1, vv, ww));
  const Element rhs = direct_sum(h1, abs_mn(h1, vv), abs_mn(h1, ww));
  CHECK(frobenius(lhs - rhs) < 1e-13);
}

TEST_CASE("matrix absolute-value identities hold") {
  const CheckReport rep =
      matrix_abs_identities_suite(SpaceModel::hermitian(2), kCfg);
  INFO(to_text(rep));
  CHECK(rep.passed());
}

TEST_CASE("positivity of the polar block matrix degenerates cleanly at v = 0") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element v = zero_element(h2, {1, 2});
  const Element va = abs_mn(h2, v);
  const Element vsa = abs_mn(h2, level_adjoint(h2, v));
  Mat block = Mat::Zero(6, 6);
  block.topLeftCorner(2, 2) = vsa.coords;
  block.bottomRightCorner(4, 4) = va.coords;
  CHECK(in_cone(h2, {block, {3, 3}}, kCfg));
  CHECK(frobenius(va) == 0.0);
}

TEST_CASE("off-diagonal identity against the block-spectral oracle") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(53);
  for (int t = 0; t < 10; ++t) {
    const int m = rng.uniform_int(1, 2);
    const int n = rng.uniform_int(1, 2);
    const Element v{draw_ginibre(h2, rng, {m, n}), {m, n}};
    const Element block = direct_sum_offdiag(h2, v);
    // oracle route: eigendecomposition of the self-adjoint block matrix
    const Mat lhs = oracles::abs_selfadjoint_eig(block.coords);
    // library route: |v*| (+) |v| via Gram square roots
    const Element rhs = direct_sum(h2, abs_mn(h2, level_adjoint(h2, v)),
                                   abs_mn(h2, v));
    CHECK((lhs - rhs.coords).norm() < 1e-8);
  }
}

TEST_CASE("isometric alpha leaves |v| unchanged") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(59);
  for (int t = 0; t < 10; ++t) {
    const int m = rng.uniform_int(1, 2);
    const int r = rng.uniform_int(m, 3);
    const Mat alpha = draw_isometric_scalar(rng, r, m);
    CHECK((alpha.adjoint() * alpha - Mat::Identity(m, m)).norm() < 1e-12);
    const Element v{draw_ginibre(h2, rng, {m, 2}), {m, 2}};
    const Element lhs =
        abs_mn(h2, scalar_compress(h2, alpha, v, Mat::Identity(2, 2)));
    CHECK(frobenius(lhs - abs_mn(h2, v)) < 1e-9);
  }
}

TEST_CASE("amplification") {
  const auto h2 = SpaceModel::hermitian(2);
  SUBCASE("identity amplifies to the identity") {
    const auto id = StarLinearMap::identity(h2);
    const auto id2 = amplify(id, 2);
    RngStream rng(61);
    const Element v = draw_self_adjoint(h2, rng, 2);
    CHECK(frobenius(id2.apply(v) - v) < 1e-14);
  }
  SUBCASE("conjugation amplifies to conjugation by I (x) u") {
    const auto gen = gen_map({MapFamily::unitary_conjugation, 2, 0, 0.0, false,
                              false, 19});
    const auto phi2 = amplify(gen.map, 2);
    // recover u from the action on matrix units via phi(x) = u* x u
    RngStream rng(67);
    const Element v = draw_self_adjoint(h2, rng, 2);
    Mat big = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        big.block(2 * i, 2 * j, 2, 2) =
            gen.map.apply_block(v.coords.block(2 * i, 2 * j, 2, 2));
    CHECK((phi2.apply(v).coords - big).norm() < 1e-13);
  }
  SUBCASE("partial transpose of the entangled element is not positive") {
    const auto gen = gen_map({MapFamily::transpose, 2});
    const Element omega = max_entangled_element(h2, 2);
    CHECK(in_cone(h2, omega, kCfg));
    const Element swapped = amplify(gen.map, 2).apply(omega);
    Eigen::SelfAdjointEigenSolver<Mat> es(swapped.coords,
                                          Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK_FALSE(in_cone(h2, swapped, kCfg));
  }
  SUBCASE("level mismatch is rejected") {
    const auto id = amplify(StarLinearMap::identity(h2), 2);
    CHECK_THROWS_AS(id.apply(unit_element(h2, 3)), ShapeError);
    CHECK_THROWS_AS(amplify(gen_map({MapFamily::permutation_lattice, 3}).map, 2),
                    LatticeUnsupported);
  }
}

TEST_CASE("matricial suites reject the lattice model") {
  CHECK_THROWS_AS(matrix_axiom_suite(SpaceModel::lattice(3), kCfg),
                  LatticeUnsupported);
  CHECK_THROWS_AS(abs_mn(SpaceModel::lattice(3), testutil::vec({1, 2, 3})),
                  LatticeUnsupported);
}
