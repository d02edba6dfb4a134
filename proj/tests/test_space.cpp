#include <doctest.h>

#include "absorder/space.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace absorder;
using testutil::diag;
using testutil::herm;
using testutil::vec;

namespace {
const ToleranceConfig kCfg{};
}

TEST_CASE("absolute value on diagonal and involutive cases") {
  const auto h2 = SpaceModel::hermitian(2);
  CHECK(frobenius(abs_element(h2, diag({1, -2})) - diag({1, 2})) < 1e-12);
  // v self-adjoint with v^2 = I has |v| = I.
  const Element flip = herm({0, 1, 1, 0});
  CHECK(frobenius(abs_element(h2, flip) - unit_element(h2)) < 1e-12);
}

TEST_CASE("absolute value matches the eigendecomposition oracle") {
  const auto h3 = SpaceModel::hermitian(3);
  RngStream rng(42);
  for (int t = 0; t < 25; ++t) {
    const Element v = draw_self_adjoint(h3, rng);
    const Mat expected = oracles::abs_selfadjoint_eig(v.coords);
    CHECK((abs_element(h3, v).coords - expected).norm() < 1e-10);
  }
}

TEST_CASE("positive and negative parts") {
  const auto h2 = SpaceModel::hermitian(2);
  auto [p, m] = pos_neg_parts(h2, diag({1, -2}));
  CHECK(frobenius(p - diag({1, 0})) < 1e-12);
  CHECK(frobenius(m - diag({0, 2})) < 1e-12);

  RngStream rng(7);
  SUBCASE("cone elements decompose as (v, 0)") {
    for (int t = 0; t < 10; ++t) {
      const Element v = draw_psd(h2, rng);
      auto [vp, vm] = pos_neg_parts(h2, v);
      CHECK(frobenius(vp - v) < 1e-9);
      CHECK(frobenius(vm) < 1e-9);
    }
  }
  SUBCASE("parts recompose v and |v|") {
    const auto h3 = SpaceModel::hermitian(3);
    for (int t = 0; t < 25; ++t) {
      const Element v = draw_self_adjoint(h3, rng);
      auto [vp, vm] = pos_neg_parts(h3, v);
      CHECK(frobenius((vp - vm) - v) < 1e-10);
      CHECK(frobenius((vp + vm) - abs_element(h3, v)) < 1e-10);
      CHECK(in_cone(h3, vp));
      CHECK(in_cone(h3, vm));
    }
  }
}

TEST_CASE("order unit norm") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element v = diag({3, -5});
  const double n = order_unit_norm(h2, v);
  CHECK(n == doctest::Approx(5.0).epsilon(1e-12));
  // bisection over the cone-membership predicate must agree
  CHECK(oracles::norm_scan(h2, v) == doctest::Approx(5.0).epsilon(1e-7));
  CHECK(order_unit_norm(h2, unit_element(h2)) == doctest::Approx(1.0));

  const auto lat = SpaceModel::lattice(3);
  CHECK(order_unit_norm(lat, vec({1, -2, 0.5})) == doctest::Approx(2.0));
}

TEST_CASE("lower bound functional") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(3);
  for (int t = 0; t < 10; ++t)
    CHECK(lower_bound_functional(h2, draw_psd(h2, rng)) <= 1e-12);

  const Element v = diag({3, -5});
  CHECK(lower_bound_functional(h2, v) == doctest::Approx(5.0));
  CHECK(oracles::lower_bound_grid(h2, v) == doctest::Approx(5.0));

  const auto lat = SpaceModel::lattice(2);
  CHECK(lower_bound_functional(lat, vec({2, -3})) == doctest::Approx(3.0));
  CHECK(oracles::lower_bound_grid(lat, vec({2, -3})) == doctest::Approx(3.0));

  SUBCASE("l(v) equals the norm of the negative part") {
    const auto h3 = SpaceModel::hermitian(3);
    for (int t = 0; t < 20; ++t) {
      const Element w = draw_self_adjoint(h3, rng);
      auto parts = pos_neg_parts(h3, w);
      CHECK(lower_bound_functional(h3, w) ==
            doctest::Approx(order_unit_norm(h3, parts.second)).epsilon(1e-9));
    }
  }
}

TEST_CASE("norm and scaling invariants") {
  const auto h3 = SpaceModel::hermitian(3);
  RngStream rng(11);
  for (int t = 0; t < 20; ++t) {
    const Element v = draw_self_adjoint(h3, rng);
    const Element a = abs_element(h3, v);
    CHECK(in_cone(h3, a));
    CHECK(in_cone(h3, a + v));
    CHECK(in_cone(h3, a - v));
    const double lam = rng.uniform(-2.5, 2.5);
    CHECK(frobenius(abs_element(h3, lam * v) - std::abs(lam) * a) < 1e-9);
    CHECK(order_unit_norm(h3, a) ==
          doctest::Approx(order_unit_norm(h3, v)).epsilon(1e-10));
  }
}

TEST_CASE("cone properness") {
  const auto h2 = SpaceModel::hermitian(2);
  RngStream rng(5);
  for (int t = 0; t < 10; ++t) {
    const Element v = draw_self_adjoint(h2, rng);
    if (in_cone(h2, v) && in_cone(h2, -v))
      CHECK(order_unit_norm(h2, v) <= 1e-8);
  }
  CHECK(in_cone(h2, zero_element(h2)));
  CHECK(in_cone(h2, -zero_element(h2)));
}

TEST_CASE("decomposition uniqueness against generated orthogonal pairs") {
  const auto h3 = SpaceModel::hermitian(3);
  RngStream rng(17);
  for (int t = 0; t < 15; ++t) {
    auto [v1, v2] = draw_orthogonal_pair(h3, rng);
    auto [vp, vm] = pos_neg_parts(h3, v1 - v2);
    CHECK(frobenius(vp - v1) < 1e-7);
    CHECK(frobenius(vm - v2) < 1e-7);
  }
}

TEST_CASE("error paths") {
  const auto h2 = SpaceModel::hermitian(2);
  const auto lat = SpaceModel::lattice(3);
  Mat bad(2, 2);
  bad << Cplx(0, 0), Cplx(1, 0), Cplx(0, 0), Cplx(0, 0);
  CHECK_THROWS_AS(order_unit_norm(h2, {bad, {1, 1}}), NotSelfAdjoint);
  CHECK_THROWS_AS(pos_neg_parts(h2, {bad, {1, 1}}), NotSelfAdjoint);
  CHECK_THROWS_AS(abs_element(h2, {Mat::Zero(3, 3), {1, 1}}), ShapeError);
  CHECK_THROWS_AS(abs_element(lat, {Mat::Zero(6, 2), {2, 2}}), LatticeUnsupported);
  Mat nan2 = Mat::Zero(2, 2);
  nan2(0, 0) = Cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(abs_element(h2, {nan2, {1, 1}}), ShapeError);
  CHECK_THROWS_AS(unit_element(lat, 2), LatticeUnsupported);
}

TEST_CASE("multi-block model structure") {
  const auto m = SpaceModel::hermitian_blocks({2, 2});
  CHECK(m.ambient_size() == 4);
  CHECK(m.sa_dim() == 8);
  CHECK(m.descriptor() == "hermitian:2+2");
  RngStream rng(23);
  const Element v = draw_self_adjoint(m, rng);
  CHECK(pattern_respected(m, v, 1e-12));
  // off-pattern entries break self-adjointness w.r.t. the model
  Mat off = Mat::Zero(4, 4);
  off(0, 3) = off(3, 0) = Cplx(1, 0);
  CHECK_FALSE(is_self_adjoint(m, {off, {1, 1}}));
  const Element a = abs_element(m, v);
  CHECK(pattern_respected(m, a, 1e-9));
}
