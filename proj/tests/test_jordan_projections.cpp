#include <doctest.h>

#include "absorder/generators.hpp"
#include "absorder/maps.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace absorder;
using testutil::diag;
using testutil::vec;

namespace {
const ToleranceConfig kCfg = [] {
  ToleranceConfig c;
  c.samples = 100;
  c.seed = 13;
  return c;
}();
}  // namespace

TEST_CASE("jordan product basics") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element e = unit_element(h2);
  CHECK(frobenius(jordan_product(h2, e, e) - e) < 1e-15);
  CHECK(frobenius(jordan_product(h2, diag({1, 0}), diag({0, 1}))) < 1e-15);
  CHECK_THROWS_AS(
      jordan_product(SpaceModel::lattice(2), vec({1, 2}), vec({3, 4})),
      LatticeUnsupported);
  CHECK(frobenius(lattice_product(SpaceModel::lattice(2), vec({1, 2}),
                                  vec({3, 4})) -
                  vec({3, 8})) < 1e-15);
}

TEST_CASE("jordan homomorphism verdicts on the families") {
  CHECK(is_jordan_hom(gen_map({MapFamily::unitary_conjugation, 2}).map, kCfg));
  CHECK(is_jordan_hom(gen_map({MapFamily::transpose, 3}).map, kCfg));
  CHECK_FALSE(
      is_jordan_hom(gen_map({MapFamily::positive_nonpreserver, 2}).map, kCfg));
  // lattice permutations preserve the coordinatewise product
  CHECK(is_jordan_hom(gen_map({MapFamily::permutation_lattice, 4}).map, kCfg));
}

TEST_CASE("jordan check is exact on basis pairs") {
  const auto gen = gen_map({MapFamily::unitary_conjugation, 3, 0, 0.0, false,
                            false, 21});
  const PropertyResult r = is_jordan_hom_detail(gen.map, kCfg);
  CHECK(r.pass());
  CHECK(r.method == CheckMethod::exact);
  CHECK(r.max_residual <= 1e-12);
  // basis pairs cover the bilinear check completely: 9 * 10 / 2 pairs
  CHECK(r.samples == 45);
}

TEST_CASE("three-way Jordan equivalence") {
  SUBCASE("conjugation and transpose: all three true") {
    for (auto&& gen :
         {gen_map({MapFamily::unitary_conjugation, 2}),
          gen_map({MapFamily::transpose, 2})}) {
      const auto rep = jordan_equivalence_suite(gen.map, kCfg);
      CHECK(rep.equivalences_hold);
      CHECK(rep.verdict_is("order_isometry", Verdict::pass));
      CHECK(rep.verdict_is("unital_abs_preserving", Verdict::pass));
      CHECK(rep.verdict_is("jordan_homomorphism", Verdict::pass));
    }
  }
  SUBCASE("doubling: all three false") {
    const auto rep =
        jordan_equivalence_suite(gen_map({MapFamily::scaling, 2, 0, 2.0}).map,
                                 kCfg);
    CHECK(rep.equivalences_hold);
    CHECK(rep.verdict_is("order_isometry", Verdict::fail));
    CHECK(rep.verdict_is("unital_abs_preserving", Verdict::fail));
    CHECK(rep.verdict_is("jordan_homomorphism", Verdict::fail));
  }
  SUBCASE("lattice models are rejected") {
    CHECK_THROWS_AS(jordan_equivalence_suite(
                        gen_map({MapFamily::permutation_lattice, 3}).map, kCfg),
                    LatticeUnsupported);
  }
}

TEST_CASE("order projections") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element e = unit_element(h2);
  CHECK(is_order_projection(h2, zero_element(h2), kCfg));
  CHECK(is_order_projection(h2, e, kCfg));
  CHECK(is_order_projection(h2, diag({1, 0}), kCfg));
  CHECK_FALSE(is_order_projection(h2, 0.5 * e, kCfg));
  CHECK_THROWS_AS(is_order_projection(h2, 2.0 * e, kCfg), OutOfInterval);
  CHECK_THROWS_AS(is_order_projection(h2, -1.0 * diag({1, 0}), kCfg),
                  OutOfInterval);

  SUBCASE("order-theoretic test agrees with the algebraic oracle") {
    RngStream rng(31);
    for (int t = 0; t < 20; ++t) {
      const Element p =
          t % 2 ? draw_projection(h2, rng) : draw_unit_interval(h2, rng);
      const auto d = is_order_projection_detail(h2, p, kCfg);
      CHECK(d.algebraic_consistent);
    }
  }

  SUBCASE("lattice order projections are 0/1 vectors") {
    const auto lat = SpaceModel::lattice(3);
    CHECK(is_order_projection(lat, vec({1, 0, 1}), kCfg));
    CHECK_FALSE(is_order_projection(lat, vec({0.5, 0, 1}), kCfg));
  }
}

TEST_CASE("unital preservers transport order projections") {
  const auto gen = gen_map({MapFamily::unitary_conjugation, 3, 0, 0.0, false,
                            false, 3});
  const CheckReport rep = order_projection_preservation_suite(gen.map, kCfg);
  INFO(to_text(rep));
  CHECK(rep.passed());

  CHECK_THROWS_AS(order_projection_preservation_suite(
                      gen_map({MapFamily::corner_embedding, 2, 1}).map, kCfg),
                  NotUnital);
  CHECK_THROWS_AS(order_projection_preservation_suite(
                      gen_map({MapFamily::positive_nonpreserver, 2}).map, kCfg),
                  NotAbsPreserving);
}

TEST_CASE("absolute compatibility") {
  const auto h2 = SpaceModel::hermitian(2);
  CHECK(is_abs_compatible(h2, diag({1, 0}), diag({1, 1}), kCfg));
  // |u - v| + |e - u - v| = 0 != e for u = v = e/2
  CHECK_FALSE(is_abs_compatible(h2, 0.5 * unit_element(h2),
                                0.5 * unit_element(h2), kCfg));
  CHECK_THROWS_AS(is_abs_compatible(h2, diag({1, -1}), diag({1, 0}), kCfg),
                  OutsideCone);

  SUBCASE("verdict matches the joint-spectrum oracle on commuting pairs") {
    RngStream rng(17);
    for (int t = 0; t < 30; ++t) {
      // u, v share the eigenbasis of a random unitary; eigenvalues free
      RVec s(2), w(2);
      for (int i = 0; i < 2; ++i) {
        s(i) = rng.uniform();
        w(i) = rng.uniform();
      }
      if (t % 3 == 0) s(0) = 0.0;   // force pockets of compatibility
      if (t % 4 == 0) w(1) = 1.0;
      const Mat u0 = draw_unitary(h2, rng);
      const Element u{Mat(u0 * s.cast<Cplx>().asDiagonal() * u0.adjoint()),
                      {1, 1}};
      const Element v{Mat(u0 * w.cast<Cplx>().asDiagonal() * u0.adjoint()),
                      {1, 1}};
      const Element uh{0.5 * (u.coords + u.coords.adjoint()), {1, 1}};
      const Element vh{0.5 * (v.coords + v.coords.adjoint()), {1, 1}};
      CHECK(is_abs_compatible(h2, uh, vh, kCfg) ==
            oracles::compat_scalar_criterion(s, w));
    }
  }
}

TEST_CASE("compatibility transported when phi(e) is an order projection") {
  SUBCASE("unital case") {
    const auto gen = gen_map({MapFamily::unitary_conjugation, 2, 0, 0.0, false,
                              false, 9});
    const CheckReport rep = abs_compatibility_preservation_suite(gen.map, kCfg);
    INFO(to_text(rep));
    CHECK(rep.passed());
  }
  SUBCASE("corner embedding: phi(e) is a proper projection") {
    const auto gen = gen_map({MapFamily::corner_embedding, 2, 1});
    const Element unit_image = gen.map.apply(unit_element(gen.map.domain()));
    CHECK(is_order_projection(gen.map.codomain(), unit_image, kCfg));
    const CheckReport rep = abs_compatibility_preservation_suite(gen.map, kCfg);
    INFO(to_text(rep));
    CHECK(rep.passed());
  }
  SUBCASE("precondition failures throw") {
    CHECK_THROWS_AS(
        abs_compatibility_preservation_suite(
            gen_map({MapFamily::positive_nonpreserver, 2}).map, kCfg),
        NotAbsPreserving);
    CHECK_THROWS_AS(abs_compatibility_preservation_suite(
                        gen_map({MapFamily::scaling, 2, 0, 0.5}).map, kCfg),
                    OutOfInterval);
  }
}
