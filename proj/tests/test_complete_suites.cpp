#include <doctest.h>

#include "absorder/generators.hpp"
#include "absorder/matrix_order.hpp"
#include "test_util.hpp"

using namespace absorder;

namespace {
const ToleranceConfig kCfg = [] {
  ToleranceConfig c;
  c.samples = 100;
  c.seed = 37;
  return c;
}();

int first_preserver_fail(const ClassificationReport& rep, int cap) {
  const bool uni = rep.verdict_is("unital", Verdict::pass);
  for (int n = 1; n <= cap; ++n) {
    if (!uni ||
        !rep.verdict_is("abs_preserving@" + std::to_string(n), Verdict::pass))
      return n;
  }
  return 0;
}

int first_order_fail(const ClassificationReport& rep, int cap) {
  for (int n = 1; n <= cap; ++n)
    if (!rep.verdict_is("order_isometry@" + std::to_string(n), Verdict::pass))
      return n;
  return 0;
}
}  // namespace

TEST_CASE("complete-level profiles") {
  SUBCASE("unitary conjugation passes every level") {
    const auto rep =
        complete_suite(gen_map({MapFamily::unitary_conjugation, 2}).map, 3, kCfg);
    INFO(to_text(rep));
    CHECK(rep.equivalences_hold);
    CHECK(first_order_fail(rep, 3) == 0);
    CHECK(first_preserver_fail(rep, 3) == 0);
  }
  SUBCASE("transpose fails both sides exactly at level 2") {
    const auto rep = complete_suite(gen_map({MapFamily::transpose, 2}).map, 3, kCfg);
    INFO(to_text(rep));
    CHECK(rep.equivalences_hold);
    CHECK(first_order_fail(rep, 3) == 2);
    CHECK(first_preserver_fail(rep, 3) == 2);
  }
  SUBCASE("doubling fails both sides at level 1") {
    const auto rep =
        complete_suite(gen_map({MapFamily::scaling, 2, 0, 2.0}).map, 3, kCfg);
    CHECK(rep.equivalences_hold);
    CHECK(first_order_fail(rep, 3) == 1);
    CHECK(first_preserver_fail(rep, 3) == 1);
  }
  SUBCASE("non-bijective maps are rejected") {
    CHECK_THROWS_AS(
        complete_suite(gen_map({MapFamily::corner_embedding, 2, 1}).map, 3, kCfg),
        Singular);
  }
}

TEST_CASE("multiplicativity equivalence") {
  SUBCASE("identity and conjugation: all three verdicts true") {
    for (auto&& gen : {gen_map({MapFamily::unitary_conjugation, 2}),
                       gen_map({MapFamily::unitary_conjugation, 3, 0, 0.0,
                                false, false, 2})}) {
      const auto rep = multiplicativity_equivalence_suite(gen.map, kCfg);
      INFO(to_text(rep));
      CHECK(rep.equivalences_hold);
      CHECK(rep.verdict_is("multiplicative", Verdict::pass));
      CHECK(rep.verdict_is("block_trick_consistency", Verdict::pass));
      const auto* mult = rep.find("multiplicative");
      CHECK(mult->max_residual <= 1e-12);
    }
  }
  SUBCASE("transpose: all three verdicts false, consistently") {
    const auto rep = multiplicativity_equivalence_suite(
        gen_map({MapFamily::transpose, 2}).map, kCfg);
    INFO(to_text(rep));
    CHECK(rep.equivalences_hold);
    CHECK(rep.verdict_is("multiplicative", Verdict::fail));
    CHECK(rep.verdict_is("block_trick_consistency", Verdict::pass));
  }
  SUBCASE("identity: all three verdicts true") {
    const auto rep = multiplicativity_equivalence_suite(
        StarLinearMap::identity(SpaceModel::hermitian(2)), kCfg);
    CHECK(rep.equivalences_hold);
    CHECK(rep.verdict_is("multiplicative", Verdict::pass));
    CHECK(rep.verdict_is("order_isometry@3", Verdict::pass));
  }
}

TEST_CASE("the 3x3 block residual detects non-multiplicativity exactly") {
  const auto h2 = SpaceModel::hermitian(2);
  const auto gen = gen_map({MapFamily::transpose, 2});
  // x = e12, y = e21
  Mat x = Mat::Zero(2, 2), y = Mat::Zero(2, 2);
  x(0, 1) = Cplx(1, 0);
  y(1, 0) = Cplx(1, 0);
  Mat a = Mat::Zero(6, 6);
  a.block(0, 2, 2, 2) = x;
  a.block(2, 0, 2, 2) = x.adjoint();
  a.block(2, 4, 2, 2) = y;
  a.block(4, 2, 2, 2) = y.adjoint();
  const Element a3{a, {3, 3}};
  const Element a3sq{Mat(a * a), {3, 3}};
  const double trick =
      frobenius(gen.map.apply(a3sq) -
                Element{Mat(gen.map.apply(a3).coords * gen.map.apply(a3).coords),
                        {3, 3}});
  CHECK(trick >= 1e-3);
  const double direct =
      (gen.map.apply_block(x * y) -
       gen.map.apply_block(x) * gen.map.apply_block(y))
          .norm();
  CHECK(direct >= 1e-3);

  // multiplicative control: conjugation on the same pair
  const auto good = gen_map({MapFamily::unitary_conjugation, 2});
  const double trick_good =
      frobenius(good.map.apply(a3sq) -
                Element{Mat(good.map.apply(a3).coords * good.map.apply(a3).coords),
                        {3, 3}});
  CHECK(trick_good <= 1e-8);
}

TEST_CASE("three-isometry criterion") {
  SUBCASE("conjugation: 3-isometry and multiplicative") {
    const auto rep = three_isometry_suite(
        gen_map({MapFamily::unitary_conjugation, 2}).map, kCfg);
    CHECK(rep.equivalences_hold);
    CHECK(rep.verdict_is("three_isometry", Verdict::pass));
    CHECK(rep.verdict_is("multiplicative", Verdict::pass));
    CHECK(three_isometry_check(
        gen_map({MapFamily::unitary_conjugation, 2}).map, kCfg));
  }
  SUBCASE("transpose fails the 2-isometry, implication vacuous") {
    const auto rep =
        three_isometry_suite(gen_map({MapFamily::transpose, 2}).map, kCfg);
    CHECK(rep.equivalences_hold);
    CHECK(rep.verdict_is("isometry@2", Verdict::fail));
    CHECK(rep.verdict_is("three_isometry", Verdict::fail));
    CHECK_FALSE(
        three_isometry_check(gen_map({MapFamily::transpose, 2}).map, kCfg));
  }
  SUBCASE("non-unital maps are rejected") {
    CHECK_THROWS_AS(three_isometry_suite(
                        gen_map({MapFamily::scaling, 2, 0, 2.0}).map, kCfg),
                    NotUnital);
  }
}
