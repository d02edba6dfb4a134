#include <doctest.h>

#include "absorder/axioms.hpp"
#include "test_util.hpp"

using namespace absorder;
using testutil::diag;

TEST_CASE("hermitian and lattice instances satisfy the axioms") {
  ToleranceConfig cfg;
  cfg.samples = 200;
  cfg.seed = 7;
  for (const auto& model :
       {SpaceModel::hermitian(2), SpaceModel::lattice(4)}) {
    const CheckReport rep = check_absolutely_ordered_axioms(model, cfg);
    INFO(to_text(rep));
    CHECK(rep.passed());
    for (const auto& e : rep.entries) CHECK(e.trials > 0);
  }
}

TEST_CASE("multi-block hermitian model satisfies the axioms") {
  ToleranceConfig cfg;
  cfg.samples = 80;
  cfg.seed = 3;
  const CheckReport rep =
      check_absolutely_ordered_axioms(SpaceModel::hermitian_blocks({2, 2}), cfg);
  INFO(to_text(rep));
  CHECK(rep.passed());
}

TEST_CASE("evenness of the absolute value is exact for k = -1") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element v = diag({1.25, -0.5});
  CHECK(frobenius(abs_element(h2, -1.0 * v) - abs_element(h2, v)) == 0.0);
}

TEST_CASE("absolute order unit conditions hold on the models") {
  ToleranceConfig cfg;
  cfg.samples = 150;
  cfg.seed = 11;
  for (const auto& model :
       {SpaceModel::hermitian(3), SpaceModel::lattice(5)}) {
    const CheckReport rep = check_absolute_order_unit(model, cfg);
    INFO(to_text(rep));
    CHECK(rep.passed());
  }
}

TEST_CASE("norm identities on the standard witness") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element v = diag({1, -1});
  auto [vp, vm] = pos_neg_parts(h2, v);
  CHECK(order_unit_norm(h2, abs_element(h2, v)) == doctest::Approx(1.0));
  CHECK(order_unit_norm(h2, v) == doctest::Approx(1.0));
  CHECK(std::max(order_unit_norm(h2, vp), order_unit_norm(h2, vm)) ==
        doctest::Approx(1.0));
}

TEST_CASE("projection pairs are orthogonal in all three senses") {
  const auto h2 = SpaceModel::hermitian(2);
  const Element p = diag({1, 0});
  const Element q = unit_element(h2) - p;
  CHECK(perp(h2, p, q));
  CHECK(perp_infty(h2, p, q));
  CHECK(perp_infty_abs(h2, p, q));
}

TEST_CASE("axiom suite runs at matricial levels") {
  ToleranceConfig cfg;
  cfg.samples = 40;
  cfg.seed = 19;
  const CheckReport rep =
      check_absolutely_ordered_axioms(SpaceModel::hermitian(2), cfg, 2);
  INFO(to_text(rep));
  CHECK(rep.passed());
  CHECK_THROWS_AS(check_absolutely_ordered_axioms(SpaceModel::lattice(3), cfg, 2),
                  LatticeUnsupported);
}
