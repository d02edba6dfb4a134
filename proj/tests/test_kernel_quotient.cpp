#include <doctest.h>

#include "absorder/generators.hpp"
#include "absorder/quotient.hpp"
#include "test_util.hpp"

using namespace absorder;

namespace {
const ToleranceConfig kCfg = [] {
  ToleranceConfig c;
  c.samples = 100;
  c.seed = 77;
  return c;
}();
}  // namespace

TEST_CASE("injective maps have trivial kernels") {
  const auto gen = gen_map({MapFamily::unitary_conjugation, 3});
  const KernelData kd = kernel_data(gen.map, kCfg);
  CHECK(kd.kernel_basis.empty());
  CHECK(kd.positive_generators.empty());
  CHECK(kd.checks.passed());
  CHECK(is_injective(gen.map, kCfg));
}

TEST_CASE("block compression kernel is the second block") {
  const auto comp = make_block_compression(2, 2);
  const KernelData kd = kernel_data(comp, kCfg);
  INFO(to_text(kd.checks));
  CHECK(kd.kernel_basis.size() == 4);  // sa dimension of M_2
  CHECK(kd.checks.passed());
  // every kernel element is supported in the bottom-right block
  for (const auto& w : kd.kernel_basis) {
    CHECK(w.coords.topLeftCorner(2, 2).norm() < 1e-10);
    CHECK(w.coords.topRightCorner(2, 2).norm() < 1e-10);
  }
  // ker+ = {0} iff injective; here it is not
  CHECK_FALSE(kd.positive_generators.empty());
  CHECK_FALSE(is_injective(comp, kCfg));
}

TEST_CASE("kernel machinery rejects non-preservers") {
  const auto gen = gen_map({MapFamily::positive_nonpreserver, 2});
  CHECK_THROWS_AS(kernel_data(gen.map, kCfg), NotAbsPreserving);
  CHECK_THROWS_AS(quotient_model(gen.map, kCfg), NotAbsPreserving);
}

TEST_CASE("quotient by a trivial kernel reproduces the space") {
  const auto gen = gen_map({MapFamily::unitary_conjugation, 2, 0, 0.0, false,
                            false, 5});
  const QuotientSpace q = quotient_model(gen.map, kCfg);
  CHECK(q.dim() == 4);
  CHECK(q.kernel_basis().empty());
  const CheckReport rep = quotient_axiom_suite(q, kCfg);
  INFO(to_text(rep));
  CHECK(rep.passed());
}

TEST_CASE("quotient of the block compression is the first block") {
  const auto comp = make_block_compression(2, 2);
  const QuotientSpace q = quotient_model(comp, kCfg);
  CHECK(q.dim() == 4);
  CHECK(q.kernel_basis().size() == 4);
  const CheckReport rep = quotient_axiom_suite(q, kCfg);
  INFO(to_text(rep));
  CHECK(rep.passed());

  SUBCASE("induced absolute value is representative independent") {
    RngStream rng(3);
    const auto& V = q.ambient();
    for (int t = 0; t < 20; ++t) {
      RVec x(q.dim());
      for (int i = 0; i < q.dim(); ++i) x(i) = rng.gaussian();
      Element shifted = q.lift(x);
      for (const auto& kb : q.kernel_basis())
        shifted = shifted + rng.gaussian() * kb;
      CHECK((q.project(abs_element(V, shifted)) - q.abs(x)).norm() < 1e-9);
    }
  }

  SUBCASE("induced map is a bijection onto the image and preserves |.|") {
    RngStream rng(4);
    const auto& W = comp.codomain();
    for (int t = 0; t < 20; ++t) {
      RVec x(q.dim());
      for (int i = 0; i < q.dim(); ++i) x(i) = rng.gaussian();
      CHECK(frobenius(q.induced_map(q.abs(x)) -
                      abs_element(W, q.induced_map(x))) < 1e-9);
    }
  }
}

TEST_CASE("quotient of a rectangular-kernel compression") {
  const auto comp = make_block_compression(3, 2);
  const QuotientSpace q = quotient_model(comp, kCfg);
  CHECK(q.dim() == 9);
  CHECK(q.kernel_basis().size() == 4);
  CHECK(quotient_axiom_suite(q, kCfg.with_samples(60)).passed());
}
