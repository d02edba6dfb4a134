#include <doctest.h>

#include "absorder/generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace absorder;

namespace {
const ToleranceConfig kCfg = [] {
  ToleranceConfig c;
  c.samples = 100;
  c.seed = 71;
  return c;
}();
}  // namespace

TEST_CASE("generated orthogonal pairs pass all three orthogonality oracles") {
  for (const auto& model :
       {SpaceModel::hermitian(2), SpaceModel::hermitian(3)}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto [u, v] = gen_orthogonal_pair(model, seed);
      CHECK(oracles::product_orthogonal(model, u, v, 1e-7));
      CHECK(perp(model, u, v, kCfg));
      if (frobenius(u) > 1e-9 && frobenius(v) > 1e-9)
        CHECK(perp_infty(model, u, v, kCfg));
      CHECK(perp_infty_abs(model, u, v, kCfg));
    }
  }
}

TEST_CASE("lattice orthogonal pairs have disjoint supports") {
  const auto lat = SpaceModel::lattice(3);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto [u, v] = gen_orthogonal_pair(lat, seed);
    CHECK(u.coords.real().cwiseMin(v.coords.real()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("pairs and maps reproduce bit-identically from their seeds") {
  const auto h3 = SpaceModel::hermitian(3);
  auto [u1, v1] = gen_orthogonal_pair(h3, 41);
  auto [u2, v2] = gen_orthogonal_pair(h3, 41);
  CHECK(u1.coords == u2.coords);
  CHECK(v1.coords == v2.coords);

  const MapFamilySpec spec{MapFamily::jordan_mixture, 3, 0, 0.0, true, false, 5};
  const auto a = gen_map(spec);
  const auto b = gen_map(spec);
  CHECK(a.map.action() == b.map.action());

  auto [u3, v3] = gen_orthogonal_pair(h3, 42);
  CHECK(u1.coords != u3.coords);
}

TEST_CASE("ground truths match classifier outputs across the default matrix") {
  const auto specs = default_map_matrix({2, 3}, {3}, 2);
  CHECK(specs.size() >= 30);
  for (const auto& spec : specs) {
    const auto gen = gen_map(spec);
    const auto mismatches = compare_with_truth(gen, kCfg);
    CAPTURE(spec.name());
    for (const auto& m : mismatches) {
      INFO(m);
      CHECK(false);
    }
    CHECK(mismatches.empty());
  }
}

TEST_CASE("individual family facts") {
  SUBCASE("transpose: Jordan yes, multiplicative no") {
    const auto gen = gen_map({MapFamily::transpose, 2});
    CHECK(gen.truth.jordan == Expect::pass);
    CHECK(gen.truth.multiplicative == Expect::fail);
    CHECK(gen.truth.first_fail_level == 2);
  }
  SUBCASE("scaling doubles the lower-bound functional") {
    const auto gen = gen_map({MapFamily::scaling, 2, 0, 2.0});
    const auto h2 = gen.map.domain();
    const Element v = testutil::diag({1, -1});
    CHECK(lower_bound_functional(h2, gen.map.apply(v)) ==
          doctest::Approx(2.0 * lower_bound_functional(h2, v)));
  }
  SUBCASE("corner embedding has a projection unit image") {
    const auto gen = gen_map({MapFamily::corner_embedding, 2, 1});
    const Element img = gen.map.apply(unit_element(gen.map.domain()));
    // p^2 = p exactly by construction
    CHECK((img.coords * img.coords - img.coords).norm() < 1e-14);
    CHECK(is_order_projection(gen.map.codomain(), img, kCfg));
    CHECK(gen.truth.unit_image_is_order_projection);
  }
  SUBCASE("direct sum with a transposed summand fails at level 2") {
    const auto gen = gen_map({MapFamily::direct_sum, 2, 2, 0.0, true, false, 1});
    CHECK(gen.map.domain().descriptor() == "hermitian:2+2");
    CHECK(gen.truth.first_fail_level == 2);
    CHECK(compare_with_truth(gen, kCfg).empty());
  }
}

TEST_CASE("block compression is |.|-preserving on its block domain") {
  const auto comp = make_block_compression(2, 2);
  CHECK(is_abs_preserving(comp, kCfg));
  CHECK(is_positive(comp, kCfg));
  CHECK(is_unital(comp, kCfg));  // maps I_4-pattern unit to I_2
}
