#include "absorder/generators.hpp"

#include <algorithm>

#include "absorder/matrix_order.hpp"

namespace absorder {

std::pair<Element, Element> gen_orthogonal_pair(const SpaceModel& model,
                                                std::uint64_t seed,
                                                int level_n) {
  RngStream rng = RngStream::derived(seed, 0x0a17);
  return draw_orthogonal_pair(model, rng, level_n);
}

std::string family_name(MapFamily f) {
  switch (f) {
    case MapFamily::unitary_conjugation: return "unitary_conjugation";
    case MapFamily::transpose: return "transpose";
    case MapFamily::permutation_lattice: return "permutation_lattice";
    case MapFamily::direct_sum: return "direct_sum";
    case MapFamily::jordan_mixture: return "jordan_mixture";
    case MapFamily::positive_nonpreserver: return "positive_nonpreserver";
    case MapFamily::scaling: return "scaling";
    case MapFamily::corner_embedding: return "corner_embedding";
  }
  return "unknown";
}

std::string MapFamilySpec::name() const {
  std::string n = family_name(family) + "(size=" + std::to_string(size);
  if (family == MapFamily::direct_sum || family == MapFamily::corner_embedding)
    n += "+" + std::to_string(size2);
  if (family == MapFamily::scaling)
    n += ", t=" + std::to_string(t) + (on_lattice ? ", lattice" : "");
  if (family == MapFamily::jordan_mixture)
    n += with_transpose ? ", transpose" : ", plain";
  n += ", seed=" + std::to_string(seed) + ")";
  return n;
}

namespace {

GroundTruth all_pass_truth() {
  GroundTruth t;
  t.unital = Expect::pass;
  t.positive = Expect::expected_pass;
  t.isometry = Expect::pass;
  t.order_isometry = Expect::pass;
  t.abs_preserving = Expect::pass;
  t.jordan = Expect::pass;
  t.multiplicative = Expect::pass;
  t.bijective = true;
  t.first_fail_level = 0;
  t.unit_image_is_order_projection = true;
  return t;
}

StarLinearMap conjugation_map(const SpaceModel& model, const Mat& u) {
  return StarLinearMap::from_complex_function(
      model, model, [u](const Mat& x) { return Mat(u.adjoint() * x * u); });
}

}  // namespace

GeneratedMap gen_map(const MapFamilySpec& spec) {
  RngStream rng = RngStream::derived(spec.seed, 0x9e37 + static_cast<int>(spec.family));
  switch (spec.family) {
    case MapFamily::unitary_conjugation: {
      const SpaceModel model = SpaceModel::hermitian(spec.size);
      const Mat u = draw_unitary(model, rng);
      return {conjugation_map(model, u), all_pass_truth(), spec};
    }

    case MapFamily::transpose: {
      const SpaceModel model = SpaceModel::hermitian(spec.size);
      StarLinearMap map = StarLinearMap::from_complex_function(
          model, model, [](const Mat& x) { return Mat(x.transpose()); });
      GroundTruth t = all_pass_truth();
      if (spec.size >= 2) {
        t.multiplicative = Expect::fail;
        t.first_fail_level = 2;
      }
      return {std::move(map), t, spec};
    }

    case MapFamily::permutation_lattice: {
      const SpaceModel model = SpaceModel::lattice(spec.size);
      std::vector<int> perm(static_cast<std::size_t>(spec.size));
      for (int i = 0; i < spec.size; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (int i = spec.size - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
      RMat action = RMat::Zero(spec.size, spec.size);
      for (int i = 0; i < spec.size; ++i)
        action(perm[static_cast<std::size_t>(i)], i) = 1.0;
      StarLinearMap map(model, model, std::move(action));
      GroundTruth t = all_pass_truth();
      t.first_fail_level = 0;  // no matricial levels on the lattice
      return {std::move(map), t, spec};
    }

    case MapFamily::direct_sum: {
      const SpaceModel model =
          SpaceModel::hermitian_blocks({spec.size, spec.size2});
      const int k1 = spec.size;
      const int k2 = spec.size2;
      // Unitaries drawn per block; the second summand optionally transposes.
      Mat u1(k1, k1), u2(k2, k2);
      {
        const SpaceModel b1 = SpaceModel::hermitian(k1);
        const SpaceModel b2 = SpaceModel::hermitian(k2);
        u1 = draw_unitary(b1, rng);
        u2 = draw_unitary(b2, rng);
      }
      const bool second_transposes = spec.with_transpose;
      auto fn = [u1, u2, k1, k2, second_transposes](const Mat& x) {
        Mat out = Mat::Zero(k1 + k2, k1 + k2);
        out.topLeftCorner(k1, k1) =
            u1.adjoint() * x.topLeftCorner(k1, k1) * u1;
        Mat x2 = x.bottomRightCorner(k2, k2);
        if (second_transposes) x2 = x2.transpose().eval();
        out.bottomRightCorner(k2, k2) = u2.adjoint() * x2 * u2;
        return out;
      };
      StarLinearMap map = StarLinearMap::from_complex_function(model, model, fn);
      GroundTruth t = all_pass_truth();
      if (second_transposes && k2 >= 2) {
        t.multiplicative = Expect::fail;
        t.first_fail_level = 2;
      }
      return {std::move(map), t, spec};
    }

    case MapFamily::jordan_mixture: {
      const SpaceModel model = SpaceModel::hermitian(spec.size);
      const Mat u = draw_unitary(model, rng);
      const bool tr = spec.with_transpose;
      StarLinearMap map = StarLinearMap::from_complex_function(
          model, model, [u, tr](const Mat& x) {
            return Mat(u.adjoint() * (tr ? Mat(x.transpose()) : x) * u);
          });
      GroundTruth t = all_pass_truth();
      if (tr && spec.size >= 2) {
        t.multiplicative = Expect::fail;
        t.first_fail_level = 2;
      }
      return {std::move(map), t, spec};
    }

    case MapFamily::positive_nonpreserver: {
      const SpaceModel model = SpaceModel::hermitian(spec.size);
      // Redraw until the averaged action is invertible (generic already).
      for (int attempt = 0;; ++attempt) {
        const Mat u = draw_unitary(model, rng);
        StarLinearMap map = StarLinearMap::from_complex_function(
            model, model,
            [u](const Mat& x) { return Mat(0.5 * (x + u.adjoint() * x * u)); });
        if (is_bijective(map) || attempt > 16) {
          GroundTruth t;
          t.unital = Expect::pass;
          t.positive = Expect::expected_pass;
          t.isometry = Expect::fail;
          t.order_isometry = Expect::fail;
          t.abs_preserving = Expect::fail;
          t.jordan = Expect::fail;
          t.multiplicative = Expect::fail;
          t.bijective = true;
          t.first_fail_level = 1;
          t.unit_image_is_order_projection = true;
          return {std::move(map), t, spec};
        }
      }
    }

    case MapFamily::scaling: {
      const SpaceModel model = spec.on_lattice
                                   ? SpaceModel::lattice(spec.size)
                                   : SpaceModel::hermitian(spec.size);
      const double t = spec.t;
      const int dim = ambient_coord_dim(model);
      StarLinearMap map(model, model, RMat(t * RMat::Identity(dim, dim)));
      GroundTruth g;
      const bool is_id = std::abs(t - 1.0) < 1e-15;
      g.unital = is_id ? Expect::pass : Expect::fail;
      g.positive = t >= 0 ? Expect::expected_pass : Expect::fail;
      g.isometry = is_id ? Expect::pass : Expect::fail;
      g.order_isometry = is_id ? Expect::pass : Expect::fail;
      g.abs_preserving = t >= 0 ? Expect::pass : Expect::fail;
      g.jordan = is_id ? Expect::pass : Expect::fail;
      g.multiplicative =
          spec.on_lattice ? Expect::not_applicable
                          : (is_id ? Expect::pass : Expect::fail);
      g.bijective = std::abs(t) > 1e-15;
      g.first_fail_level = is_id ? 0 : 1;
      g.unit_image_is_order_projection = is_id;
      return {std::move(map), g, spec};
    }

    case MapFamily::corner_embedding: {
      const SpaceModel dom = SpaceModel::hermitian(spec.size);
      const SpaceModel cod = SpaceModel::hermitian(spec.size + spec.size2);
      const int k = spec.size;
      const int big = spec.size + spec.size2;
      StarLinearMap map = StarLinearMap::from_complex_function(
          dom, cod, [k, big](const Mat& x) {
            Mat out = Mat::Zero(big, big);
            out.topLeftCorner(k, k) = x;
            return out;
          });
      GroundTruth t;
      t.unital = Expect::fail;
      t.positive = Expect::expected_pass;
      t.isometry = Expect::pass;
      t.order_isometry = Expect::pass;
      t.abs_preserving = Expect::pass;
      t.jordan = Expect::pass;
      t.multiplicative = Expect::pass;
      t.bijective = false;
      t.first_fail_level = 0;
      t.unit_image_is_order_projection = true;
      return {std::move(map), t, spec};
    }
  }
  throw Error("unknown map family");
}

StarLinearMap make_block_compression(int k1, int k2) {
  const SpaceModel dom = SpaceModel::hermitian_blocks({k1, k2});
  const SpaceModel cod = SpaceModel::hermitian(k1);
  return StarLinearMap::from_complex_function(
      dom, cod,
      [k1](const Mat& x) { return Mat(x.topLeftCorner(k1, k1)); });
}

namespace {

bool matches(Expect e, bool classifier_pass) {
  switch (e) {
    case Expect::pass:
    case Expect::expected_pass: return classifier_pass;
    case Expect::fail: return !classifier_pass;
    default: return true;
  }
}

void check_one(std::vector<std::string>& out, const std::string& name,
               Expect expected, bool got) {
  if (!matches(expected, got)) {
    out.push_back(name + ": expected " +
                  (expected == Expect::fail ? "fail" : "pass") + ", classifier says " +
                  (got ? "pass" : "fail"));
  }
}

}  // namespace

std::vector<std::string> compare_with_truth(const GeneratedMap& gen,
                                            const ToleranceConfig& cfg) {
  std::vector<std::string> out;
  const auto& map = gen.map;
  const auto& t = gen.truth;

  check_one(out, "unital", t.unital, is_unital(map, cfg));
  check_one(out, "positive", t.positive, is_positive(map, cfg));
  check_one(out, "isometry", t.isometry, is_isometry(map, cfg));
  check_one(out, "order_isometry", t.order_isometry, is_order_isometry(map, cfg));
  check_one(out, "abs_preserving", t.abs_preserving, is_abs_preserving(map, cfg));
  check_one(out, "jordan", t.jordan, is_jordan_hom(map, cfg));
  if (map.domain().is_hermitian())
    check_one(out, "multiplicative", t.multiplicative,
              is_multiplicative(map, cfg));
  if (is_bijective(map, cfg) != t.bijective)
    out.push_back("bijective: rank decision disagrees with the construction");

  if (t.bijective && map.domain().is_hermitian()) {
    const ClassificationReport prof = complete_suite(map, 3, cfg);
    int first_fail = 0;
    const bool uni = prof.verdict_is("unital", Verdict::pass);
    for (int n = 1; n <= 3 && first_fail == 0; ++n) {
      const bool abs_ok =
          prof.verdict_is("abs_preserving@" + std::to_string(n), Verdict::pass);
      if (!abs_ok || !uni) first_fail = n;
    }
    if (first_fail != t.first_fail_level)
      out.push_back("first_fail_level: expected " +
                    std::to_string(t.first_fail_level) + ", observed " +
                    std::to_string(first_fail));
    if (!prof.equivalences_hold)
      out.push_back("complete-level profiles disagree between the two sides");
  }

  if (t.unit_image_is_order_projection) {
    const Element img = map.apply(unit_element(map.domain()));
    if (!is_order_projection(map.codomain(), img, cfg))
      out.push_back("phi(e) expected to be an order projection");
  }
  return out;
}

std::vector<MapFamilySpec> default_map_matrix(
    const std::vector<int>& hermitian_sizes,
    const std::vector<int>& lattice_dims, int seeds_per_family) {
  std::vector<MapFamilySpec> specs;
  for (int s = 0; s < seeds_per_family; ++s) {
    const std::uint64_t seed = static_cast<std::uint64_t>(s);
    for (int k : hermitian_sizes) {
      specs.push_back({MapFamily::unitary_conjugation, k, 0, 0.0, false, false, seed});
      specs.push_back({MapFamily::transpose, k, 0, 0.0, false, false, seed});
      specs.push_back(
          {MapFamily::jordan_mixture, k, 0, 0.0, s % 2 == 0, false, seed});
      specs.push_back(
          {MapFamily::positive_nonpreserver, k, 0, 0.0, false, false, seed});
      specs.push_back({MapFamily::scaling, k, 0, 2.0, false, false, seed});
      specs.push_back({MapFamily::scaling, k, 0, 0.5, false, false, seed});
      specs.push_back(
          {MapFamily::corner_embedding, k, 1 + s % 2, 0.0, false, false, seed});
      specs.push_back({MapFamily::direct_sum, k, k, 0.0, s % 2 == 1, false, seed});
    }
    for (int d : lattice_dims) {
      specs.push_back(
          {MapFamily::permutation_lattice, d, 0, 0.0, false, true, seed});
      specs.push_back({MapFamily::scaling, d, 0, 3.0, false, true, seed});
    }
  }
  return specs;
}

}  // namespace absorder
