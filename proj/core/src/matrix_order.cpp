#include "absorder/matrix_order.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "absorder/axioms.hpp"
#include "check_runner.hpp"

namespace absorder {

using detail::TrialOutcome;
using detail::run_sampled;

namespace {

void require_hermitian_base(const SpaceModel& model) {
  if (!model.is_hermitian())
    throw LatticeUnsupported("matricial levels are defined over hermitian models");
}

Witness::Item item(const SpaceModel& model, const std::string& label,
                   const Element& e) {
  return {label, model.descriptor(), e};
}

Mat kron_with_identity(const Mat& alpha, int k) {
  Mat out = Mat::Zero(alpha.rows() * k, alpha.cols() * k);
  for (Eigen::Index i = 0; i < alpha.rows(); ++i)
    for (Eigen::Index j = 0; j < alpha.cols(); ++j)
      out.block(i * k, j * k, k, k) = alpha(i, j) * Mat::Identity(k, k);
  return out;
}

double min_eigenvalue(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()),
                                        Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace

// --- level arithmetic ----------------------------------------------------------

Element abs_mn(const SpaceModel& model, const Element& v) {
  require_hermitian_base(model);
  validate_shape(model, v);
  return abs_element(model, v);
}

Element direct_sum(const SpaceModel& model, const Element& v, const Element& w) {
  require_hermitian_base(model);
  validate_shape(model, v);
  validate_shape(model, w);
  const int k = model.ambient_size();
  const Level lvl{v.level.m + w.level.m, v.level.n + w.level.n};
  Mat out = Mat::Zero(static_cast<Eigen::Index>(lvl.m) * k,
                      static_cast<Eigen::Index>(lvl.n) * k);
  out.topLeftCorner(v.coords.rows(), v.coords.cols()) = v.coords;
  out.bottomRightCorner(w.coords.rows(), w.coords.cols()) = w.coords;
  return {std::move(out), lvl};
}

Element level_adjoint(const SpaceModel& model, const Element& v) {
  require_hermitian_base(model);
  validate_shape(model, v);
  return {Mat(v.coords.adjoint()), {v.level.n, v.level.m}};
}

Element direct_sum_offdiag(const SpaceModel& model, const Element& v) {
  require_hermitian_base(model);
  validate_shape(model, v);
  const int k = model.ambient_size();
  const int m = v.level.m;
  const int n = v.level.n;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(m + n) * k,
                      static_cast<Eigen::Index>(m + n) * k);
  out.block(0, m * k, m * k, n * k) = v.coords;
  out.block(m * k, 0, n * k, m * k) = v.coords.adjoint();
  return {std::move(out), {m + n, m + n}};
}

Element scalar_compress(const SpaceModel& model, const Mat& alpha,
                        const Element& v, const Mat& beta) {
  require_hermitian_base(model);
  validate_shape(model, v);
  if (alpha.cols() != v.level.m || beta.rows() != v.level.n)
    throw ShapeError("scalar matrices do not match the element level");
  const int k = model.ambient_size();
  Mat out = kron_with_identity(alpha, k) * v.coords * kron_with_identity(beta, k);
  return {std::move(out),
          {static_cast<int>(alpha.rows()), static_cast<int>(beta.cols())}};
}

Element pad_zero_rows(const SpaceModel& model, const Element& v, int r) {
  require_hermitian_base(model);
  const int k = model.ambient_size();
  Mat out = Mat::Zero(v.coords.rows() + static_cast<Eigen::Index>(r) * k,
                      v.coords.cols());
  out.topRows(v.coords.rows()) = v.coords;
  return {std::move(out), {v.level.m + r, v.level.n}};
}

Element pad_zero_cols(const SpaceModel& model, const Element& v, int s) {
  require_hermitian_base(model);
  const int k = model.ambient_size();
  Mat out = Mat::Zero(v.coords.rows(),
                      v.coords.cols() + static_cast<Eigen::Index>(s) * k);
  out.leftCols(v.coords.cols()) = v.coords;
  return {std::move(out), {v.level.m, v.level.n + s}};
}

double scalar_norm(const Mat& alpha) {
  return alpha.jacobiSvd().singularValues()(0);
}

Mat draw_isometric_scalar(RngStream& rng, int r, int m) {
  if (r < m) throw ShapeError("isometric scalar needs r >= m");
  Mat g(r, m);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = rng.cgaussian();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(r, m);
  const Mat rr = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  for (int i = 0; i < m; ++i) {
    const Cplx d = rr(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0) ? d / a : Cplx(1, 0);
  }
  return q;
}

// --- amplification ---------------------------------------------------------------

Element AmplifiedMap::apply(const Element& v) const {
  if (v.level.m != level_ || v.level.n != level_)
    throw ShapeError("amplified map expects level (" + std::to_string(level_) +
                     ", " + std::to_string(level_) + ")");
  return base_->apply(v);
}

AmplifiedMap amplify(const StarLinearMap& map, int level_n) {
  require_hermitian_base(map.domain());
  if (level_n <= 0) throw ShapeError("amplification level must be positive");
  return AmplifiedMap(map, level_n);
}

// --- matricial suites --------------------------------------------------------------

CheckReport matrix_axiom_suite(const SpaceModel& model,
                               const ToleranceConfig& cfg, int max_shape) {
  require_hermitian_base(model);
  CheckReport rep;
  rep.title = "absolutely-matrix-ordered conditions over " + model.descriptor();

  // Condition 1: each level is an absolutely ordered space.
  for (int n = 1; n <= max_shape; ++n) {
    const auto level_cfg = cfg.with_samples(std::max(20, cfg.samples / (n * n)));
    const CheckReport sub = check_absolutely_ordered_axioms(model, level_cfg, n);
    CheckEntry entry;
    entry.name = "condition 1: level " + std::to_string(n) + " axioms";
    entry.method = CheckMethod::sampled;
    for (const auto& e : sub.entries) {
      entry.trials += e.trials;
      entry.failures += e.failures;
      entry.max_residual = std::max(entry.max_residual, e.max_residual);
      if (!entry.witness && e.witness) entry.witness = e.witness;
    }
    rep.entries.push_back(std::move(entry));
  }

  rep.entries.push_back(run_sampled(
      "condition 2: |alpha v beta| <= ||alpha|| | |v| beta |", cfg, 0x81,
      cfg.samples, [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const int r = rng.uniform_int(1, max_shape);
        const int s = rng.uniform_int(1, max_shape);
        Mat alpha(r, m), beta(n, s);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < m; ++j) alpha(i, j) = rng.cgaussian();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < s; ++j) beta(i, j) = rng.cgaussian();
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        const Element lhs = abs_mn(model, scalar_compress(model, alpha, v, beta));
        const Element rhs = scalar_norm(alpha) *
                            abs_mn(model, scalar_compress(
                                              model, Mat::Identity(n, n),
                                              abs_mn(model, v), beta));
        TrialOutcome out;
        const double scale = std::max(
            1.0, scalar_norm(alpha) * frobenius(v) * scalar_norm(beta));
        out.residual = std::max(0.0, -min_eigenvalue(rhs.coords - lhs.coords));
        out.tol = cfg.scaled(scale);
        out.note = "compression inequality violated";
        out.items = {item(model, "v", v)};
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "condition 3: |v (+) w| = |v| (+) |w|", cfg, 0x82, cfg.samples,
      [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const int r = rng.uniform_int(1, max_shape);
        const int s = rng.uniform_int(1, max_shape);
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        const Element w{draw_ginibre(model, rng, {r, s}), {r, s}};
        const Element lhs = abs_mn(model, direct_sum(model, v, w));
        const Element rhs =
            direct_sum(model, abs_mn(model, v), abs_mn(model, w));
        TrialOutcome out;
        out.residual = frobenius(lhs - rhs);
        out.tol = cfg.scaled(std::max({1.0, frobenius(v), frobenius(w)}));
        out.items = {item(model, "v", v), item(model, "w", w)};
        return out;
      }));

  return rep;
}

CheckReport matrix_abs_identities_suite(const SpaceModel& model,
                                        const ToleranceConfig& cfg,
                                        int max_shape) {
  require_hermitian_base(model);
  CheckReport rep;
  rep.title = "matricial absolute-value identities over " + model.descriptor();

  rep.entries.push_back(run_sampled(
      "(1) |alpha v| = |v| for isometric alpha", cfg, 0x91, cfg.samples,
      [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const int r = rng.uniform_int(m, max_shape + 1);
        const Mat alpha = draw_isometric_scalar(rng, r, m);
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        const Element lhs = abs_mn(
            model, scalar_compress(model, alpha, v, Mat::Identity(n, n)));
        const Element rhs = abs_mn(model, v);
        TrialOutcome out;
        out.residual = frobenius(lhs - rhs);
        out.tol = cfg.scaled(std::max(1.0, frobenius(v)));
        out.items = {item(model, "v", v)};
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(2) |[[0, v], [v*, 0]]| = |v*| (+) |v|", cfg, 0x92, cfg.samples,
      [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        const Element vs = level_adjoint(model, v);
        const Element off = direct_sum_offdiag(model, v);
        const Element lhs = abs_mn(model, off);
        const Element rhs =
            direct_sum(model, abs_mn(model, vs), abs_mn(model, v));
        TrialOutcome out;
        out.residual = frobenius(lhs - rhs);
        out.tol = cfg.scaled(std::max(1.0, frobenius(v)));
        out.items = {item(model, "v", v)};
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(3) [[|v*|, v], [v*, |v|]] is positive", cfg, 0x93, cfg.samples,
      [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        const int k = model.ambient_size();
        const Element va = abs_mn(model, v);
        const Element vsa = abs_mn(model, level_adjoint(model, v));
        Mat block = Mat::Zero((m + n) * k, (m + n) * k);
        block.topLeftCorner(m * k, m * k) = vsa.coords;
        block.topRightCorner(m * k, n * k) = v.coords;
        block.bottomLeftCorner(n * k, m * k) = v.coords.adjoint();
        block.bottomRightCorner(n * k, n * k) = va.coords;
        TrialOutcome out;
        out.residual = std::max(0.0, -min_eigenvalue(block));
        out.tol = cfg.scaled(std::max(1.0, frobenius(v)));
        out.note = "block matrix not positive";
        out.items = {item(model, "v", v)};
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(4) zero block rows leave |v| unchanged", cfg, 0x94, cfg.samples,
      [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const int r = rng.uniform_int(1, max_shape);
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        TrialOutcome out;
        out.residual =
            frobenius(abs_mn(model, pad_zero_rows(model, v, r)) - abs_mn(model, v));
        out.tol = cfg.scaled(std::max(1.0, frobenius(v)));
        out.items = {item(model, "v", v)};
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(5) |[v 0]| = |v| (+) 0", cfg, 0x95, cfg.samples,
      [&](std::int64_t, RngStream& rng) {
        const int m = rng.uniform_int(1, max_shape);
        const int n = rng.uniform_int(1, max_shape);
        const int s = rng.uniform_int(1, max_shape);
        const Element v{draw_ginibre(model, rng, {m, n}), {m, n}};
        const Element rhs =
            direct_sum(model, abs_mn(model, v), zero_element(model, {s, s}));
        TrialOutcome out;
        out.residual =
            frobenius(abs_mn(model, pad_zero_cols(model, v, s)) - rhs);
        out.tol = cfg.scaled(std::max(1.0, frobenius(v)));
        out.items = {item(model, "v", v)};
        return out;
      }));

  return rep;
}

ClassificationReport complete_suite(const StarLinearMap& map, int level_cap,
                                    const ToleranceConfig& cfg) {
  require_hermitian_base(map.domain());
  if (!is_bijective(map, cfg))
    throw Singular("complete-level profiles require a bijective map");
  ClassificationReport rep;
  rep.title = "complete order isometry <=> unital complete |.|-preserving: " +
              map.domain().descriptor() + " -> " + map.codomain().descriptor();
  rep.sample_count = cfg.samples;

  // Side A is the order-isometry profile; side B conjoins unitality with the
  // |.|-preservation profile (a surjective order isometry is automatically
  // unital, so no adjustment is needed on side A).
  const PropertyResult uni = is_unital_detail(map, cfg);
  rep.set("unital", uni);

  int first_fail_ord = 0;
  int first_fail_preserver_side = 0;
  for (int n = 1; n <= level_cap; ++n) {
    rep.levels_tested.push_back(n);
    const PropertyResult ord = is_order_isometry_detail(map, cfg, n);
    const PropertyResult abs = is_abs_preserving_detail(map, cfg, n);
    rep.set("order_isometry@" + std::to_string(n), ord);
    rep.set("abs_preserving@" + std::to_string(n), abs);
    if (ord.fail() && first_fail_ord == 0) first_fail_ord = n;
    if ((abs.fail() || !uni.pass()) && first_fail_preserver_side == 0)
      first_fail_preserver_side = n;
  }
  rep.equivalences_hold = (first_fail_ord == first_fail_preserver_side);
  rep.notes.push_back(
      "first failing level: order-isometry side " +
      (first_fail_ord ? std::to_string(first_fail_ord) : std::string("none")) +
      ", unital |.|-preserving side " +
      (first_fail_preserver_side ? std::to_string(first_fail_preserver_side)
                                 : std::string("none")));
  return rep;
}

PropertyResult is_multiplicative_detail(const StarLinearMap& map,
                                        const ToleranceConfig& cfg) {
  require_hermitian_base(map.domain());
  const auto& dom = map.domain();
  PropertyResult r;
  r.method = CheckMethod::exact;
  r.verdict = Verdict::pass;

  // Matrix units inside each block of the domain.
  std::vector<Mat> units;
  const int k = dom.ambient_size();
  int offset = 0;
  for (int b : dom.blocks()) {
    for (int a = 0; a < b; ++a)
      for (int c = 0; c < b; ++c) {
        Mat u = Mat::Zero(k, k);
        u(offset + a, offset + c) = Cplx(1, 0);
        units.push_back(std::move(u));
      }
    offset += b;
  }

  for (std::size_t i = 0; i < units.size() && !r.fail(); ++i) {
    for (std::size_t j = 0; j < units.size(); ++j) {
      ++r.samples;
      const double res = (map.apply_block(units[i] * units[j]) -
                          map.apply_block(units[i]) * map.apply_block(units[j]))
                             .norm();
      r.max_residual = std::max(r.max_residual, res);
      if (!(res <= cfg.scaled(1.0))) {
        r.verdict = Verdict::fail;
        Witness w;
        w.description = "phi(x y) != phi(x) phi(y) on a matrix-unit pair";
        w.residual = res;
        w.items = {item(dom, "x", {units[i], {1, 1}}),
                   item(dom, "y", {units[j], {1, 1}})};
        r.witness = std::move(w);
        break;
      }
    }
  }
  return r;
}

bool is_multiplicative(const StarLinearMap& map, const ToleranceConfig& cfg) {
  return is_multiplicative_detail(map, cfg).pass();
}

namespace {

// a = [[0, x, 0], [x*, 0, y], [0, y*, 0]] as a level-3 element.
Element three_block_element(const SpaceModel& model, const Mat& x, const Mat& y) {
  const int k = model.ambient_size();
  Mat a = Mat::Zero(3 * k, 3 * k);
  a.block(0, k, k, k) = x;
  a.block(k, 0, k, k) = x.adjoint();
  a.block(k, 2 * k, k, k) = y;
  a.block(2 * k, k, k, k) = y.adjoint();
  return {std::move(a), {3, 3}};
}

}  // namespace

ClassificationReport multiplicativity_equivalence_suite(
    const StarLinearMap& map, const ToleranceConfig& cfg) {
  require_hermitian_base(map.domain());
  if (!is_bijective(map, cfg))
    throw Singular("multiplicativity equivalence requires a bijective map");

  ClassificationReport rep = complete_suite(map, 3, cfg);
  rep.title = "complete order isometry <=> unital complete |.|-preserving <=> "
              "multiplicative: " +
              map.domain().descriptor() + " -> " + map.codomain().descriptor();

  const PropertyResult uni = is_unital_detail(map, cfg);
  const PropertyResult mult = is_multiplicative_detail(map, cfg);
  rep.set("unital", uni);
  rep.set("multiplicative", mult);

  bool complete_ord = true;
  bool complete_abs = true;
  for (int n = 1; n <= 3; ++n) {
    complete_ord =
        complete_ord && rep.verdict_is("order_isometry@" + std::to_string(n),
                                       Verdict::pass);
    complete_abs =
        complete_abs && rep.verdict_is("abs_preserving@" + std::to_string(n),
                                       Verdict::pass);
  }
  const bool side_a = complete_ord;
  const bool side_b = uni.pass() && complete_abs;
  const bool side_c = mult.pass();
  rep.equivalences_hold = (side_a == side_b) && (side_b == side_c);
  if (!rep.equivalences_hold)
    rep.notes.push_back("three-way multiplicativity equivalence violated");

  // Constructive block check: the (1,3) corner of phi_3(a)^2 - phi_3(a^2)
  // carries exactly phi(x y) - phi(x) phi(y).
  const auto& dom = map.domain();
  const CheckEntry trick = run_sampled(
      "3x3 block residual vanishes iff phi(x y) = phi(x) phi(y)", cfg, 0xa3,
      cfg.samples / 2 + 1, [&](std::int64_t, RngStream& rng) {
        const Mat x = draw_ginibre(dom, rng, {1, 1});
        const Mat y = draw_ginibre(dom, rng, {1, 1});
        const Element a = three_block_element(dom, x, y);
        const Element a2{Mat(a.coords * a.coords), {3, 3}};
        const Mat img = map.apply(a).coords;
        const double trick_res = (map.apply(a2).coords - img * img).norm();
        const double mult_res =
            (map.apply_block(x * y) - map.apply_block(x) * map.apply_block(y))
                .norm();
        TrialOutcome out;
        const double tol = cfg.scaled(std::max(1.0, frobenius(a)));
        out.residual = ((trick_res <= tol) == (mult_res <= tol)) ? 0.0 : 1.0;
        out.tol = 0.5;
        out.note = "block residual and multiplicativity residual disagree "
                   "(trick " +
                   std::to_string(trick_res) + ", direct " +
                   std::to_string(mult_res) + ")";
        out.items = {item(dom, "x", {x, {1, 1}}), item(dom, "y", {y, {1, 1}})};
        return out;
      });
  PropertyResult trick_result;
  trick_result.verdict = trick.passed() ? Verdict::pass : Verdict::fail;
  trick_result.method = CheckMethod::sampled;
  trick_result.samples = trick.trials;
  trick_result.max_residual = trick.max_residual;
  trick_result.witness = trick.witness;
  rep.set("block_trick_consistency", trick_result);
  if (!trick.passed()) rep.equivalences_hold = false;
  return rep;
}

ClassificationReport three_isometry_suite(const StarLinearMap& map,
                                          const ToleranceConfig& cfg) {
  require_hermitian_base(map.domain());
  if (!is_unital(map, cfg))
    throw NotUnital("the 3-isometry criterion applies to unital maps");
  if (!is_surjective(map, cfg))
    throw NotSurjective("the 3-isometry criterion applies to surjective maps");

  ClassificationReport rep;
  rep.title = "3-isometry criterion: " + map.domain().descriptor() + " -> " +
              map.codomain().descriptor();
  rep.sample_count = cfg.samples;
  bool all = true;
  for (int n = 1; n <= 3; ++n) {
    rep.levels_tested.push_back(n);
    const PropertyResult iso = is_isometry_detail(map, cfg, n);
    rep.set("isometry@" + std::to_string(n), iso);
    all = all && iso.pass();
  }
  const PropertyResult mult = is_multiplicative_detail(map, cfg);
  rep.set("multiplicative", mult);
  PropertyResult overall;
  overall.method = CheckMethod::sampled;
  overall.samples = cfg.samples;
  overall.verdict = all ? Verdict::pass : Verdict::fail;
  rep.set("three_isometry", overall);
  // A 3-isometry here must already be multiplicative.
  rep.equivalences_hold = !all || mult.pass();
  if (!rep.equivalences_hold)
    rep.notes.push_back("3-isometry did not imply multiplicativity");
  return rep;
}

bool three_isometry_check(const StarLinearMap& map, const ToleranceConfig& cfg) {
  const ClassificationReport rep = three_isometry_suite(map, cfg);
  return rep.verdict_is("three_isometry", Verdict::pass);
}

}  // namespace absorder
