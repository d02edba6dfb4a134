#include "absorder/quotient.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "check_runner.hpp"

namespace absorder {

using detail::TrialOutcome;
using detail::run_sampled;

QuotientSpace::QuotientSpace(StarLinearMap map, const ToleranceConfig& cfg)
    : map_(std::move(map)) {
  const auto& dom = map_.domain();
  const RMat m = map_.sa_action();
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullV);
  const double thresh =
      std::max(cfg.eps_abs, (svd.singularValues().size() > 0
                                 ? svd.singularValues()(0)
                                 : 0.0) *
                                1e-12);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thresh) ++rank;
  // Right singular vectors split the self-adjoint part into the kernel and
  // its trace-orthogonal complement.
  for (int j = 0; j < dom.sa_dim(); ++j) {
    Element e = from_sa_coords(dom, svd.matrixV().col(j));
    if (j < rank)
      complement_.push_back(std::move(e));
    else
      kernel_.push_back(std::move(e));
  }
}

Element QuotientSpace::lift(const RVec& x) const {
  if (x.size() != dim()) throw ShapeError("quotient coordinate length mismatch");
  Element out = zero_element(ambient());
  for (int i = 0; i < dim(); ++i)
    out = out + x(i) * complement_[static_cast<std::size_t>(i)];
  return out;
}

RVec QuotientSpace::project(const Element& v) const {
  validate_shape(ambient(), v);
  RVec out(dim());
  const RVec vc = sa_coords(ambient(), v);
  for (int i = 0; i < dim(); ++i)
    out(i) = vc.dot(sa_coords(ambient(), complement_[static_cast<std::size_t>(i)]));
  return out;
}

RVec QuotientSpace::abs(const RVec& x) const {
  return project(abs_element(ambient(), lift(x)));
}

bool QuotientSpace::in_cone(const RVec& x, const ToleranceConfig& cfg) const {
  return absorder::in_cone(map_.codomain(), map_.apply(lift(x)), cfg);
}

RVec QuotientSpace::unit() const { return project(unit_element(ambient())); }

Element QuotientSpace::induced_map(const RVec& x) const {
  return map_.apply(lift(x));
}

QuotientSpace quotient_model(const StarLinearMap& map,
                             const ToleranceConfig& cfg) {
  if (!is_abs_preserving(map, cfg))
    throw NotAbsPreserving("quotient structure requires an |.|-preserving map");
  return QuotientSpace(map, cfg);
}

CheckReport quotient_axiom_suite(const QuotientSpace& q,
                                 const ToleranceConfig& cfg) {
  const SpaceModel& V = q.ambient();
  const SpaceModel& W = q.map().codomain();
  CheckReport rep;
  rep.title = "absolutely-ordered axioms on V/ker over " + V.descriptor();
  const int n = cfg.samples;

  auto draw_coords = [&](RngStream& rng) {
    RVec x(q.dim());
    for (int i = 0; i < q.dim(); ++i) x(i) = rng.gaussian();
    return x;
  };

  rep.entries.push_back(run_sampled(
      "(a) |x| = x on cone classes", cfg, 0x71, n,
      [&](std::int64_t, RngStream& rng) {
        const RVec x = q.project(draw_psd(V, rng));
        TrialOutcome out;
        out.residual = (q.abs(x) - x).norm();
        out.tol = cfg.scaled(std::max(1.0, x.norm()));
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(b) |x| +- x in the quotient cone", cfg, 0x72, n,
      [&](std::int64_t, RngStream& rng) {
        const RVec x = draw_coords(rng);
        const RVec a = q.abs(x);
        TrialOutcome out;
        out.residual =
            (q.in_cone(a + x, cfg) && q.in_cone(a - x, cfg)) ? 0.0 : 1.0;
        out.tol = 0.5;
        out.note = "|x| +- x left the quotient cone";
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(c) |k x| = |k| |x|", cfg, 0x73, n,
      [&](std::int64_t, RngStream& rng) {
        const RVec x = draw_coords(rng);
        const double k = rng.uniform(-3.0, 3.0);
        TrialOutcome out;
        out.residual = (q.abs(k * x) - std::abs(k) * q.abs(x)).norm();
        out.tol = cfg.scaled(std::max(1.0, x.norm()));
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(d) orthogonality descends to minorants", cfg, 0x74, n,
      [&](std::int64_t, RngStream& rng) {
        auto [u, v] = draw_orthogonal_pair(V, rng);
        const Element w = draw_minorant(V, rng, v);
        const RVec qu = q.project(u);
        const RVec qw = q.project(w);
        TrialOutcome out;
        out.residual = (q.abs(qu - qw) - (qu + qw)).norm();
        out.tol = cfg.scaled(std::max(1.0, qu.norm() + qw.norm()));
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "(e) u perp v, u perp w => u perp |v +- w| in the quotient", cfg, 0x75, n,
      [&](std::int64_t, RngStream& rng) {
        const OrthogonalTriple t3 = draw_orthogonal_triple(V, rng);
        const RVec qu = q.project(t3.u);
        TrialOutcome out;
        double r = 0.0;
        for (const double sign : {1.0, -1.0}) {
          const RVec qvw = q.abs(q.project(t3.v) + sign * q.project(t3.w));
          r = std::max(r, (q.abs(qu - qvw) - (qu + qvw)).norm());
        }
        out.residual = r;
        out.tol = cfg.scaled(std::max(1.0, qu.norm()));
        return out;
      }));

  rep.entries.push_back(run_sampled(
      "induced |.| independent of the representative", cfg, 0x76, n,
      [&](std::int64_t, RngStream& rng) {
        const RVec x = draw_coords(rng);
        Element rep_shift = q.lift(x);
        const auto& ker = q.kernel_basis();
        if (ker.empty()) return TrialOutcome::skip();
        for (const auto& kb : ker) rep_shift = rep_shift + rng.gaussian() * kb;
        TrialOutcome out;
        out.residual =
            (q.project(abs_element(V, rep_shift)) - q.abs(x)).norm();
        out.tol = cfg.scaled(std::max(1.0, x.norm()));
        return out;
      }));

  {
    // Bijectivity of the induced map onto phi(V): full rank on classes.
    CheckEntry entry;
    entry.name = "induced map V/ker -> phi(V) is bijective";
    entry.method = CheckMethod::exact;
    entry.trials = 1;
    RMat m(W.sa_dim(), q.dim());
    for (int i = 0; i < q.dim(); ++i) {
      RVec e = RVec::Zero(q.dim());
      e(i) = 1.0;
      m.col(i) = sa_coords(W, q.induced_map(e));
    }
    Eigen::JacobiSVD<RMat> svd(m);
    int rank = 0;
    const double thresh = std::max(
        cfg.eps_abs,
        (svd.singularValues().size() ? svd.singularValues()(0) : 0.0) * 1e-12);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > thresh) ++rank;
    entry.max_residual = std::abs(rank - q.dim());
    if (rank != q.dim()) {
      entry.failures = 1;
      Witness w;
      w.description = "induced map drops rank on the quotient";
      w.residual = entry.max_residual;
      entry.witness = std::move(w);
    }
    rep.entries.push_back(std::move(entry));
  }

  rep.entries.push_back(run_sampled(
      "induced map is |.|-preserving", cfg, 0x77, n,
      [&](std::int64_t, RngStream& rng) {
        const RVec x = draw_coords(rng);
        TrialOutcome out;
        out.residual = frobenius(q.induced_map(q.abs(x)) -
                                 abs_element(W, q.induced_map(x)));
        out.tol = cfg.scaled(std::max(1.0, x.norm()));
        return out;
      }));

  return rep;
}

}  // namespace absorder
