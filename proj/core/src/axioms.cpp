#include "absorder/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "check_runner.hpp"

namespace absorder {

using detail::TrialOutcome;
using detail::run_sampled;

namespace {

double eq_tol(const ToleranceConfig& cfg, const Element& a, const Element& b) {
  return cfg.scaled(std::max({1.0, frobenius(a), frobenius(b)}));
}

Witness::Item item(const SpaceModel& model, const std::string& label,
                   const Element& e) {
  return {label, model.descriptor(), e};
}

}  // namespace

CheckReport check_absolutely_ordered_axioms(const SpaceModel& model,
                                            const ToleranceConfig& cfg,
                                            int level_n) {
  if (model.is_lattice() && level_n != 1)
    throw LatticeUnsupported("lattice model has no matricial levels");
  CheckReport report;
  report.title = "absolutely-ordered axioms on " + model.descriptor() +
                 (level_n > 1 ? " at level " + std::to_string(level_n) : "");
  const int n = cfg.samples;

  report.entries.push_back(run_sampled(
      "(a) |v| = v on cone elements", cfg, 0xa1, n,
      [&](std::int64_t t, RngStream& rng) {
        // Alternate full-rank and rank-one draws; rank deficiency is where
        // spectral clamping earns its keep.
        const Element v = (t % 3 == 2) ? draw_rank_one_psd(model, rng, level_n)
                                       : draw_psd(model, rng, level_n);
        const Element a = abs_element(model, v);
        TrialOutcome out;
        out.residual = frobenius(a - v);
        out.tol = eq_tol(cfg, a, v);
        out.items = {item(model, "v", v)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "(b) |v| +- v in cone", cfg, 0xb2, n,
      [&](std::int64_t, RngStream& rng) {
        const Element v = draw_self_adjoint(model, rng, level_n);
        const Element a = abs_element(model, v);
        TrialOutcome out;
        out.tol = 0.5;
        out.residual =
            (in_cone(model, a + v, cfg) && in_cone(model, a - v, cfg)) ? 0.0
                                                                       : 1.0;
        out.items = {item(model, "v", v)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "(c) |k v| = |k| |v|", cfg, 0xc3, n,
      [&](std::int64_t t, RngStream& rng) {
        const Element v = draw_self_adjoint(model, rng, level_n);
        const double k = (t == 0) ? -1.0 : rng.uniform(-3.0, 3.0);
        const Element lhs = abs_element(model, k * v);
        const Element rhs = std::abs(k) * abs_element(model, v);
        TrialOutcome out;
        out.residual = frobenius(lhs - rhs);
        out.tol = eq_tol(cfg, lhs, rhs);
        out.items = {item(model, "v", v)};
        out.note = "|k v| != |k| |v| with k = " + std::to_string(k);
        return out;
      }));

  report.entries.push_back(run_sampled(
      "(d) u perp v, 0 <= w <= v => u perp w", cfg, 0xd4, n,
      [&](std::int64_t, RngStream& rng) {
        auto [u, v] = draw_orthogonal_pair(model, rng, level_n);
        const Element w = draw_minorant(model, rng, v);
        TrialOutcome out;
        out.residual = perp_residual(model, u, w);
        out.tol = eq_tol(cfg, u, w);
        out.items = {item(model, "u", u), item(model, "v", v),
                     item(model, "w", w)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "(e) u perp v, u perp w => u perp |v +- w|", cfg, 0xe5, n,
      [&](std::int64_t, RngStream& rng) {
        const OrthogonalTriple t3 = draw_orthogonal_triple(model, rng, level_n);
        const Element plus = abs_element(model, t3.v + t3.w);
        const Element minus = abs_element(model, t3.v - t3.w);
        TrialOutcome out;
        out.residual = std::max(perp_residual(model, t3.u, plus),
                                perp_residual(model, t3.u, minus));
        out.tol = eq_tol(cfg, t3.u, plus);
        out.items = {item(model, "u", t3.u), item(model, "v", t3.v),
                     item(model, "w", t3.w)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "cone is proper and decomposition is orthogonal", cfg, 0xf6, n,
      [&](std::int64_t, RngStream& rng) {
        const Element v = draw_self_adjoint(model, rng, level_n);
        auto [vp, vm] = pos_neg_parts(model, v, cfg);
        TrialOutcome out;
        double r = frobenius((vp - vm) - v);
        r = std::max(r, frobenius((vp + vm) - abs_element(model, v)));
        r = std::max(r, perp_residual(model, vp, vm));
        if (!in_cone(model, vp, cfg) || !in_cone(model, vm, cfg)) r = 1e9;
        out.residual = r;
        out.tol = eq_tol(cfg, vp, vm);
        out.items = {item(model, "v", v)};
        return out;
      }));

  return report;
}

CheckReport check_absolute_order_unit(const SpaceModel& model,
                                      const ToleranceConfig& cfg, int level_n) {
  if (model.is_lattice() && level_n != 1)
    throw LatticeUnsupported("lattice model has no matricial levels");
  CheckReport report;
  report.title = "absolute-order-unit conditions on " + model.descriptor() +
                 (level_n > 1 ? " at level " + std::to_string(level_n) : "");
  const int n = cfg.samples;
  const Element e = unit_element(model, level_n);

  report.entries.push_back(run_sampled(
      "norm monotone on order intervals: u <= v <= w => ||v|| <= max(||u||, ||w||)",
      cfg, 0x11, n, [&](std::int64_t, RngStream& rng) {
        const Element v = draw_self_adjoint(model, rng, level_n);
        const Element u = v - draw_psd(model, rng, level_n);
        const Element w = v + draw_psd(model, rng, level_n);
        TrialOutcome out;
        const double nv = order_unit_norm(model, v, cfg);
        const double bound = std::max(order_unit_norm(model, u, cfg),
                                      order_unit_norm(model, w, cfg));
        out.residual = std::max(0.0, nv - bound);
        out.tol = cfg.scaled(std::max(1.0, bound));
        out.items = {item(model, "u", u), item(model, "v", v),
                     item(model, "w", w)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "perp <=> absolute infty-orthogonality on cone pairs", cfg, 0x22, n,
      [&](std::int64_t t, RngStream& rng) {
        Element u = zero_element(model, {level_n, level_n});
        Element v = u;
        if (t % 2 == 0) {
          std::tie(u, v) = draw_orthogonal_pair(model, rng, level_n);
        } else {
          u = draw_psd(model, rng, level_n);
          v = draw_psd(model, rng, level_n);
        }
        const bool lhs = perp(model, u, v, cfg);
        const bool rhs = perp_infty_abs(model, u, v, cfg);
        TrialOutcome out;
        out.residual = (lhs == rhs) ? 0.0 : 1.0;
        out.tol = 0.5;
        out.note = "perp and perp_infty^a disagree";
        out.items = {item(model, "u", u), item(model, "v", v)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "perp => perp_infty on cone pairs", cfg, 0x33, n / 2 + 1,
      [&](std::int64_t, RngStream& rng) {
        auto [u, v] = draw_orthogonal_pair(model, rng, level_n);
        const auto d = perp_infty_detail(model, u, v, cfg);
        TrialOutcome out;
        out.residual = (d.verdict && d.grid_consistent) ? 0.0 : 1.0;
        out.tol = 0.5;
        out.note = "orthogonal pair is not infty-orthogonal";
        out.items = {item(model, "u", u), item(model, "v", v)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "|| |v| || = ||v|| = max(||v^+||, ||v^-||)", cfg, 0x44, n,
      [&](std::int64_t, RngStream& rng) {
        const Element v = draw_self_adjoint(model, rng, level_n);
        auto [vp, vm] = pos_neg_parts(model, v, cfg);
        const double nv = order_unit_norm(model, v, cfg);
        const double na = order_unit_norm(model, abs_element(model, v), cfg);
        const double nparts = std::max(order_unit_norm(model, vp, cfg),
                                       order_unit_norm(model, vm, cfg));
        TrialOutcome out;
        out.residual = std::max(std::abs(na - nv), std::abs(nparts - nv));
        out.tol = cfg.scaled(std::max(1.0, nv));
        out.items = {item(model, "v", v)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "+-v <= e => |v| <= e", cfg, 0x55, n,
      [&](std::int64_t, RngStream& rng) {
        Element v = draw_self_adjoint(model, rng, level_n);
        const double nv = order_unit_norm(model, v, cfg);
        if (nv > 1.0) v = (1.0 / nv) * v;  // now +-v <= e
        const Element a = abs_element(model, v);
        TrialOutcome out;
        out.residual = in_cone(model, e - a, cfg) ? 0.0 : 1.0;
        out.tol = 0.5;
        out.note = "|v| <= e fails although +-v <= e";
        out.items = {item(model, "v", v)};
        return out;
      }));

  report.entries.push_back(run_sampled(
      "||v|| e +- v in cone and l(v) = ||v^-||", cfg, 0x66, n,
      [&](std::int64_t, RngStream& rng) {
        const Element v = draw_self_adjoint(model, rng, level_n);
        const double nv = order_unit_norm(model, v, cfg);
        auto [vp, vm] = pos_neg_parts(model, v, cfg);
        TrialOutcome out;
        const bool unit_bound = in_cone(model, nv * e - v, cfg) &&
                                in_cone(model, nv * e + v, cfg);
        const double l = lower_bound_functional(model, v, cfg);
        out.residual = std::abs(l - order_unit_norm(model, vm, cfg)) +
                       (unit_bound ? 0.0 : 1.0);
        out.tol = cfg.scaled(std::max(1.0, nv));
        out.items = {item(model, "v", v)};
        return out;
      }));

  return report;
}

}  // namespace absorder
