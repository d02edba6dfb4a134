#pragma once

#include "absorder/maps.hpp"
#include "absorder/report.hpp"
#include "absorder/space.hpp"

namespace absorder {

// --- level arithmetic (hermitian base only) -------------------------------------

// |v|_{m,n} = (v* v)^{1/2}, a level-(n, n) cone element.
Element abs_mn(const SpaceModel& model, const Element& v);

// v (+) w, the block-diagonal element of level (m + r, n + s).
Element direct_sum(const SpaceModel& model, const Element& v, const Element& w);

// v* at level (n, m).
Element level_adjoint(const SpaceModel& model, const Element& v);

// [[0, v], [v*, 0]], the self-adjoint off-diagonal element of level
// (m + n, m + n).
Element direct_sum_offdiag(const SpaceModel& model, const Element& v);

// alpha v beta for scalar matrices alpha in M_{r,m}, beta in M_{n,s}, acting
// by block multiplication (alpha (x) I_k) v (beta (x) I_k).
Element scalar_compress(const SpaceModel& model, const Mat& alpha,
                        const Element& v, const Mat& beta);

// Pads with r zero block rows / s zero block columns.
Element pad_zero_rows(const SpaceModel& model, const Element& v, int r);
Element pad_zero_cols(const SpaceModel& model, const Element& v, int s);

// Operator norm (largest singular value) of a scalar matrix.
double scalar_norm(const Mat& alpha);

// Random isometric alpha in M_{r,m} (r >= m), alpha* alpha = I_m, from the QR
// factorization of a complex Gaussian with sign-fixed diagonal.
Mat draw_isometric_scalar(RngStream& rng, int r, int m);

// --- amplification ----------------------------------------------------------------

// phi_n: entrywise application of phi to the n x n block structure.
class AmplifiedMap {
 public:
  AmplifiedMap(const StarLinearMap& base, int level_n)
      : base_(&base), level_(level_n) {}

  int level() const { return level_; }
  const StarLinearMap& base() const { return *base_; }

  // Applies phi_n; the element must live at level (level, level).
  Element apply(const Element& v) const;

 private:
  const StarLinearMap* base_;
  int level_;
};

AmplifiedMap amplify(const StarLinearMap& map, int level_n);

// --- matricial suites ---------------------------------------------------------------

// The absolutely-matrix-ordered conditions:
//   1. every level (M_n(V)_sa, M_n(V)^+, |.|_n) is absolutely ordered,
//   2. |alpha v beta| <= ||alpha|| | |v| beta | (cone membership of the gap),
//   3. |v (+) w| = |v| (+) |w|.
// Shapes are sampled up to max_shape.
CheckReport matrix_axiom_suite(const SpaceModel& model,
                               const ToleranceConfig& cfg = {},
                               int max_shape = 3);

// Derived absolute-value identities:
//   (1) |alpha v| = |v| for isometric alpha,
//   (2) |[[0, v], [v*, 0]]| = |v*| (+) |v|,
//   (3) [[|v*|, v], [v*, |v|]] is positive,
//   (4) zero block rows do not change |v|,
//   (5) |[v 0]| = |v| (+) 0.
CheckReport matrix_abs_identities_suite(const SpaceModel& model,
                                        const ToleranceConfig& cfg = {},
                                        int max_shape = 3);

// Per-level profiles of order-isometry and |.|-preservation for phi_n,
// n = 1..level_cap; the two profiles must share the first failing level.
ClassificationReport complete_suite(const StarLinearMap& map, int level_cap = 3,
                                    const ToleranceConfig& cfg = {});

// Three-way equivalence on bijective maps between hermitian models:
//   (complete order isometry up to level 3)
//   <=> (unital and completely |.|-preserving up to level 3)
//   <=> (multiplicative, checked exactly on matrix-unit pairs),
// plus the constructive 3x3 block check: for sampled x, y the residual
// ||phi_3(a^2) - phi_3(a)^2|| with a = [[0,x,0],[x*,0,y],[0,y*,0]] vanishes
// exactly when ||phi(x y) - phi(x) phi(y)|| does.
ClassificationReport multiplicativity_equivalence_suite(
    const StarLinearMap& map, const ToleranceConfig& cfg = {});

// Exact multiplicativity on matrix-unit pairs.
PropertyResult is_multiplicative_detail(const StarLinearMap& map,
                                        const ToleranceConfig& cfg = {});
bool is_multiplicative(const StarLinearMap& map,
                       const ToleranceConfig& cfg = {});

// Isometry restricted to levels 1..3. For unital surjective maps a pass must
// imply multiplicativity; the suite records the implication.
ClassificationReport three_isometry_suite(const StarLinearMap& map,
                                          const ToleranceConfig& cfg = {});
bool three_isometry_check(const StarLinearMap& map,
                          const ToleranceConfig& cfg = {});

}  // namespace absorder
