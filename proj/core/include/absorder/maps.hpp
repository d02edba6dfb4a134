#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absorder/report.hpp"
#include "absorder/space.hpp"
#include "absorder/tolerance.hpp"

namespace absorder {

// A star-linear map between space models, stored as a dense real matrix
// acting on the real coordinatization of the ambient space (see
// ambient_coords). Star-linearity phi(x*) = phi(x)* is an exact linear
// constraint on the action matrix and is validated on construction unless
// explicitly skipped (the fault-injection path).
class StarLinearMap {
 public:
  StarLinearMap(SpaceModel domain, SpaceModel codomain, RMat action,
                bool validate = true);

  static StarLinearMap identity(const SpaceModel& model);

  // Builds the action from a complex block function M_k -> M_k'.
  static StarLinearMap from_complex_function(
      const SpaceModel& domain, const SpaceModel& codomain,
      const std::function<Mat(const Mat&)>& fn, bool validate = true);

  // Builds the complex-linear star-linear map whose restriction to the
  // self-adjoint part has matrix `sa` over the hermitian/standard bases.
  static StarLinearMap from_sa_action(const SpaceModel& domain,
                                      const SpaceModel& codomain,
                                      const RMat& sa);

  const SpaceModel& domain() const { return domain_; }
  const SpaceModel& codomain() const { return codomain_; }
  const RMat& action() const { return action_; }

  // Action restricted to the self-adjoint parts (hermitian/standard bases).
  const RMat& sa_action() const { return sa_action_; }

  // Exact check of the star-linearity constraint on the action matrix.
  bool star_linearity_ok(double tol = 1e-9) const;

  // Applies the map to a level-(1,1) payload block.
  Mat apply_block(const Mat& x) const;

  // Applies the amplification phi_{m,n} blockwise to an element of any level.
  Element apply(const Element& v) const;

  StarLinearMap with_clamping(bool on) const;

 private:
  SpaceModel domain_;
  SpaceModel codomain_;
  RMat action_;
  RMat sa_action_;
};

// Surjectivity/bijectivity of the map between the self-adjoint parts,
// decided by the singular values of the sa action matrix.
bool is_surjective(const StarLinearMap& map, const ToleranceConfig& cfg = {});
bool is_injective(const StarLinearMap& map, const ToleranceConfig& cfg = {});
bool is_bijective(const StarLinearMap& map, const ToleranceConfig& cfg = {});

// --- property classifiers -----------------------------------------------------
// A sampled "pass" is probabilistic; a "fail" carries a concrete witness.

PropertyResult is_unital_detail(const StarLinearMap& map,
                                const ToleranceConfig& cfg = {});
bool is_unital(const StarLinearMap& map, const ToleranceConfig& cfg = {});

PropertyResult is_positive_detail(const StarLinearMap& map,
                                  const ToleranceConfig& cfg = {});
bool is_positive(const StarLinearMap& map, const ToleranceConfig& cfg = {});

PropertyResult is_isometry_detail(const StarLinearMap& map,
                                  const ToleranceConfig& cfg = {},
                                  int level_n = 1);
bool is_isometry(const StarLinearMap& map, const ToleranceConfig& cfg = {},
                 int level_n = 1);

PropertyResult is_order_isometry_detail(const StarLinearMap& map,
                                        const ToleranceConfig& cfg = {},
                                        int level_n = 1);
bool is_order_isometry(const StarLinearMap& map,
                       const ToleranceConfig& cfg = {}, int level_n = 1);

PropertyResult is_abs_preserving_detail(const StarLinearMap& map,
                                        const ToleranceConfig& cfg = {},
                                        int level_n = 1);
bool is_abs_preserving(const StarLinearMap& map,
                       const ToleranceConfig& cfg = {}, int level_n = 1);

// --- equivalence suites ---------------------------------------------------------

// Four equivalent characterizations of absolute-value preservers:
//   (1) phi(|v|) = |phi(v)|
//   (2) phi positive and phi preserves orthogonal cone pairs
//   (3) phi positive and phi(v^+) = phi(v)^+
//   (4) phi positive and phi(v^-) = phi(v)^-
// The report asserts that all four verdicts agree.
ClassificationReport abs_preserver_equivalence_suite(
    const StarLinearMap& map, const ToleranceConfig& cfg = {});

// On surjective maps: order isometry <=> unital isometry.
ClassificationReport order_isometry_equivalence_suite(
    const StarLinearMap& map, const ToleranceConfig& cfg = {});

// On bijective maps: (unital and |.|-preserving) <=> order isometry.
ClassificationReport isometry_characterization_suite(
    const StarLinearMap& map, const ToleranceConfig& cfg = {});

// On bijective maps between hermitian models: order isometry <=> unital
// |.|-preserving <=> Jordan isomorphism.
ClassificationReport jordan_equivalence_suite(const StarLinearMap& map,
                                              const ToleranceConfig& cfg = {});

// --- kernel / inverse ------------------------------------------------------------

struct KernelData {
  std::vector<Element> kernel_basis;        // basis of ker restricted to sa part
  std::vector<Element> positive_generators; // v^+/v^- parts spanning ker
  CheckReport checks;
};

// Kernel of an absolute-value preserving map, with verification that the
// kernel is an absolutely order ideal (parts of kernel elements stay in the
// kernel; sampled minorants of positive kernel elements are killed).
// Throws NotAbsPreserving when the sampled precondition fails.
KernelData kernel_data(const StarLinearMap& map, const ToleranceConfig& cfg = {});

// Inverse of a bijective map. Throws Singular.
StarLinearMap inverse_map(const StarLinearMap& map,
                          const ToleranceConfig& cfg = {});

// --- Jordan structure -------------------------------------------------------------

// Operator Jordan product (a b + b a) / 2. Square self-adjoint levels only;
// throws LatticeUnsupported on the lattice model (see lattice_product).
Element jordan_product(const SpaceModel& model, const Element& a,
                       const Element& b);

// Coordinatewise product, the lattice counterpart of the Jordan product.
Element lattice_product(const SpaceModel& model, const Element& a,
                        const Element& b);

// Exact bilinearity-complete check on self-adjoint basis pairs.
PropertyResult is_jordan_hom_detail(const StarLinearMap& map,
                                    const ToleranceConfig& cfg = {});
bool is_jordan_hom(const StarLinearMap& map, const ToleranceConfig& cfg = {});

// --- order projections and absolute compatibility ----------------------------------

struct OrderProjectionResult {
  bool verdict = false;           // p perp (e - p), the order-theoretic test
  bool algebraic_consistent = true;  // hermitian oracle p^2 = p agrees
  double residual = 0.0;
};

// Requires 0 <= p <= e (OutOfInterval otherwise).
OrderProjectionResult is_order_projection_detail(const SpaceModel& model,
                                                 const Element& p,
                                                 const ToleranceConfig& cfg = {});
bool is_order_projection(const SpaceModel& model, const Element& p,
                         const ToleranceConfig& cfg = {});

// Unital |.|-preserving maps carry order projections to order projections.
// Throws NotUnital / NotAbsPreserving when the preconditions fail.
CheckReport order_projection_preservation_suite(const StarLinearMap& map,
                                                const ToleranceConfig& cfg = {});

// u and v are absolutely compatible when |u - v| + |e - u - v| = e.
bool is_abs_compatible(const SpaceModel& model, const Element& u,
                       const Element& v, const ToleranceConfig& cfg = {});
double abs_compatibility_residual(const SpaceModel& model, const Element& u,
                                  const Element& v);

// |.|-preserving maps with phi(e) an order projection carry absolutely
// compatible pairs to absolutely compatible pairs. The suite draws commuting
// pairs in [0, e] whose joint spectrum makes them compatible.
// Throws NotAbsPreserving / OutOfInterval on precondition failure.
CheckReport abs_compatibility_preservation_suite(const StarLinearMap& map,
                                                 const ToleranceConfig& cfg = {});

}  // namespace absorder
