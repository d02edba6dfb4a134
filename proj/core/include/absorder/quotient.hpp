#pragma once

#include <vector>

#include "absorder/maps.hpp"
#include "absorder/report.hpp"
#include "absorder/space.hpp"

namespace absorder {

// The quotient V / ker(phi) of an |.|-preserving map, realized in the
// orthogonal complement of the kernel under the trace inner product.
// Classes are stored as coordinate vectors over the complement basis;
// the induced structure is
//   cone:  x >= 0  iff  phi(lift(x)) lies in the codomain cone,
//   |x|  = class of |lift(x)|,
//   unit = class of e.
class QuotientSpace {
 public:
  QuotientSpace(StarLinearMap map, const ToleranceConfig& cfg);

  int dim() const { return static_cast<int>(complement_.size()); }
  const StarLinearMap& map() const { return map_; }
  const SpaceModel& ambient() const { return map_.domain(); }
  const std::vector<Element>& kernel_basis() const { return kernel_; }
  const std::vector<Element>& complement_basis() const { return complement_; }

  // Canonical representative of the class with coordinates x.
  Element lift(const RVec& x) const;
  // Coordinates of the class of v.
  RVec project(const Element& v) const;

  RVec abs(const RVec& x) const;
  bool in_cone(const RVec& x, const ToleranceConfig& cfg) const;
  RVec unit() const;

  // The induced bijection onto phi(V): class -> phi(lift).
  Element induced_map(const RVec& x) const;

 private:
  StarLinearMap map_;
  std::vector<Element> kernel_;
  std::vector<Element> complement_;
};

// Builds the quotient. Throws NotAbsPreserving when the sampled
// |.|-preservation precondition fails.
QuotientSpace quotient_model(const StarLinearMap& map,
                             const ToleranceConfig& cfg = {});

// Verifies on the quotient: the absolutely-ordered axioms (pushing orthogonal
// pairs and minorants down from the ambient space), representative
// independence of the induced absolute value, and that the induced map onto
// phi(V) is bijective and |.|-preserving.
CheckReport quotient_axiom_suite(const QuotientSpace& q,
                                 const ToleranceConfig& cfg = {});

}  // namespace absorder
