#pragma once

#include "absorder/report.hpp"
#include "absorder/space.hpp"
#include "absorder/tolerance.hpp"

namespace absorder {

// Seeded verification that the model satisfies the absolutely-ordered-space
// axioms:
//   (a) |v| = v on cone elements
//   (b) |v| +- v in the cone
//   (c) |k v| = |k| |v|
//   (d) u perp v and 0 <= w <= v  =>  u perp w
//   (e) u perp v and u perp w     =>  u perp |v +- w|
// plus cone properness and the orthogonal-decomposition identities.
// `level_n` selects the matricial level (hermitian models only for n > 1).
CheckReport check_absolutely_ordered_axioms(const SpaceModel& model,
                                            const ToleranceConfig& cfg,
                                            int level_n = 1);

// Seeded verification of the absolute-order-unit conditions: the monotone
// norm bound for u <= v <= w, the agreement of perp with absolute
// infty-orthogonality on cone pairs, the norm identities
// || |v| || = ||v|| = max(||v^+||, ||v^-||), and  +-v <= e => |v| <= e.
CheckReport check_absolute_order_unit(const SpaceModel& model,
                                      const ToleranceConfig& cfg,
                                      int level_n = 1);

}  // namespace absorder
