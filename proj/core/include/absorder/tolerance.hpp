#pragma once

#include <algorithm>
#include <cstdint>

namespace absorder {

// Numerical acceptance thresholds and sampling budget shared by all checks.
// Behavior is deterministic for a fixed (seed, config).
struct ToleranceConfig {
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;
  int samples = 200;
  std::uint64_t seed = 0;

  // Scale-aware acceptance threshold: eps_abs + eps_rel * scale.
  double scaled(double scale) const {
    return eps_abs + eps_rel * std::max(scale, 0.0);
  }

  ToleranceConfig with_seed(std::uint64_t s) const {
    ToleranceConfig c = *this;
    c.seed = s;
    return c;
  }
  ToleranceConfig with_samples(int n) const {
    ToleranceConfig c = *this;
    c.samples = n;
    return c;
  }
};

}  // namespace absorder
