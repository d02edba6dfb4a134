#pragma once

// Internal helper for running seeded per-trial checks and collecting
// CheckEntry statistics. Not installed.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "absorder/errors.hpp"
#include "absorder/report.hpp"
#include "absorder/rng.hpp"
#include "absorder/tolerance.hpp"

namespace absorder::detail {

struct TrialOutcome {
  double residual = 0.0;
  double tol = 0.0;
  std::vector<Witness::Item> items;  // payloads kept only if the trial fails
  std::string note;
  bool skipped = false;

  static TrialOutcome skip() {
    TrialOutcome o;
    o.skipped = true;
    return o;
  }
};

using TrialFn = std::function<TrialOutcome(std::int64_t, RngStream&)>;

// Runs `trials` seeded trials. A trial fails when its residual is not <= tol
// (NaN fails) or when it throws. The first failure is kept as the witness.
inline CheckEntry run_sampled(const std::string& name,
                              const ToleranceConfig& cfg, std::uint64_t salt,
                              int trials, const TrialFn& fn,
                              CheckMethod method = CheckMethod::sampled) {
  CheckEntry entry;
  entry.name = name;
  entry.method = method;
  for (std::int64_t t = 0; t < trials; ++t) {
    RngStream rng = RngStream::derived(cfg.seed ^ salt, static_cast<std::uint64_t>(t));
    TrialOutcome out;
    bool threw = false;
    std::string what;
    try {
      out = fn(t, rng);
    } catch (const Error& e) {
      threw = true;
      what = e.what();
    }
    if (out.skipped && !threw) continue;
    ++entry.trials;
    const bool ok = !threw && (out.residual <= out.tol) &&
                    std::isfinite(out.residual);
    if (!std::isnan(out.residual) && out.residual > entry.max_residual)
      entry.max_residual = out.residual;
    if (!ok) {
      ++entry.failures;
      if (!entry.witness) {
        Witness w;
        w.description = threw ? (name + ": " + what)
                              : (out.note.empty() ? name : out.note);
        w.residual = threw ? std::nan("") : out.residual;
        w.seed = cfg.seed ^ salt;
        w.trial = t;
        w.items = out.items;
        entry.witness = std::move(w);
      }
    }
  }
  return entry;
}

}  // namespace absorder::detail
