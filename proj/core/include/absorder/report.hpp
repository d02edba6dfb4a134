#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absorder/space.hpp"

namespace absorder {

// A concrete counterexample, reproducible from (seed, trial).
struct Witness {
  std::string description;
  double residual = 0.0;
  std::uint64_t seed = 0;
  std::int64_t trial = -1;
  // Labeled payloads, each tagged with the model it belongs to.
  struct Item {
    std::string label;
    std::string model;
    Element element;
  };
  std::vector<Item> items;
};

enum class CheckMethod { exact, sampled };

// One named check within a suite.
struct CheckEntry {
  std::string name;
  CheckMethod method = CheckMethod::sampled;
  int trials = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::optional<Witness> witness;

  bool passed() const { return failures == 0; }
};

// Result of an axiom / identity suite: per-check pass counts plus witnesses.
struct CheckReport {
  std::string title;
  std::vector<CheckEntry> entries;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& e : entries)
      if (!e.passed()) return false;
    return true;
  }
  const CheckEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

enum class Verdict { pass, fail, untested };

// Verdict for a single map property.
struct PropertyResult {
  Verdict verdict = Verdict::untested;
  CheckMethod method = CheckMethod::sampled;
  int samples = 0;
  double max_residual = 0.0;
  std::optional<Witness> witness;

  bool pass() const { return verdict == Verdict::pass; }
  bool fail() const { return verdict == Verdict::fail; }
};

// Per-property verdicts for a map, with the matricial levels that were
// exercised and whether the suite's equivalences held.
struct ClassificationReport {
  std::string title;
  std::map<std::string, PropertyResult> verdicts;
  std::vector<int> levels_tested;
  int sample_count = 0;
  bool equivalences_hold = true;
  std::vector<std::string> notes;

  const PropertyResult* find(const std::string& name) const {
    auto it = verdicts.find(name);
    return it == verdicts.end() ? nullptr : &it->second;
  }
  void set(const std::string& name, PropertyResult r) {
    verdicts[name] = std::move(r);
  }
  bool verdict_is(const std::string& name, Verdict v) const {
    const auto* r = find(name);
    return r && r->verdict == v;
  }
};

std::string to_string(Verdict v);
std::string to_string(CheckMethod m);

// Human-readable rendering.
std::string to_text(const CheckReport& report);
std::string to_text(const ClassificationReport& report);

}  // namespace absorder
