#include "absorder/report.hpp"

#include <iomanip>
#include <sstream>

namespace absorder {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "untested";
  }
}

std::string to_string(CheckMethod m) {
  return m == CheckMethod::exact ? "exact" : "sampled";
}

namespace {
void print_witness(std::ostream& os, const Witness& w, const char* indent) {
  os << indent << "witness: " << w.description << " (residual " << w.residual
     << ", seed " << w.seed << ", trial " << w.trial << ")\n";
}
}  // namespace

std::string to_text(const CheckReport& report) {
  std::ostringstream os;
  os << report.title << "\n";
  for (const auto& e : report.entries) {
    os << "  [" << (e.passed() ? "PASS" : "FAIL") << "] " << e.name << ": "
       << (e.trials - e.failures) << "/" << e.trials << " ("
       << to_string(e.method) << ", max residual " << std::scientific
       << std::setprecision(3) << e.max_residual << ")\n";
    os.unsetf(std::ios::scientific);
    if (e.witness) print_witness(os, *e.witness, "    ");
  }
  for (const auto& n : report.notes) os << "  note: " << n << "\n";
  os << "  => " << (report.passed() ? "ALL CHECKS PASSED" : "FAILURES PRESENT")
     << "\n";
  return os.str();
}

std::string to_text(const ClassificationReport& report) {
  std::ostringstream os;
  os << report.title << "\n";
  for (const auto& [name, r] : report.verdicts) {
    os << "  " << name << ": " << to_string(r.verdict) << " ("
       << to_string(r.method) << ", " << r.samples << " samples, max residual "
       << std::scientific << std::setprecision(3) << r.max_residual << ")\n";
    os.unsetf(std::ios::scientific);
    if (r.witness) print_witness(os, *r.witness, "    ");
  }
  if (!report.levels_tested.empty()) {
    os << "  levels tested:";
    for (int n : report.levels_tested) os << " " << n;
    os << "\n";
  }
  for (const auto& n : report.notes) os << "  note: " << n << "\n";
  os << "  => equivalences " << (report.equivalences_hold ? "hold" : "VIOLATED")
     << "\n";
  return os.str();
}

}  // namespace absorder
