#include "hadamard/point.hpp"

#include <cstdio>

#include "hadamard/violation.hpp"

namespace hadamard {

std::string to_string(const Point& p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) out += ", ";
    std::snprintf(buf, sizeof buf, "%.10g", p.coords[i]);
    out += buf;
  }
  return out + ")";
}

void ViolationReport::merge(const ViolationReport& other) {
  samples_tested += other.samples_tested;
  violations += other.violations;
  if (other.worst_violation > worst_violation) {
    worst_violation = other.worst_violation;
    witness = other.witness;
    witness_params = other.witness_params;
  }
}

std::string ViolationReport::summary() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: %s  samples=%zu violations=%zu worst=%.3e tol=%.1e",
                check.c_str(), passed() ? "ok" : "VIOLATED", samples_tested, violations,
                worst_violation, tolerance);
  std::string out = buf;
  if (!passed() && has_witness()) {
    out += "  witness:";
    for (const auto& p : witness) out += " " + to_string(p);
    for (double v : witness_params) {
      std::snprintf(buf, sizeof buf, " %.6g", v);
      out += buf;
    }
  }
  return out;
}

}  // namespace hadamard
