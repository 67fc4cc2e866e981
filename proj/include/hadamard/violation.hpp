#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hadamard/point.hpp"

namespace hadamard {

/// Outcome of a sampled inequality check.
///
/// `worst_violation` is the largest observed value of (lhs - rhs) for an
/// inequality lhs <= rhs; values <= tolerance count as satisfied. The witness
/// holds the tuple that produced the worst violation once it exceeds the tolerance.
struct ViolationReport {
  std::string check;
  double tolerance = 0.0;
  std::size_t samples_tested = 0;
  std::size_t violations = 0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<Point> witness;
  std::vector<double> witness_params;

  bool passed() const noexcept { return violations == 0; }
  bool has_witness() const noexcept { return !witness.empty() || !witness_params.empty(); }

  /// Records one sample. `make_witness` is only invoked when this sample becomes
  /// the worst one and exceeds the tolerance.
  template <typename WitnessFn>
  void record(double amount, WitnessFn&& make_witness) {
    ++samples_tested;
    if (amount > tolerance) ++violations;
    if (amount > worst_violation) {
      worst_violation = amount;
      if (amount > tolerance) {
        witness.clear();
        witness_params.clear();
        make_witness(witness, witness_params);
      }
    }
  }

  void record(double amount) {
    record(amount, [](auto&, auto&) {});
  }

  /// Reduction of two independent reports of the same check.
  void merge(const ViolationReport& other);

  std::string summary() const;
};

}  // namespace hadamard
