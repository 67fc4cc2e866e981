#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/convex_set.hpp"

namespace hadamard {

/// Piecewise-linear map R -> R through explicit nodes, extended beyond the
/// outer nodes with the slopes of the outer segments.
class PiecewiseLinear {
 public:
  /// Nodes must have strictly increasing abscissas; at least two nodes.
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> nodes);

  static PiecewiseLinear identity();
  static PiecewiseLinear linear(double slope, double offset = 0.0);
  /// "pl[(s0,v0),(s1,v1),...]" or "id".
  static PiecewiseLinear parse(const std::string& text);

  double operator()(double s) const noexcept;

  const std::vector<std::pair<double, double>>& nodes() const noexcept { return nodes_; }
  std::vector<double> slopes() const;
  double lipschitz_constant() const;
  /// Strict monotonicity of node values, which makes the map injective.
  bool strictly_monotone() const noexcept;
  /// Fixed-point set {s : f(s) = s}. For slopes in [-1, 1] it is an interval;
  /// returns nullopt when it is empty or the map is not nonexpansive.
  std::optional<Interval> fixed_interval() const;

  std::string describe() const;

  friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

 private:
  std::vector<std::pair<double, double>> nodes_;
};

}  // namespace hadamard
