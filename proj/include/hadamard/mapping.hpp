#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hadamard/convex_set.hpp"
#include "hadamard/piecewise_linear.hpp"
#include "hadamard/space.hpp"
#include "hadamard/violation.hpp"

namespace hadamard {

enum class MapKind { identity, rotation, river_product, convex_projection, composition, custom };

const char* to_string(MapKind kind);

/// Self-map of a space, immutable after construction, with an optional
/// analytic description of its fixed-point set.
class MappingSpec {
 public:
  using Function = std::function<Point(const Point&)>;

  static MappingSpec identity(SpaceHandle space);
  /// Rotation about the origin by `theta` radians (euclidean:2 or the disk).
  static MappingSpec rotation(SpaceHandle space, double theta);
  /// T(x, y) = (f(x), g(y)) on the river plane. Requires f strictly monotone
  /// (injective) and g(0) = 0; nonexpansiveness is left to the sampler.
  static MappingSpec river_product(SpaceHandle space, PiecewiseLinear f, PiecewiseLinear g);
  static MappingSpec projection(SpaceHandle space, ConvexSetSpec set);
  /// Applies `maps` left to right.
  static MappingSpec compose(std::vector<MappingSpec> maps);
  static MappingSpec custom(SpaceHandle space, Function fn, std::string description,
                            std::optional<ConvexSetSpec> fixed_set = std::nullopt);

  const SpaceHandle& space() const noexcept { return space_; }
  MapKind kind() const noexcept { return kind_; }
  const std::string& description() const noexcept { return description_; }
  const std::optional<ConvexSetSpec>& fixed_set() const noexcept { return fixed_set_; }

  /// Throws SpaceMismatch for foreign points, DomainError when the image leaves the space.
  Point apply(const Point& x) const;
  Point operator()(const Point& x) const { return apply(x); }

 private:
  MappingSpec(SpaceHandle space, MapKind kind, std::string description, Function fn,
              std::optional<ConvexSetSpec> fixed_set);

  SpaceHandle space_;
  MapKind kind_;
  std::string description_;
  Function fn_;
  std::optional<ConvexSetSpec> fixed_set_;
};

/// "identity", "rotation:theta=<rad>", "river_product:f=<pl>;g=<pl>",
/// "proj:<set>" and "compose:<map>|<map>|...".
MappingSpec parse_mapping(SpaceHandle space, const std::string& text);

/// d(Tx, Ty) <= d(x, y) on random pairs. Witness: {x, y}.
ViolationReport check_nonexpansive(const MappingSpec& map, std::uint64_t seed, std::size_t n_pairs,
                                   double tol);

/// |T p - p| for sampled p in the declared fixed set. Empty report when no fixed set.
ViolationReport check_fixed_set(const MappingSpec& map, std::uint64_t seed, std::size_t n_samples,
                                double tol);

/// Metric projection onto F(T). Throws Unsupported when the fixed set is unknown.
Point project_fixed_set(const MappingSpec& map, const Point& x);

/// d(x, Tx).
double residual(const MappingSpec& map, const Point& x);

}  // namespace hadamard
