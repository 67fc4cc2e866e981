#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/convex_set.hpp"
#include "hadamard/point.hpp"

namespace hadamard {

using Rng = std::mt19937_64;

/// Geodesic metric space with closed-form distance and geodesic oracles.
///
/// Public members validate space ids and parameters, then dispatch to the
/// `*_impl` hooks implemented by each model space.
class Space {
 public:
  virtual ~Space() = default;

  const std::string& id() const noexcept { return id_; }
  virtual std::size_t dim() const noexcept = 0;

  /// Membership predicate on raw coordinates.
  virtual bool contains(std::span<const double> coords) const = 0;

  /// Builds a point of this space; throws DomainError when `coords` is not a member.
  Point make_point(std::vector<double> coords) const;
  bool owns(const Point& p) const noexcept { return p.space_id == id_; }
  /// Throws SpaceMismatch unless `p` belongs to this space.
  void require(const Point& p) const;

  double distance(const Point& a, const Point& b) const;
  /// Point at parameter t on the geodesic from a (t = 0) to b (t = 1).
  Point geodesic_point(const Point& a, const Point& b, double t) const;

  /// Draws from the space's sampling distribution.
  virtual Point sample(Rng& rng) const = 0;
  /// Draws a pair for two-point checks; spaces may correlate the pair to cover
  /// degenerate metric branches.
  virtual std::pair<Point, Point> sample_pair(Rng& rng) const;

  /// Metric projection onto `set`. Throws Unsupported when this space has no
  /// projector for the set kind.
  Point project(const ConvexSetSpec& set, const Point& x) const;

 protected:
  explicit Space(std::string id) : id_(std::move(id)) {}

  Point wrap(std::vector<double> coords) const { return Point(std::move(coords), id_); }

  virtual double distance_impl(const Point& a, const Point& b) const = 0;
  virtual Point geodesic_impl(const Point& a, const Point& b, double t) const = 0;

  /// Default: golden-section search on t -> d(x, [a,b](t)), which is convex in CAT(0).
  virtual Point project_segment(const Point& a, const Point& b, const Point& x) const;
  virtual std::optional<Point> project_halfspace(const Point& x0, const Point& y0, const Point& z) const;
  virtual std::optional<Point> project_box(std::span<const Interval> box, const Point& z) const;

 private:
  std::string id_;
};

using SpaceHandle = std::shared_ptr<const Space>;

}  // namespace hadamard
