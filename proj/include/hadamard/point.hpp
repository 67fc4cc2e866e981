#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hadamard {

/// A coordinate tuple tagged with the id of the space it belongs to.
///
/// Coordinates are only meaningful together with the owning space's metric;
/// every space operation rejects points whose `space_id` differs from its own.
struct Point {
  std::vector<double> coords;
  std::string space_id;

  Point() = default;
  Point(std::vector<double> c, std::string id) : coords(std::move(c)), space_id(std::move(id)) {}

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  std::span<const double> view() const noexcept { return coords; }

  friend bool operator==(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

}  // namespace hadamard
