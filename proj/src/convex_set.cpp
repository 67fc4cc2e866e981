#include "hadamard/convex_set.hpp"

#include <cmath>
#include <cstdio>

#include "hadamard/error.hpp"
#include "hadamard/space.hpp"
#include "text.hpp"

namespace hadamard {

ConvexSetSpec ConvexSetSpec::singleton(Point p) {
  ConvexSetSpec s;
  s.kind = Kind::singleton;
  s.points = {std::move(p)};
  return s;
}

ConvexSetSpec ConvexSetSpec::segment(Point a, Point b) {
  ConvexSetSpec s;
  s.kind = Kind::segment;
  s.points = {std::move(a), std::move(b)};
  return s;
}

ConvexSetSpec ConvexSetSpec::halfspace(Point x, Point y) {
  ConvexSetSpec s;
  s.kind = Kind::halfspace;
  s.points = {std::move(x), std::move(y)};
  return s;
}

ConvexSetSpec ConvexSetSpec::box(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.lo <= iv.hi)) throw DomainError("box interval with lo > hi");
  }
  ConvexSetSpec s;
  s.kind = Kind::box;
  s.intervals = std::move(intervals);
  return s;
}

ConvexSetSpec ConvexSetSpec::x_axis(std::size_t dim) {
  std::vector<Interval> iv(dim, Interval{0.0, 0.0});
  if (dim > 0) iv[0] = Interval{};
  return box(std::move(iv));
}

bool ConvexSetSpec::contains(const Space& space, const Point& z, double tol) const {
  switch (kind) {
    case Kind::whole:
      return space.owns(z);
    case Kind::singleton:
      return space.distance(points[0], z) <= tol;
    case Kind::segment:
      return space.distance(points[0], z) + space.distance(z, points[1]) -
                 space.distance(points[0], points[1]) <=
             tol;
    case Kind::halfspace:
      return space.distance(points[0], z) <= space.distance(z, points[1]) + tol;
    case Kind::box:
      space.require(z);
      if (z.dim() != intervals.size()) return false;
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (!intervals[i].contains(z[i], tol)) return false;
      }
      return true;
  }
  return false;
}

const char* to_string(ConvexSetSpec::Kind kind) {
  switch (kind) {
    case ConvexSetSpec::Kind::whole: return "whole";
    case ConvexSetSpec::Kind::singleton: return "singleton";
    case ConvexSetSpec::Kind::segment: return "segment";
    case ConvexSetSpec::Kind::halfspace: return "halfspace";
    case ConvexSetSpec::Kind::box: return "box";
  }
  return "?";
}

namespace {

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coords(const Point& p) {
  std::string out;
  for (std::size_t i = 0; i < p.dim(); ++i) out += (i ? "," : "") + number(p[i]);
  return out;
}

Point parse_point(const Space& space, std::string_view s, const std::string& where) {
  auto tuple = text::to_tuple(s);
  if (!tuple) throw ParseError("malformed point '" + std::string(s) + "'", where);
  return space.make_point(std::move(*tuple));
}

std::pair<Point, Point> parse_two(const Space& space, std::string_view body, const std::string& where) {
  auto parts = text::split_top(body, ';');
  if (parts.size() != 2) throw ParseError("expected two points separated by ';'", where);
  return {parse_point(space, parts[0], where), parse_point(space, parts[1], where)};
}

}  // namespace

std::string ConvexSetSpec::describe() const {
  switch (kind) {
    case Kind::whole: return "whole";
    case Kind::singleton: return "point(" + coords(points[0]) + ")";
    case Kind::segment: return "segment(" + coords(points[0]) + ";" + coords(points[1]) + ")";
    case Kind::halfspace: return "halfspace(" + coords(points[0]) + ";" + coords(points[1]) + ")";
    case Kind::box: {
      std::string out = "box(";
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        out += (i ? "x[" : "[") + number(intervals[i].lo) + "," + number(intervals[i].hi) + "]";
      }
      return out + ")";
    }
  }
  return "?";
}

ConvexSetSpec parse_convex_set(const Space& space, const std::string& raw) {
  const std::string where = "set";
  const std::string_view s = text::trim(raw);
  auto body_of = [&](std::string_view name) -> std::optional<std::string_view> {
    if (!text::starts_with(s, name) || s.size() < name.size() + 2) return std::nullopt;
    if (s[name.size()] != '(' || s.back() != ')') return std::nullopt;
    return s.substr(name.size() + 1, s.size() - name.size() - 2);
  };
  if (s == "whole") return ConvexSetSpec::whole();
  if (s == "origin") return ConvexSetSpec::singleton(space.make_point(std::vector<double>(space.dim(), 0.0)));
  if (s == "x-axis") return ConvexSetSpec::x_axis(space.dim());
  if (auto body = body_of("point")) return ConvexSetSpec::singleton(parse_point(space, *body, where));
  if (auto body = body_of("segment")) {
    auto [a, b] = parse_two(space, *body, where);
    return ConvexSetSpec::segment(std::move(a), std::move(b));
  }
  if (auto body = body_of("halfspace")) {
    auto [a, b] = parse_two(space, *body, where);
    return ConvexSetSpec::halfspace(std::move(a), std::move(b));
  }
  if (auto body = body_of("box")) {
    std::vector<Interval> ivs;
    for (auto part : text::split_top(*body, 'x')) {
      if (part.size() < 2 || part.front() != '[' || part.back() != ']') {
        throw ParseError("malformed box interval '" + std::string(part) + "'", where);
      }
      auto ends = text::split_top(part.substr(1, part.size() - 2), ',');
      auto lo = ends.size() == 2 ? text::to_double(ends[0]) : std::nullopt;
      auto hi = ends.size() == 2 ? text::to_double(ends[1]) : std::nullopt;
      if (!lo || !hi) throw ParseError("malformed box interval '" + std::string(part) + "'", where);
      ivs.push_back(Interval{*lo, *hi});
    }
    if (ivs.size() != space.dim()) throw ParseError("box dimension does not match the space", where);
    return ConvexSetSpec::box(std::move(ivs));
  }
  throw ParseError("unknown convex set '" + std::string(s) + "'", where);
}

}  // namespace hadamard
