#include "hadamard/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hadamard/error.hpp"
#include "text.hpp"

namespace hadamard {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw DomainError("piecewise-linear map needs at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i].first) || !std::isfinite(nodes_[i].second))
      throw DomainError("piecewise-linear node is not finite");
    if (i > 0 && !(nodes_[i - 1].first < nodes_[i].first))
      throw DomainError("piecewise-linear abscissas must increase strictly");
  }
}

PiecewiseLinear PiecewiseLinear::identity() { return PiecewiseLinear({{0.0, 0.0}, {1.0, 1.0}}); }

PiecewiseLinear PiecewiseLinear::linear(double slope, double offset) {
  return PiecewiseLinear({{0.0, offset}, {1.0, offset + slope}});
}

PiecewiseLinear PiecewiseLinear::parse(const std::string& raw) {
  const std::string_view s = text::trim(raw);
  if (s == "id") return identity();
  if (!text::starts_with(s, "pl[") || s.back() != ']')
    throw ParseError("expected 'id' or 'pl[(s,v),...]', got '" + std::string(s) + "'", "map");
  std::vector<std::pair<double, double>> nodes;
  for (auto part : text::split_top(s.substr(3, s.size() - 4), ',')) {
    auto tuple = text::to_tuple(part);
    if (!tuple || tuple->size() != 2)
      throw ParseError("malformed node '" + std::string(part) + "'", "map");
    nodes.emplace_back((*tuple)[0], (*tuple)[1]);
  }
  try {
    return PiecewiseLinear(std::move(nodes));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), "map");
  }
}

double PiecewiseLinear::operator()(double s) const noexcept {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                             [](double v, const auto& node) { return v < node.first; });
  std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
  hi = std::clamp<std::size_t>(hi, 1, nodes_.size() - 1);
  const auto& [s0, v0] = nodes_[hi - 1];
  const auto& [s1, v1] = nodes_[hi];
  if (s == s0) return v0;
  if (s == s1) return v1;
  // Slope-intercept form keeps lines through the origin exact near 0.
  const double m = (v1 - v0) / (s1 - s0);
  return m * s + (v0 - m * s0);
}

std::vector<double> PiecewiseLinear::slopes() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    out.push_back((nodes_[i].second - nodes_[i - 1].second) / (nodes_[i].first - nodes_[i - 1].first));
  return out;
}

double PiecewiseLinear::lipschitz_constant() const {
  double l = 0.0;
  for (double m : slopes()) l = std::max(l, std::abs(m));
  return l;
}

bool PiecewiseLinear::strictly_monotone() const noexcept {
  bool up = true, down = true;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    up = up && nodes_[i].second > nodes_[i - 1].second;
    down = down && nodes_[i].second < nodes_[i - 1].second;
  }
  return up || down;
}

std::optional<Interval> PiecewiseLinear::fixed_interval() const {
  const auto m = slopes();
  for (double v : m)
    if (v < -1.0 || v > 1.0) return std::nullopt;
  constexpr double eps = 1e-12;
  double lo = INFINITY, hi = -INFINITY;
  auto mark = [&](double a, double b) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  };
  // h(s) = f(s) - s is linear on each piece, tails included.
  auto piece = [&](double a, double b, double s_ref, double h_ref, double slope) {
    const double dh = slope - 1.0;
    if (dh == 0.0) {
      if (std::abs(h_ref) <= eps) mark(a, b);
      return;
    }
    const double root = s_ref - h_ref / dh;
    if (root >= a && root <= b) mark(root, root);
  };
  const std::size_t n = nodes_.size();
  piece(-INFINITY, nodes_[0].first, nodes_[0].first, nodes_[0].second - nodes_[0].first, m.front());
  for (std::size_t i = 1; i < n; ++i)
    piece(nodes_[i - 1].first, nodes_[i].first, nodes_[i - 1].first,
          nodes_[i - 1].second - nodes_[i - 1].first, m[i - 1]);
  piece(nodes_[n - 1].first, INFINITY, nodes_[n - 1].first, nodes_[n - 1].second - nodes_[n - 1].first,
        m.back());
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

std::string PiecewiseLinear::describe() const {
  std::string out = "pl[";
  char buf[64];
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s(%.17g,%.17g)", i ? "," : "", nodes_[i].first, nodes_[i].second);
    out += buf;
  }
  return out + "]";
}

}  // namespace hadamard
