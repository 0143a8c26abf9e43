#pragma once

// Continuous possibility distributions on [0,1], represented exactly as
// piecewise-linear functions, plus the pointwise lattice on them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "possibility/discrete.hpp"
#include "possibility/error.hpp"

namespace possibility {

struct Breakpoint {
  double x;
  double v;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// f : [0,1] -> [0,1], linear between breakpoints. x strictly increasing from
/// 0 to 1. The supremum is attained at a breakpoint.
class PiecewisePossibility {
 public:
  explicit PiecewisePossibility(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DomainError("piecewise: need at least two breakpoints");
    if (points_.front().x != 0.0 || points_.back().x != 1.0) {
      throw DomainError("piecewise: domain must be exactly [0,1] (first x = 0, last x = 1)");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!detail::in_unit_interval(points_[i].v)) {
        throw DomainError("piecewise: value " + std::to_string(points_[i].v) + " at index " +
                          std::to_string(i) + " is outside [0,1]");
      }
      if (i > 0 && !(points_[i].x > points_[i - 1].x)) {
        throw DomainError("piecewise: x-coordinates must be strictly increasing (index " +
                          std::to_string(i) + ")");
      }
    }
    sup_ = 0.0;
    for (const auto& p : points_) sup_ = std::max(sup_, p.v);
    normalized_ = detail::is_normalized_max(sup_);
  }

  std::span<const Breakpoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double sup() const noexcept { return sup_; }
  bool normalized() const noexcept { return normalized_; }

  /// Exact at breakpoints; linear interpolation between them.
  double operator()(double x) const {
    if (x <= 0.0) return points_.front().v;
    if (x >= 1.0) return points_.back().v;
    auto it = std::upper_bound(points_.begin(), points_.end(), x,
                               [](double t, const Breakpoint& p) { return t < p.x; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    return lo.v + (x - lo.x) * (hi.v - lo.v) / (hi.x - lo.x);
  }

  friend bool operator==(const PiecewisePossibility& a, const PiecewisePossibility& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<Breakpoint> points_;
  double sup_ = 0.0;
  bool normalized_ = false;
};

/// Piecewise-linear interpolant of `fn` on the uniform grid i/(n-1).
/// For a C2 function the sup-norm error is at most max|f''| h^2 / 8.
template <class Fn>
PiecewisePossibility sample_function(Fn&& fn, std::size_t n_breakpoints) {
  if (n_breakpoints < 2) throw DomainError("sample_function: need at least two breakpoints");
  std::vector<Breakpoint> pts;
  pts.reserve(n_breakpoints);
  const double steps = static_cast<double>(n_breakpoints - 1);
  for (std::size_t i = 0; i < n_breakpoints; ++i) {
    const double x = static_cast<double>(i) / steps;
    const double v = fn(x);
    if (!detail::in_unit_interval(v)) {
      throw DomainError("sample_function: evaluator returned " + std::to_string(v) + " at x = " +
                        std::to_string(x) + ", outside [0,1]");
    }
    pts.push_back({x, v});
  }
  return PiecewisePossibility(std::move(pts));
}

/// Values of `f` at `n` equally spaced points of [0,1], endpoints included.
inline std::vector<Breakpoint> sample_curve(const PiecewisePossibility& f, std::size_t n) {
  std::vector<Breakpoint> out;
  if (n == 0) return out;
  if (n == 1) return {{0.0, f(0.0)}};
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back({x, f(x)});
  }
  return out;
}

namespace detail {

/// Crossings closer than this to an existing breakpoint are dropped.
inline constexpr double kCrossingTolerance = 1e-12;

inline std::vector<double> merged_abscissae(const PiecewisePossibility& f,
                                            const PiecewisePossibility& g) {
  std::vector<double> xs;
  xs.reserve(f.size() + g.size());
  for (const auto& p : f.points()) xs.push_back(p.x);
  for (const auto& p : g.points()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <class Op>
PiecewisePossibility pointwise_pw(const PiecewisePossibility& f, const PiecewisePossibility& g,
                                  Op op) {
  const auto xs = merged_abscissae(f, g);
  std::vector<Breakpoint> out;
  out.reserve(xs.size() * 2);
  double prev_diff = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double fv = f(x);
    const double gv = g(x);
    const double diff = fv - gv;
    if (i > 0 && ((prev_diff > 0.0 && diff < 0.0) || (prev_diff < 0.0 && diff > 0.0))) {
      const double xa = xs[i - 1];
      const double xc = xa + (x - xa) * prev_diff / (prev_diff - diff);
      if (xc - xa > kCrossingTolerance && x - xc > kCrossingTolerance) {
        out.push_back({xc, op(f(xc), g(xc))});
      }
    }
    out.push_back({x, op(fv, gv)});
    prev_diff = diff;
  }
  return PiecewisePossibility(std::move(out));
}

}  // namespace detail

/// Pointwise min, with crossing points inserted so the result is exact.
inline PiecewisePossibility meet_pw(const PiecewisePossibility& f, const PiecewisePossibility& g) {
  return detail::pointwise_pw(f, g, [](double a, double b) { return std::min(a, b); });
}

/// Pointwise max, with crossing points inserted so the result is exact.
inline PiecewisePossibility join_pw(const PiecewisePossibility& f, const PiecewisePossibility& g) {
  return detail::pointwise_pw(f, g, [](double a, double b) { return std::max(a, b); });
}

/// f <= g everywhere. Both are linear between the merged breakpoints, so
/// checking those suffices.
inline bool pointwise_leq(const PiecewisePossibility& f, const PiecewisePossibility& g,
                          double tolerance = 1e-12) {
  for (double x : detail::merged_abscissae(f, g)) {
    if (f(x) > g(x) + tolerance) return false;
  }
  return true;
}

}  // namespace possibility
