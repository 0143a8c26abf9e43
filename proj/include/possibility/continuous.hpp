#pragma once

// Information of continuous possibility distributions on [0,1],
//
//   I(f) = integral_0^1 (1 - f~(x)) / x dx,
//
// the information distance of f from the uniform distribution f = 1, and the
// continuous counterparts of the distances g, G, H, K.
//
// Two independent evaluation routes are provided. `info` rearranges f and
// integrates each linear segment of f~ in closed form. `info_from_level`
// works on the level measure directly: by the layer-cake identity
// 1 - f~(x) = integral_0^1 [f~(x) < y] dy and {f~ < y} = (P(y), 1], so
// I = -integral_0^1 ln P(y) dy, which is integrated piece by piece in closed
// form.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "possibility/error.hpp"
#include "possibility/level_measure.hpp"
#include "possibility/piecewise.hpp"

namespace possibility {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace detail {

/// integral_{x0}^{x1} (1 - f~(x)) / x dx for a linear segment of f~ with
/// values v0, v1. Requires x0 > 0.
inline double segment_information(double x0, double v0, double x1, double v1) {
  const double w0 = 1.0 - v0;
  const double w1 = 1.0 - v1;
  // 1 - f~ = alpha + beta x on the segment; beta (x1 - x0) = w1 - w0.
  const double alpha = (w0 * x1 - w1 * x0) / (x1 - x0);
  return alpha * std::log(x1 / x0) + (w1 - w0);
}

inline double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

/// integral_0^h ln(p(t)) dt for p linear from p0 > 0 down to p1 >= 0.
inline double integral_of_log_linear(double p0, double p1, double h) {
  const double m = 0.5 * (p0 + p1);
  const double d = 0.5 * (p1 - p0);
  const double r = d / m;
  double mean_derivative;  // (p1 ln p1 - p0 ln p0) / (p1 - p0)
  if (std::abs(r) < 1e-3) {
    const double r2 = r * r;
    mean_derivative = std::log(m) + 1.0 - r2 / 6.0 - r2 * r2 / 20.0;
  } else {
    mean_derivative = (xlogx(p1) - xlogx(p0)) / (p1 - p0);
  }
  return h * (mean_derivative - 1.0);
}

}  // namespace detail

/// I of a nonincreasing piecewise-linear f~ with f~(0) = 1.
inline double info_of_descending(const PiecewisePossibility& descending) {
  const auto pts = descending.points();
  if (!detail::is_normalized_max(pts.front().v)) {
    throw MathError("integral diverges at 0: rearranged value at 0 is " +
                    std::to_string(pts.front().v) + " < 1");
  }
  // First segment: f~(0) = 1 makes the integrand bounded and the logarithmic
  // term vanish.
  double total = 1.0 - pts[1].v;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    total += detail::segment_information(pts[i].x, pts[i].v, pts[i + 1].x, pts[i + 1].v);
  }
  return total;
}

/// I(f) via the descending rearrangement. Subnormal f has a nonintegrable
/// singularity at 0 and is rejected.
inline double info(const PiecewisePossibility& f) {
  if (!f.normalized()) {
    throw MathError("integral diverges at 0: distribution is subnormal (sup f = " +
                    std::to_string(f.sup()) + " < 1)");
  }
  return info_of_descending(descending_rearrangement(f));
}

/// I(f), with +infinity for subnormal f.
inline double info_extended(const PiecewisePossibility& f) {
  return f.normalized() ? info(f) : kInfinity;
}

/// I = -integral_0^1 ln P(y) dy.
inline double info_from_level(const LevelMeasure& level) {
  if (std::abs(level.total() - 1.0) > LevelMeasure::kTolerance) {
    throw DomainError("info_from_level: P(0) = " + std::to_string(level.total()) +
                      ", expected 1");
  }
  double integral_of_log = 0.0;
  for (const auto& piece : level.pieces()) {
    const double h = piece.length();
    for (const auto& factor : {piece.first, piece.second}) {
      const double p0 = std::max(0.0, factor.start);
      const double p1 = std::max(0.0, factor(h));
      if (p0 <= 0.0) {
        throw MathError("integral diverges: P vanishes on (" + std::to_string(piece.y0) + ", " +
                        std::to_string(piece.y1) + "] before y = 1");
      }
      integral_of_log += detail::integral_of_log_linear(p0, std::min(p1, p0), h);
    }
  }
  return -integral_of_log;
}

/// g(lower, upper) = I(lower) - I(upper) for lower <= upper. I decreases as
/// the distribution grows, so the order is reversed relative to the discrete
/// U-based form. +infinity when lower is subnormal.
inline double g_cont(const PiecewisePossibility& lower, const PiecewisePossibility& upper) {
  if (!pointwise_leq(lower, upper)) {
    throw DomainError("g_cont: lower is not pointwise below upper");
  }
  if (!upper.normalized()) {
    throw MathError("g_cont: both arguments are subnormal; both informations diverge");
  }
  const double lo = info_extended(lower);
  if (std::isinf(lo)) return kInfinity;
  return lo - info(upper);
}

inline double big_g_cont(const PiecewisePossibility& f1, const PiecewisePossibility& f2) {
  const auto top = join_pw(f1, f2);
  return g_cont(f1, top) + g_cont(f2, top);
}

/// +infinity when the meet is subnormal.
inline double big_h_cont(const PiecewisePossibility& f1, const PiecewisePossibility& f2) {
  const auto bottom = meet_pw(f1, f2);
  if (!bottom.normalized()) return kInfinity;
  return g_cont(bottom, f1) + g_cont(bottom, f2);
}

inline double big_k_cont(const PiecewisePossibility& f1, const PiecewisePossibility& f2) {
  const auto top = join_pw(f1, f2);
  return std::max(g_cont(f1, top), g_cont(f2, top));
}

}  // namespace possibility
