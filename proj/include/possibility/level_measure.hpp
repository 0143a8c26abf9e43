#pragma once

// Level measures P(y) = measure{x : f(x) >= y} and the descending
// rearrangement f~ = P^{-1}.
//
// A LevelMeasure is piecewise polynomial of degree <= 2 in y. Each piece is
// stored in factored form as a product of two linear factors in the local
// coordinate t = y - y0, which is exactly what a min-product of two
// piecewise-linear level measures produces and keeps the logarithm of P
// available in closed form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "possibility/error.hpp"
#include "possibility/piecewise.hpp"

namespace possibility {

/// a + b t on a piece's local coordinate t in [0, y1 - y0].
struct LinearFactor {
  double start = 1.0;
  double slope = 0.0;

  double operator()(double t) const { return start + slope * t; }
  bool constant() const { return slope == 0.0; }
};

struct LevelPiece {
  double y0 = 0.0;
  double y1 = 1.0;
  LinearFactor first;
  LinearFactor second;

  double length() const { return y1 - y0; }
  int degree() const { return (first.constant() ? 0 : 1) + (second.constant() ? 0 : 1); }
  double at_local(double t) const { return std::max(0.0, first(t) * second(t)); }
  double operator()(double y) const { return at_local(y - y0); }
  double start_value() const { return at_local(0.0); }
  double end_value() const { return at_local(length()); }
};

/// Nonincreasing P on [0,1]. P(0) = total(); on (y0, y1] the value is given by
/// the piece, so P(y) = measure{f >= y} is reproduced including the jumps that
/// plateaus of f create.
class LevelMeasure {
 public:
  static constexpr double kTolerance = 1e-9;

  LevelMeasure(double total, std::vector<LevelPiece> pieces)
      : total_(total), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw DomainError("level measure: no pieces");
    if (!(total_ >= 0.0 && total_ <= 1.0 + kTolerance)) {
      throw DomainError("level measure: P(0) = " + std::to_string(total_) + " outside [0,1]");
    }
    if (pieces_.front().y0 != 0.0 || pieces_.back().y1 != 1.0) {
      throw DomainError("level measure: pieces must cover [0,1]");
    }
    double previous = total_;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& p = pieces_[i];
      if (!(p.y1 > p.y0)) throw DomainError("level measure: empty piece " + std::to_string(i));
      if (i > 0 && p.y0 != pieces_[i - 1].y1) {
        throw DomainError("level measure: gap before piece " + std::to_string(i));
      }
      for (const auto* f : {&p.first, &p.second}) {
        if (f->slope > 0.0 || f->start < -kTolerance || (*f)(p.length()) < -kTolerance) {
          throw DomainError("level measure: piece " + std::to_string(i) +
                            " has a factor that is increasing or negative");
        }
      }
      if (p.start_value() > previous + kTolerance) {
        throw DomainError("level measure: increases at y = " + std::to_string(p.y0));
      }
      previous = p.end_value();
      degree_ = std::max(degree_, p.degree());
    }
  }

  /// Continuous piecewise-linear P through (y, P(y)) points, y from 0 to 1.
  static LevelMeasure piecewise_linear(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw DomainError("level measure: need at least two points");
    std::vector<LevelPiece> pieces;
    pieces.reserve(points.size() - 1);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      const auto [ya, pa] = points[i];
      const auto [yb, pb] = points[i + 1];
      if (!(yb > ya)) throw DomainError("level measure: y must be strictly increasing");
      pieces.push_back({ya, yb, {pa, (pb - pa) / (yb - ya)}, {}});
    }
    return LevelMeasure(points.front().second, std::move(pieces));
  }

  static LevelMeasure constant(double value = 1.0) {
    return LevelMeasure(value, {LevelPiece{0.0, 1.0, {value, 0.0}, {}}});
  }

  double total() const noexcept { return total_; }
  std::span<const LevelPiece> pieces() const noexcept { return pieces_; }
  int degree() const noexcept { return degree_; }

  double operator()(double y) const {
    if (y <= 0.0) return total_;
    if (y > 1.0) return 0.0;
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), y,
                               [](const LevelPiece& p, double v) { return p.y1 < v; });
    return (*it)(y);
  }

 private:
  double total_ = 1.0;
  std::vector<LevelPiece> pieces_;
  int degree_ = 0;
};

namespace detail {

inline LevelPiece linear_piece(double y0, double y1, double p_start, double p_end) {
  p_start = std::clamp(p_start, 0.0, 1.0);
  p_end = std::clamp(p_end, 0.0, p_start);
  return {y0, y1, {p_start, (p_end - p_start) / (y1 - y0)}, {}};
}

}  // namespace detail

/// Exact level measure of a piecewise-linear f. Breakpoints in y are the
/// distinct breakpoint values of f together with 0 and 1; on each y-interval
/// every segment of f contributes either its full length, nothing, or a
/// linear share.
inline LevelMeasure level_measure(const PiecewisePossibility& f) {
  const auto pts = f.points();

  std::vector<double> ys;
  ys.reserve(pts.size() + 2);
  ys.push_back(0.0);
  ys.push_back(1.0);
  for (const auto& p : pts) ys.push_back(p.v);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t n_pieces = ys.size() - 1;
  auto index_of = [&ys](double v) {
    return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin());
  };

  struct Segment {
    double lo, hi, length;
    std::size_t lo_idx, hi_idx;
  };
  std::vector<Segment> segs;
  segs.reserve(pts.size() - 1);
  // full[k]: total length of segments with lo >= ys[k+1], i.e. lying entirely
  // above piece k. Built as a suffix sum over lo_idx.
  std::vector<double> full_at(ys.size() + 1, 0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = std::min(pts[i].v, pts[i + 1].v);
    const double hi = std::max(pts[i].v, pts[i + 1].v);
    Segment s{lo, hi, pts[i + 1].x - pts[i].x, index_of(lo), index_of(hi)};
    full_at[s.lo_idx] += s.length;
    segs.push_back(s);
  }
  for (std::size_t k = ys.size(); k-- > 0;) full_at[k] += full_at[k + 1];

  // Segments active on piece k satisfy lo_idx <= k < hi_idx.
  std::vector<std::vector<std::size_t>> starting(n_pieces);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].hi_idx > segs[i].lo_idx) starting[segs[i].lo_idx].push_back(i);
  }

  std::vector<LevelPiece> pieces;
  pieces.reserve(n_pieces);
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < n_pieces; ++k) {
    std::erase_if(active, [&](std::size_t i) { return segs[i].hi_idx <= k; });
    active.insert(active.end(), starting[k].begin(), starting[k].end());
    const double ya = ys[k];
    const double yb = ys[k + 1];
    double p_start = full_at[k + 1];
    double p_end = full_at[k + 1];
    for (std::size_t i : active) {
      const auto& s = segs[i];
      const double scale = s.length / (s.hi - s.lo);
      p_start += scale * (s.hi - ya);
      p_end += scale * (s.hi - yb);
    }
    pieces.push_back(detail::linear_piece(ya, yb, p_start, p_end));
  }
  return LevelMeasure(1.0, std::move(pieces));
}

/// Level measure of the min-product on the unit square:
/// {min(f1,f2) >= y} = {f1 >= y} x {f2 >= y}, so P(y) = P1(y) P2(y).
inline LevelMeasure product_level(const LevelMeasure& p1, const LevelMeasure& p2) {
  if (p1.degree() + p2.degree() > 2) {
    throw DomainError("product_level: degree overflow (" + std::to_string(p1.degree()) + " + " +
                      std::to_string(p2.degree()) + " > 2); discretize one factor first");
  }
  std::vector<double> ys;
  for (const auto& p : p1.pieces()) ys.push_back(p.y0);
  for (const auto& p : p2.pieces()) ys.push_back(p.y0);
  ys.push_back(1.0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  auto rebase = [](const LinearFactor& f, double shift) {
    return LinearFactor{f.start + f.slope * shift, f.slope};
  };

  std::vector<LevelPiece> pieces;
  pieces.reserve(ys.size() - 1);
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  const auto a = p1.pieces();
  const auto b = p2.pieces();
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    const double y0 = ys[k];
    const double y1 = ys[k + 1];
    while (a[i1].y1 <= y0) ++i1;
    while (b[i2].y1 <= y0) ++i2;

    double scale = 1.0;
    std::vector<LinearFactor> linear;
    for (const auto& [piece, shift] :
         {std::pair{a[i1], y0 - a[i1].y0}, std::pair{b[i2], y0 - b[i2].y0}}) {
      for (const auto& f : {piece.first, piece.second}) {
        if (f.constant()) {
          scale *= f.start;
        } else {
          linear.push_back(rebase(f, shift));
        }
      }
    }
    LevelPiece out{y0, y1, {scale, 0.0}, {}};
    if (!linear.empty()) {
      out.first = {linear[0].start * scale, linear[0].slope * scale};
      if (linear.size() > 1) out.second = linear[1];
    }
    pieces.push_back(out);
  }
  return LevelMeasure(p1.total() * p2.total(), std::move(pieces));
}

namespace detail {

inline constexpr double kRearrangeTolerance = 1e-9;

// Solves piece(y) = x for y on a strictly decreasing piece by bisection.
inline double invert_piece(const LevelPiece& piece, double x) {
  double lo = 0.0;
  double hi = piece.length();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (piece.at_local(mid) > x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return piece.y0 + 0.5 * (lo + hi);
}

struct CurvePoint {
  double x;
  double y;
};

// Appends points strictly between a and b on the inverse of `piece` until the
// chord deviates from the curve by at most kRearrangeTolerance at midpoints.
inline void refine_inverse(const LevelPiece& piece, CurvePoint a, CurvePoint b, int depth,
                           std::vector<CurvePoint>& out) {
  const double xm = 0.5 * (a.x + b.x);
  if (depth > 90 || xm == a.x || xm == b.x) return;
  const double ym = invert_piece(piece, xm);
  const double chord = a.y + (b.y - a.y) * (xm - a.x) / (b.x - a.x);
  if (std::abs(ym - chord) <= 0.5 * kRearrangeTolerance) return;
  const CurvePoint m{xm, ym};
  refine_inverse(piece, a, m, depth + 1, out);
  out.push_back(m);
  refine_inverse(piece, m, b, depth + 1, out);
}

}  // namespace detail

/// Descending rearrangement f~ = generalized inverse of P, as a nonincreasing
/// piecewise-linear function on [0,1] with f~(x) = sup{y : P(y) > x}.
/// Linear pieces invert exactly; quadratic pieces are inverted by bisection at
/// adaptively inserted breakpoints to within 1e-9.
///
/// Requires P(0) = 1. A piece on which P is constant strictly between 0 and 1
/// would make f~ jump, which the continuous representation cannot hold; such
/// measures are rejected.
inline PiecewisePossibility rearrange(const LevelMeasure& level) {
  if (std::abs(level.total() - 1.0) > LevelMeasure::kTolerance) {
    throw DomainError("rearrange: P(0) = " + std::to_string(level.total()) + ", expected 1");
  }
  using detail::CurvePoint;
  // Collected in increasing y, hence nonincreasing x.
  std::vector<CurvePoint> curve;
  curve.reserve(level.pieces().size() * 2 + 2);
  double last_x = 1.0;
  curve.push_back({1.0, 0.0});
  // Lengths summed in level_measure can miss 1 by rounding.
  auto snap = [](double x) { return x > 1.0 - 1e-12 ? 1.0 : x; };
  for (const auto& piece : level.pieces()) {
    const double s = std::min(snap(piece.start_value()), last_x);
    const double e = std::min(snap(piece.end_value()), s);
    curve.push_back({s, piece.y0});
    if (piece.degree() == 2 && s > e) {
      detail::refine_inverse(piece, {s, piece.y0}, {e, piece.y1}, 0, curve);
    }
    curve.push_back({e, piece.y1});
    last_x = e;
  }
  if (last_x > 0.0) curve.push_back({0.0, 1.0});
  std::reverse(curve.begin(), curve.end());

  // Collapse runs of equal x. At x = 0 the sup convention picks the smallest
  // y; at x = 1 left continuity picks the largest.
  std::vector<Breakpoint> out;
  out.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size();) {
    std::size_t j = i;
    double y_min = curve[i].y;
    double y_max = curve[i].y;
    while (j < curve.size() && curve[j].x == curve[i].x) {
      y_min = std::min(y_min, curve[j].y);
      y_max = std::max(y_max, curve[j].y);
      ++j;
    }
    const double x = curve[i].x;
    double y = curve[i].y;
    if (x == 0.0) {
      y = y_min;
    } else if (x == 1.0) {
      y = y_max;
    } else if (y_max - y_min > detail::kRearrangeTolerance) {
      throw DomainError("rearrange: P is constant at " + std::to_string(x) + " on (" +
                        std::to_string(y_min) + ", " + std::to_string(y_max) +
                        "); the rearrangement would be discontinuous");
    }
    out.push_back({x, y});
    i = j;
  }
  return PiecewisePossibility(std::move(out));
}

/// rearrange(level_measure(f)).
inline PiecewisePossibility descending_rearrangement(const PiecewisePossibility& f) {
  return rearrange(level_measure(f));
}

}  // namespace possibility
