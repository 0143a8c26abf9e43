#pragma once

// U-uncertainty, the tau-deformed family of information functions and the
// information distances g, G, H, K on discrete distributions. All logarithms
// are natural; values are in nats.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "possibility/discrete.hpp"
#include "possibility/error.hpp"

namespace possibility {

/// A nonnegative information or uncertainty amount in nats.
struct UncertaintyValue {
  double nats = 0.0;

  double bits() const { return nats / std::numbers::ln2; }
  friend auto operator<=>(const UncertaintyValue&, const UncertaintyValue&) = default;
};

/// ln i - ln(i-1), the weight attached to the i-th largest value (i >= 2).
inline double log_step(std::size_t i) {
  return std::log1p(1.0 / static_cast<double>(i - 1));
}

namespace detail {

inline std::vector<double> sorted_descending(std::span<const double> values) {
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

// sum_{i>=2} w(p_i) (ln i - ln(i-1)) over values sorted descending.
template <class Transform>
double nabla_log_sum(std::span<const double> values, Transform w) {
  const auto sorted = sorted_descending(values);
  double total = 0.0;
  for (std::size_t i = 2; i <= sorted.size(); ++i) total += w(sorted[i - 1]) * log_step(i);
  return total;
}

}  // namespace detail

/// Monotone onto reparameterization of [0,1], stored as a piecewise-linear
/// table with first point (0,0) and last point (1,1).
class Tau {
 public:
  struct Point {
    double t;
    double value;
  };

  explicit Tau(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DomainError("tau: need at least two breakpoints");
    if (points_.front().t != 0.0 || points_.front().value != 0.0) {
      throw DomainError("tau: first breakpoint must be (0,0)");
    }
    if (points_.back().t != 1.0 || points_.back().value != 1.0) {
      throw DomainError("tau: last breakpoint must be (1,1)");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (!(points_[i].t > points_[i - 1].t)) {
        throw DomainError("tau: t-coordinates must be strictly increasing (index " +
                          std::to_string(i) + ")");
      }
      if (!(points_[i].value >= points_[i - 1].value)) {
        throw DomainError("tau: values must be nondecreasing (index " + std::to_string(i) + ")");
      }
    }
  }

  static Tau identity() { return Tau({{0.0, 0.0}, {1.0, 1.0}}); }

  /// Tabulates a monotone map on a uniform grid of `n_points` breakpoints.
  template <class Fn>
  static Tau tabulate(Fn&& fn, std::size_t n_points) {
    if (n_points < 2) throw DomainError("tau: need at least two breakpoints");
    std::vector<Point> pts;
    pts.reserve(n_points);
    const double steps = static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
      const double t = static_cast<double>(i) / steps;
      pts.push_back({t, fn(t)});
    }
    pts.front() = {0.0, 0.0};
    pts.back() = {1.0, 1.0};
    return Tau(std::move(pts));
  }

  std::span<const Point> points() const noexcept { return points_; }

  double operator()(double t) const {
    if (t <= 0.0) return points_.front().value;
    if (t >= 1.0) return points_.back().value;
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double x, const Point& p) { return x < p.t; });
    const Point& hi = *it;
    const Point& lo = *(it - 1);
    return lo.value + (t - lo.t) * (hi.value - lo.value) / (hi.t - lo.t);
  }

 private:
  std::vector<Point> points_;
};

/// U-uncertainty of raw values: sum_{i=2}^{n} p_i (ln i - ln(i-1)), p sorted
/// descending. Subnormal inputs are allowed.
inline UncertaintyValue u_uncertainty(std::span<const double> values) {
  return {detail::nabla_log_sum(values, [](double p) { return p; })};
}

inline UncertaintyValue u_uncertainty(const DiscreteDistribution& d) {
  return u_uncertainty(d.values());
}

inline UncertaintyValue u_uncertainty(const JointDistribution& j) {
  return u_uncertainty(j.values());
}

inline UncertaintyValue info_tau(std::span<const double> values, const Tau& tau) {
  return {detail::nabla_log_sum(values, [&tau](double p) { return tau(p); })};
}

/// Member of the information family with deformation tau; tau = identity gives U.
inline UncertaintyValue info_tau(const DiscreteDistribution& d, const Tau& tau) {
  return info_tau(d.values(), tau);
}

inline UncertaintyValue info_tau(const JointDistribution& j, const Tau& tau) {
  return info_tau(j.values(), tau);
}

/// Information function plugged into the distances. Default is U.
struct UMeasure {
  double operator()(const DiscreteDistribution& d) const { return u_uncertainty(d).nats; }
};

/// tau-deformed measure. Metric properties of the resulting distances are not
/// guaranteed for non-identity tau.
struct TauMeasure {
  std::reference_wrapper<const Tau> tau;
  double operator()(const DiscreteDistribution& d) const { return info_tau(d, tau.get()).nats; }
};

/// g(lower, upper) = U(upper) - U(lower), defined when lower <= upper pointwise.
template <class Measure = UMeasure>
double g_distance(const DiscreteDistribution& lower, const DiscreteDistribution& upper,
                  Measure measure = {}) {
  if (!lower.same_labels(upper)) throw DomainError("g: operands have different label lists");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      throw DomainError("g: lower exceeds upper at label '" + lower.labels()[i] + "' (" +
                        std::to_string(lower[i]) + " > " + std::to_string(upper[i]) + ")");
    }
  }
  return measure(upper) - measure(lower);
}

/// G(a,b) = g(a, a v b) + g(b, a v b). A metric on normalized distributions.
template <class Measure = UMeasure>
double big_g(const DiscreteDistribution& a, const DiscreteDistribution& b, Measure measure = {}) {
  const auto top = join(a, b);
  const double u_top = measure(top);
  return (u_top - measure(a)) + (u_top - measure(b));
}

/// H(a,b) = g(a ^ b, a) + g(a ^ b, b). Additive over min-products.
template <class Measure = UMeasure>
double big_h(const DiscreteDistribution& a, const DiscreteDistribution& b, Measure measure = {}) {
  const auto bottom = meet(a, b);
  const double u_bottom = measure(bottom);
  return (measure(a) - u_bottom) + (measure(b) - u_bottom);
}

/// K(a,b) = max(g(a, a v b), g(b, a v b)). A metric on normalized distributions.
template <class Measure = UMeasure>
double big_k(const DiscreteDistribution& a, const DiscreteDistribution& b, Measure measure = {}) {
  const auto top = join(a, b);
  const double u_top = measure(top);
  return std::max(u_top - measure(a), u_top - measure(b));
}

enum class Metric { g, G, H, K };

inline Metric parse_metric(std::string_view name) {
  if (name == "g") return Metric::g;
  if (name == "G") return Metric::G;
  if (name == "H") return Metric::H;
  if (name == "K") return Metric::K;
  throw DomainError("unknown metric '" + std::string(name) + "' (expected g, G, H or K)");
}

inline const char* to_string(Metric m) {
  switch (m) {
    case Metric::g: return "g";
    case Metric::G: return "G";
    case Metric::H: return "H";
    case Metric::K: return "K";
  }
  return "?";
}

/// For Metric::g the first argument is the lower distribution.
template <class Measure = UMeasure>
double distance(Metric m, const DiscreteDistribution& a, const DiscreteDistribution& b,
                Measure measure = {}) {
  switch (m) {
    case Metric::g: return g_distance(a, b, measure);
    case Metric::G: return big_g(a, b, measure);
    case Metric::H: return big_h(a, b, measure);
    case Metric::K: return big_k(a, b, measure);
  }
  return 0.0;
}

/// The all-ones distribution of size n, carrying U = ln n.
inline DiscreteDistribution max_uncertain(std::size_t n) {
  if (n == 0) throw DomainError("max_uncertain: n must be at least 1");
  return DiscreteDistribution::from_values(std::vector<double>(n, 1.0));
}

inline DiscreteDistribution max_uncertain(const std::vector<std::string>& labels) {
  if (labels.empty()) throw DomainError("max_uncertain: n must be at least 1");
  return DiscreteDistribution(labels, std::vector<double>(labels.size(), 1.0));
}

}  // namespace possibility
