#pragma once

// Discrete possibility distributions on finite labelled domains, together
// with the structural operations used by the information measures: min-product
// joints, max-marginals, zero extension, permutation and the pointwise lattice.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "possibility/error.hpp"

namespace possibility {

/// Absolute tolerance on max(values) = 1.
inline constexpr double kNormalizationTolerance = 1e-9;

namespace detail {

inline bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

inline void require_unit_values(std::span<const double> values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!in_unit_interval(values[i])) {
      throw DomainError(std::string(what) + ": value " + std::to_string(values[i]) +
                        " at index " + std::to_string(i) + " is outside [0,1]");
    }
  }
}

inline void require_distinct(const std::vector<std::string>& labels, std::string_view what) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(labels.size());
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw DomainError(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

inline double max_of(std::span<const double> values) {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

inline bool is_normalized_max(double m) {
  return std::abs(m - 1.0) <= kNormalizationTolerance;
}

inline std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  return labels;
}

}  // namespace detail

/// A possibility assignment over an ordered list of distinct labels.
///
/// Values lie in [0,1]. Subnormal assignments (max < 1) are valid values; they
/// arise from lattice meets and are needed by the H distance. The
/// `normalized()` flag records whether the maximum equals 1 within
/// kNormalizationTolerance.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<std::string> labels, std::vector<double> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.size() != values_.size()) {
      throw DomainError("distribution: " + std::to_string(labels_.size()) + " labels but " +
                        std::to_string(values_.size()) + " values");
    }
    if (labels_.empty()) throw DomainError("distribution: domain must be nonempty");
    detail::require_distinct(labels_, "distribution");
    detail::require_unit_values(values_, "distribution");
    normalized_ = detail::is_normalized_max(detail::max_of(values_));
  }

  /// Labels x1..xn.
  static DiscreteDistribution from_values(std::vector<double> values) {
    auto labels = detail::index_labels(values.size());
    return DiscreteDistribution(std::move(labels), std::move(values));
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool normalized() const noexcept { return normalized_; }
  double max_value() const { return detail::max_of(values_); }
  double operator[](std::size_t i) const { return values_[i]; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  double at(std::string_view label) const {
    auto i = index_of(label);
    if (!i) throw DomainError("unknown label '" + std::string(label) + "'");
    return values_[*i];
  }

  bool same_labels(const DiscreteDistribution& other) const { return labels_ == other.labels_; }

  friend bool operator==(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    return a.labels_ == b.labels_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  bool normalized_ = false;
};

/// Possibility assignment on a product grid rows x cols, stored row-major.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                    std::vector<double> values)
      : rows_(std::move(row_labels)), cols_(std::move(col_labels)), values_(std::move(values)) {
    if (rows_.empty() || cols_.empty()) throw DomainError("joint: both factors must be nonempty");
    if (values_.size() != rows_.size() * cols_.size()) {
      throw DomainError("joint: expected " + std::to_string(rows_.size() * cols_.size()) +
                        " entries, got " + std::to_string(values_.size()));
    }
    detail::require_distinct(rows_, "joint rows");
    detail::require_distinct(cols_, "joint cols");
    detail::require_unit_values(values_, "joint");
    normalized_ = detail::is_normalized_max(detail::max_of(values_));
  }

  const std::vector<std::string>& row_labels() const noexcept { return rows_; }
  const std::vector<std::string>& col_labels() const noexcept { return cols_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  bool normalized() const noexcept { return normalized_; }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_.size() + c]; }

  /// Same values over pair labels "(row,col)", row-major.
  DiscreteDistribution flatten() const {
    std::vector<std::string> labels;
    labels.reserve(values_.size());
    for (const auto& r : rows_) {
      for (const auto& c : cols_) labels.push_back("(" + r + "," + c + ")");
    }
    return DiscreteDistribution(std::move(labels), values_);
  }

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> cols_;
  std::vector<double> values_;
  bool normalized_ = false;
};

/// Bijection on {0..n-1}; `mapping()[i]` is the source index read into position i.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> hit(mapping_.size(), false);
    for (auto m : mapping_) {
      if (m >= mapping_.size() || hit[m]) {
        throw DomainError("permutation: mapping is not a bijection on {0.." +
                          std::to_string(mapping_.size()) + ")");
      }
      hit[m] = true;
    }
  }

  /// From the conventional 1-based index list, e.g. (3,1,2).
  static Permutation from_one_based(std::span<const std::size_t> one_based) {
    std::vector<std::size_t> m;
    m.reserve(one_based.size());
    for (auto i : one_based) {
      if (i == 0) throw DomainError("permutation: 1-based index 0");
      m.push_back(i - 1);
    }
    return Permutation(std::move(m));
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m));
  }

  std::size_t size() const noexcept { return mapping_.size(); }
  std::span<const std::size_t> mapping() const noexcept { return mapping_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = i;
    return Permutation(std::move(inv));
  }

 private:
  std::vector<std::size_t> mapping_;
};

/// max of the distribution over a nonempty subset of its labels.
inline double possibility_of_subset(const DiscreteDistribution& d,
                                    std::span<const std::string> subset) {
  if (subset.empty()) throw DomainError("possibility of subset: subset is empty");
  double m = 0.0;
  for (const auto& label : subset) m = std::max(m, d.at(label));
  return m;
}

/// (x,y) -> min(d1(x), d2(y)).
inline JointDistribution min_product(const DiscreteDistribution& d1,
                                     const DiscreteDistribution& d2) {
  std::vector<double> values;
  values.reserve(d1.size() * d2.size());
  for (double a : d1.values()) {
    for (double b : d2.values()) values.push_back(std::min(a, b));
  }
  return JointDistribution(d1.labels(), d2.labels(), std::move(values));
}

/// Row-wise and column-wise maxima.
inline std::pair<DiscreteDistribution, DiscreteDistribution> marginals(const JointDistribution& j) {
  std::vector<double> row_max(j.rows(), 0.0);
  std::vector<double> col_max(j.cols(), 0.0);
  for (std::size_t r = 0; r < j.rows(); ++r) {
    for (std::size_t c = 0; c < j.cols(); ++c) {
      const double v = j(r, c);
      row_max[r] = std::max(row_max[r], v);
      col_max[c] = std::max(col_max[c], v);
    }
  }
  return {DiscreteDistribution(j.row_labels(), std::move(row_max)),
          DiscreteDistribution(j.col_labels(), std::move(col_max))};
}

/// Zero extension onto a superset of labels, in the superset's order.
inline DiscreteDistribution extend(const DiscreteDistribution& d,
                                   const std::vector<std::string>& superset_labels) {
  std::vector<double> values(superset_labels.size(), 0.0);
  std::vector<bool> covered(d.size(), false);
  for (std::size_t i = 0; i < superset_labels.size(); ++i) {
    if (auto k = d.index_of(superset_labels[i])) {
      values[i] = d[*k];
      covered[*k] = true;
    }
  }
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!covered[k]) {
      throw DomainError("extend: superset is missing label '" + d.labels()[k] + "'");
    }
  }
  return DiscreteDistribution(superset_labels, std::move(values));
}

/// Restriction to a subset of labels, in the order given.
inline DiscreteDistribution restrict_to(const DiscreteDistribution& d,
                                        const std::vector<std::string>& labels) {
  std::vector<double> values;
  values.reserve(labels.size());
  for (const auto& l : labels) values.push_back(d.at(l));
  return DiscreteDistribution(labels, std::move(values));
}

/// Position i receives the value at position s(i); labels stay in place.
inline DiscreteDistribution permute(const DiscreteDistribution& d, const Permutation& s) {
  if (s.size() != d.size()) {
    throw DomainError("permute: permutation of size " + std::to_string(s.size()) +
                      " applied to distribution of size " + std::to_string(d.size()));
  }
  std::vector<double> values(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) values[i] = d[s.mapping()[i]];
  return DiscreteDistribution(d.labels(), std::move(values));
}

namespace detail {

template <class Op>
DiscreteDistribution pointwise(const DiscreteDistribution& a, const DiscreteDistribution& b,
                               Op op, std::string_view what) {
  if (!a.same_labels(b)) {
    throw DomainError(std::string(what) + ": operands have different label lists");
  }
  std::vector<double> values(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) values[i] = op(a[i], b[i]);
  return DiscreteDistribution(a.labels(), std::move(values));
}

}  // namespace detail

/// Pointwise min. May be subnormal.
inline DiscreteDistribution meet(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  return detail::pointwise(a, b, [](double x, double y) { return std::min(x, y); }, "meet");
}

/// Pointwise max.
inline DiscreteDistribution join(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  return detail::pointwise(a, b, [](double x, double y) { return std::max(x, y); }, "join");
}

}  // namespace possibility
