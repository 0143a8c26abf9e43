#pragma once

// Discretization of continuous distributions and the convergence
// ln n - U(p_n) -> I(f) of discrete information to continuous information.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "possibility/discrete.hpp"
#include "possibility/error.hpp"
#include "possibility/measures.hpp"
#include "possibility/piecewise.hpp"

namespace possibility {

/// Where the n samples of [0,1] are taken.
enum class SampleGrid {
  left,   // (i-1)/n, i = 1..n; f = 1 - x gives {1, (n-1)/n, ..., 1/n}
  right,  // i/n,     i = 1..n
};

/// f sampled at n grid points. Samples are not renormalized.
inline DiscreteDistribution discretize(const PiecewisePossibility& f, std::size_t n,
                                       SampleGrid grid = SampleGrid::left) {
  if (n == 0) throw DomainError("discretize: n must be at least 1");
  std::vector<double> values(n);
  const double offset = grid == SampleGrid::left ? 0.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = f((static_cast<double>(i) + offset) / static_cast<double>(n));
  }
  return DiscreteDistribution::from_values(std::move(values));
}

/// ln n - U(discretize(f, n)).
inline double approx_info(const PiecewisePossibility& f, std::size_t n,
                          SampleGrid grid = SampleGrid::left) {
  const auto d = discretize(f, n, grid);
  return std::log(static_cast<double>(n)) - u_uncertainty(d).nats;
}

struct ConvergenceEntry {
  std::size_t n;
  double u_value;
  double approx_info;
};

struct ConvergenceSeries {
  std::vector<ConvergenceEntry> entries;
};

/// (n, U(p_n), ln n - U(p_n)) for each n, in the order given.
inline ConvergenceSeries convergence_series(const PiecewisePossibility& f,
                                            std::span<const std::size_t> n_list,
                                            SampleGrid grid = SampleGrid::left) {
  if (n_list.empty()) throw DomainError("convergence_series: empty sample-count list");
  ConvergenceSeries series;
  series.entries.reserve(n_list.size());
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (k > 0 && n_list[k] <= n_list[k - 1]) {
      throw DomainError("convergence_series: sample counts must be strictly increasing");
    }
    const std::size_t n = n_list[k];
    const double u = u_uncertainty(discretize(f, n, grid)).nats;
    series.entries.push_back({n, u, std::log(static_cast<double>(n)) - u});
  }
  return series;
}

}  // namespace possibility
