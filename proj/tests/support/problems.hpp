#pragma once

// Random feasible inference problems. Every problem is built around an anchor
// point on the 0.1 grid with one coordinate equal to 1, and every constraint
// is satisfied by the anchor, so the grid oracles always see a feasible point.

#include <cstddef>
#include <vector>

#include "possibility/inference.hpp"
#include "support/generators.hpp"

namespace testgen {

struct RandomProblem {
  std::vector<double> anchor;
  std::vector<possibility::LinearConstraint> constraints;
};

inline RandomProblem feasible_constraints(Rng& rng, std::size_t n, std::size_t max_constraints = 3) {
  using possibility::Relation;
  RandomProblem out;
  out.anchor.resize(n);
  for (auto& a : out.anchor) a = static_cast<double>(uniform_size(rng, 0, 10)) / 10.0;
  out.anchor[uniform_size(rng, 0, n - 1)] = 1.0;

  const std::size_t m = uniform_size(rng, 1, max_constraints);
  bool have_equality = false;
  for (std::size_t k = 0; k < m; ++k) {
    possibility::LinearConstraint c;
    c.coefficients.assign(n, 0.0);
    while (std::all_of(c.coefficients.begin(), c.coefficients.end(), [](double a) { return a == 0.0; })) {
      for (auto& a : c.coefficients) a = static_cast<double>(uniform_size(rng, 0, 2)) - 1.0;
    }
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) lhs += c.coefficients[i] * out.anchor[i];
    const double slack = static_cast<double>(uniform_size(rng, 0, 3)) / 10.0;
    const std::size_t kind = uniform_size(rng, 0, have_equality ? 1 : 2);
    if (kind == 0) {
      c.relation = Relation::less_equal;
      c.bound = lhs + slack;
    } else if (kind == 1) {
      c.relation = Relation::greater_equal;
      c.bound = lhs - slack;
    } else {
      c.relation = Relation::equal;
      c.bound = lhs;
      have_equality = true;
    }
    c.bound = std::round(c.bound * 10.0) / 10.0;
    out.constraints.push_back(std::move(c));
  }
  return out;
}

}  // namespace testgen
