#pragma once

// Small dense two-phase simplex for
//
//   maximize c.x  subject to  A x {<=, >=, =} b,  x >= 0.
//
// Bland's rule throughout, so degenerate problems terminate. Sized for the
// handful of variables the inference solvers need; no sparsity, no scaling.
// An infeasible problem comes back with a Farkas certificate y over the
// original rows: y^T A >= 0, y^T b < 0, y_i >= 0 on <= rows, y_i <= 0 on >=
// rows, free on = rows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "possibility/error.hpp"

namespace possibility::lp {

enum class Relation { less_equal, greater_equal, equal };

struct Row {
  std::vector<double> coefficients;
  Relation relation = Relation::less_equal;
  double bound = 0.0;
};

struct Problem {
  std::size_t n_vars = 0;
  std::vector<Row> rows;
  std::vector<double> objective;  // maximized
};

enum class Status { optimal, infeasible, unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

struct Result {
  Status status = Status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> farkas;   // infeasible only
  double infeasibility = 0.0;   // phase-1 optimum (sum of artificials)
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class Outcome { optimal, unbounded };

// Minimizes cost.x over the columns flagged in `allowed`, starting from the
// feasible basis in `basis`.
inline Outcome minimize(Tableau& t, std::vector<std::size_t>& basis,
                        const std::vector<double>& cost, const std::vector<bool>& allowed,
                        double eps) {
  const std::size_t max_iterations = 50000;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    // Bland: lowest-index column with negative reduced cost.
    std::size_t entering = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j]) continue;
      double reduced = cost[j];
      for (std::size_t r = 0; r < t.rows(); ++r) reduced -= cost[basis[r]] * t.at(r, j);
      if (reduced < -eps) {
        entering = j;
        break;
      }
    }
    if (entering == t.cols()) return Outcome::optimal;

    std::size_t leaving = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, entering);
      if (a <= eps) continue;
      const double ratio = std::max(0.0, t.rhs(r)) / a;
      const bool better = leaving == t.rows() || ratio < best_ratio - eps;
      const bool tie = !better && ratio <= best_ratio + eps && basis[r] < basis[leaving];
      if (better || tie) {
        best_ratio = std::min(ratio, best_ratio);
        leaving = r;
      }
    }
    if (leaving == t.rows()) return Outcome::unbounded;
    t.pivot(leaving, entering);
    basis[leaving] = entering;
  }
  throw MathError("simplex: iteration limit reached");
}

}  // namespace detail

inline Result solve(const Problem& problem, double eps = 1e-10) {
  const std::size_t n = problem.n_vars;
  const std::size_t m = problem.rows.size();
  if (problem.objective.size() != n) throw DomainError("lp: objective size mismatch");

  // Normalize to b >= 0; remember flips to map the certificate back.
  std::vector<Row> rows = problem.rows;
  std::vector<bool> flipped(m, false);
  std::size_t n_slack = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].coefficients.size() != n) throw DomainError("lp: row size mismatch");
    if (rows[i].bound < 0.0) {
      flipped[i] = true;
      for (auto& a : rows[i].coefficients) a = -a;
      rows[i].bound = -rows[i].bound;
      if (rows[i].relation == Relation::less_equal) {
        rows[i].relation = Relation::greater_equal;
      } else if (rows[i].relation == Relation::greater_equal) {
        rows[i].relation = Relation::less_equal;
      }
    }
    if (rows[i].relation != Relation::equal) ++n_slack;
  }

  // Columns: x, slacks, one artificial per row.
  const std::size_t art0 = n + n_slack;
  const std::size_t cols = art0 + m;
  detail::Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0, s = n; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = rows[i].coefficients[j];
    if (rows[i].relation == Relation::less_equal) t.at(i, s++) = 1.0;
    if (rows[i].relation == Relation::greater_equal) t.at(i, s++) = -1.0;
    t.at(i, art0 + i) = 1.0;
    t.rhs(i) = rows[i].bound;
    basis[i] = art0 + i;
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<double> phase1_cost(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1_cost[art0 + i] = 1.0;
  std::vector<bool> all(cols, true);
  detail::minimize(t, basis, phase1_cost, all, eps);

  Result result;
  double w = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= art0) w += t.rhs(r);
  }
  result.infeasibility = w;
  if (w > 1e-9) {
    // Phase-1 duals y' = c_B^T B^{-1}; B^{-1} sits in the artificial columns.
    result.status = Status::infeasible;
    result.farkas.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      double y = 0.0;
      for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] >= art0) y += t.at(r, art0 + i);
      }
      result.farkas[i] = flipped[i] ? y : -y;
    }
    return result;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < art0) continue;
    for (std::size_t j = 0; j < art0; ++j) {
      if (std::abs(t.at(r, j)) > 1e-9) {
        t.pivot(r, j);
        basis[r] = j;
        break;
      }
    }
  }

  // Phase 2.
  std::vector<double> phase2_cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = -problem.objective[j];
  std::vector<bool> structural(cols, false);
  std::fill(structural.begin(), structural.begin() + static_cast<std::ptrdiff_t>(art0), true);
  if (detail::minimize(t, basis, phase2_cost, structural, eps) == detail::Outcome::unbounded) {
    result.status = Status::unbounded;
    return result;
  }

  result.status = Status::optimal;
  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] = std::max(0.0, t.rhs(r));
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += problem.objective[j] * result.x[j];
  return result;
}

}  // namespace possibility::lp
