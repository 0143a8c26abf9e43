#pragma once

// Maximum-uncertainty inference: choose a posterior possibility distribution
// subject to linear constraints, either with maximal U or at minimal G/K
// distance from a prior. With the all-ones prior and metric G the two rules
// coincide, since G(1, v) = ln n - U(v).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "possibility/discrete.hpp"
#include "possibility/error.hpp"
#include "possibility/measures.hpp"
#include "possibility/simplex.hpp"

namespace possibility {

using lp::Relation;

struct LinearConstraint {
  std::vector<double> coefficients;  // one per label
  Relation relation = Relation::less_equal;
  double bound = 0.0;
};

struct MaxU {};

struct MinDistance {
  DiscreteDistribution prior;
  Metric metric = Metric::G;
};

using Objective = std::variant<MaxU, MinDistance>;

class InferenceProblem {
 public:
  InferenceProblem(std::vector<std::string> labels, std::vector<LinearConstraint> constraints,
                   Objective objective, bool require_normalized = true)
      : labels_(std::move(labels)),
        constraints_(std::move(constraints)),
        objective_(std::move(objective)),
        require_normalized_(require_normalized) {
    if (labels_.empty()) throw DomainError("inference problem: no labels");
    detail::require_distinct(labels_, "inference problem");
    for (std::size_t k = 0; k < constraints_.size(); ++k) {
      const auto& c = constraints_[k];
      const std::string where = "constraint " + std::to_string(k);
      if (c.coefficients.size() != labels_.size()) {
        throw DomainError(where + ": expected " + std::to_string(labels_.size()) +
                          " coefficients, got " + std::to_string(c.coefficients.size()));
      }
      if (std::all_of(c.coefficients.begin(), c.coefficients.end(),
                      [](double a) { return a == 0.0; })) {
        throw DomainError(where + ": all coefficients are zero");
      }
      if (!std::isfinite(c.bound) ||
          !std::all_of(c.coefficients.begin(), c.coefficients.end(),
                       [](double a) { return std::isfinite(a); })) {
        throw DomainError(where + ": non-finite number");
      }
    }
    if (const auto* md = std::get_if<MinDistance>(&objective_)) {
      if (md->prior.labels() != labels_) {
        throw DomainError("inference problem: prior labels differ from problem labels");
      }
      if (md->metric != Metric::G && md->metric != Metric::K) {
        throw DomainError(std::string("inference problem: metric ") + to_string(md->metric) +
                          " is not a metric; use G or K");
      }
    }
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  const Objective& objective() const noexcept { return objective_; }
  bool require_normalized() const noexcept { return require_normalized_; }

  /// All constraints within `tolerance`, values in [0,1], and max = 1 when
  /// normalization is required.
  bool admits(std::span<const double> v, double tolerance = 1e-7) const {
    if (v.size() != size()) return false;
    for (double x : v) {
      if (x < -tolerance || x > 1.0 + tolerance) return false;
    }
    for (const auto& c : constraints_) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) lhs += c.coefficients[i] * v[i];
      switch (c.relation) {
        case Relation::less_equal:
          if (lhs > c.bound + tolerance) return false;
          break;
        case Relation::greater_equal:
          if (lhs < c.bound - tolerance) return false;
          break;
        case Relation::equal:
          if (std::abs(lhs - c.bound) > tolerance) return false;
          break;
      }
    }
    if (require_normalized_ && std::abs(*std::max_element(v.begin(), v.end()) - 1.0) > tolerance) {
      return false;
    }
    return true;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<LinearConstraint> constraints_;
  Objective objective_;
  bool require_normalized_ = true;
};

/// LP outcome for one fixed descending ordering of the values.
struct OrderingStatus {
  std::vector<std::size_t> ordering;  // ordering[0] holds the largest value
  lp::Status status = lp::Status::infeasible;
  double objective = 0.0;
};

struct SearchSummary {
  std::size_t starts = 0;
  std::size_t evaluations = 0;
  double final_step = 0.0;
};

struct InferenceSolution {
  DiscreteDistribution distribution;
  double objective_value = 0.0;  // U for MaxU, distance for MinDistance
  std::variant<std::vector<OrderingStatus>, SearchSummary> certificate;
};

/// Constraint set is empty. `farkas` certifies it over the rows
/// [user constraints..., v_i <= 1 for each i] when the linear part alone is
/// infeasible; it is empty when only the max = 1 requirement fails.
class InfeasibleError : public MathError {
 public:
  InfeasibleError(const std::string& what, std::vector<double> farkas)
      : MathError(what), farkas_(std::move(farkas)) {}
  const std::vector<double>& farkas() const noexcept { return farkas_; }

 private:
  std::vector<double> farkas_;
};

inline constexpr std::size_t kMaxUSizeLimit = 8;
inline constexpr std::size_t kMinDistanceSizeLimit = 6;

namespace detail {

inline constexpr double kTieTolerance = 1e-9;
// Allowed loss of U while refining the tie-break among optimal points.
inline constexpr double kObjectiveSlack = 1e-12;

/// User constraints followed by the box rows v_i <= 1.
inline std::vector<lp::Row> base_rows(const InferenceProblem& problem) {
  std::vector<lp::Row> rows;
  for (const auto& c : problem.constraints()) rows.push_back({c.coefficients, c.relation, c.bound});
  for (std::size_t i = 0; i < problem.size(); ++i) {
    lp::Row r{std::vector<double>(problem.size(), 0.0), Relation::less_equal, 1.0};
    r.coefficients[i] = 1.0;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline lp::Row unit_row(std::size_t n, std::size_t i, Relation rel, double bound) {
  lp::Row r{std::vector<double>(n, 0.0), rel, bound};
  r.coefficients[i] = 1.0;
  return r;
}

inline std::string format_vector(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

/// Throws InfeasibleError unless the problem has a feasible point.
inline void require_feasible(const InferenceProblem& problem) {
  const std::size_t n = problem.size();
  lp::Problem base{n, base_rows(problem), std::vector<double>(n, 0.0)};
  const auto r = lp::solve(base);
  if (r.status == lp::Status::infeasible) {
    throw InfeasibleError("infeasible constraints: Farkas multipliers over [constraints, v <= 1] = " +
                              format_vector(r.farkas),
                          r.farkas);
  }
  if (!problem.require_normalized()) return;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lp::Problem p = base;
    p.objective.assign(n, 0.0);
    p.objective[i] = 1.0;
    const auto ri = lp::solve(p);
    if (ri.status == lp::Status::optimal) best = std::max(best, ri.objective);
  }
  if (best < 1.0 - 1e-9) {
    throw InfeasibleError("infeasible constraints: no admissible point attains possibility 1 "
                          "(largest attainable value " + std::to_string(best) + ")",
                          {});
  }
}

inline std::vector<double> clamp_unit(std::vector<double> v) {
  for (auto& x : v) x = std::clamp(x, 0.0, 1.0);
  return v;
}

inline bool lex_greater(std::span<const double> a, std::span<const double> b) {
  if (b.empty()) return true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + kTieTolerance) return true;
    if (a[i] < b[i] - kTieTolerance) return false;
  }
  return false;
}

// LP for one ordering: chain v_{s0} >= v_{s1} >= ..., plus v_{s0} = 1 when
// normalization is required; objective sum_{i>=2} (ln i - ln(i-1)) v_{s(i)}.
inline lp::Problem ordering_lp(const InferenceProblem& problem,
                               std::span<const std::size_t> ordering) {
  const std::size_t n = problem.size();
  lp::Problem p{n, base_rows(problem), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lp::Row r{std::vector<double>(n, 0.0), Relation::greater_equal, 0.0};
    r.coefficients[ordering[i]] = 1.0;
    r.coefficients[ordering[i + 1]] = -1.0;
    p.rows.push_back(std::move(r));
  }
  if (problem.require_normalized()) p.rows.push_back(unit_row(n, ordering[0], Relation::equal, 1.0));
  for (std::size_t i = 1; i < n; ++i) p.objective[ordering[i]] = log_step(i + 1);
  return p;
}

}  // namespace detail

/// Maximizes U over the admissible set.
///
/// Once the descending order of the values is fixed, U is linear, so every
/// ordering gives a small LP; the best over all n! orderings is the optimum.
/// Among optimal points the lexicographically largest value vector is returned.
inline InferenceSolution solve_max_u(const InferenceProblem& problem) {
  if (!std::holds_alternative<MaxU>(problem.objective())) {
    throw DomainError("solve_max_u: problem objective is not max-U");
  }
  const std::size_t n = problem.size();
  if (n > kMaxUSizeLimit) {
    throw DomainError("solve_max_u: " + std::to_string(n) + " labels exceeds the limit of " +
                      std::to_string(kMaxUSizeLimit));
  }
  detail::require_feasible(problem);

  std::vector<OrderingStatus> statuses;
  std::vector<std::size_t> ordering(n);
  std::iota(ordering.begin(), ordering.end(), std::size_t{0});
  double best = -1.0;
  do {
    const auto r = lp::solve(detail::ordering_lp(problem, ordering));
    statuses.push_back({ordering, r.status, r.objective});
    if (r.status == lp::Status::optimal) best = std::max(best, r.objective);
  } while (std::next_permutation(ordering.begin(), ordering.end()));
  if (best < 0.0) throw InfeasibleError("solve_max_u: every ordering is infeasible", {});

  // Lexicographic refinement over the union of optimal faces.
  std::vector<const OrderingStatus*> candidates;
  for (const auto& s : statuses) {
    if (s.status == lp::Status::optimal && s.objective >= best - detail::kTieTolerance) {
      candidates.push_back(&s);
    }
  }
  std::vector<double> lex(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double best_j = -1.0;
    std::vector<std::pair<const OrderingStatus*, std::vector<double>>> results;
    for (const auto* cand : candidates) {
      auto p = detail::ordering_lp(problem, cand->ordering);
      p.rows.push_back({p.objective, Relation::greater_equal, best - detail::kObjectiveSlack});
      for (std::size_t k = 0; k < j; ++k) {
        p.rows.push_back(detail::unit_row(n, k, Relation::greater_equal, lex[k] - detail::kTieTolerance));
      }
      p.objective.assign(n, 0.0);
      p.objective[j] = 1.0;
      auto r = lp::solve(p);
      if (r.status != lp::Status::optimal) continue;
      best_j = std::max(best_j, r.objective);
      results.emplace_back(cand, std::move(r.x));
    }
    lex[j] = best_j;
    candidates.clear();
    for (auto& [cand, x] : results) {
      if (x[j] >= best_j - detail::kTieTolerance) candidates.push_back(cand);
    }
  }

  // The lexicographic maximum is the vector of per-coordinate optima.
  DiscreteDistribution d(problem.labels(), detail::clamp_unit(lex));
  const double u = u_uncertainty(d).nats;
  return {std::move(d), u, std::move(statuses)};
}

namespace detail {

// G or K between raw value vectors on the same domain.
inline double raw_distance(Metric metric, std::span<const double> a, std::span<const double> b) {
  std::vector<double> top(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) top[i] = std::max(a[i], b[i]);
  const double ut = u_uncertainty(top).nats;
  const double ga = ut - u_uncertainty(a).nats;
  const double gb = ut - u_uncertainty(b).nats;
  return metric == Metric::K ? std::max(ga, gb) : ga + gb;
}

// Orthonormal basis of the null space of the rows in `eq` (Gram-Schmidt).
inline std::vector<std::vector<double>> null_space(const std::vector<std::vector<double>>& eq,
                                                   std::size_t n) {
  std::vector<std::vector<double>> row_basis;
  auto orthogonalize = [](std::vector<double> v, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double dot = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
      }
    }
    return v;
  };
  auto norm = [](const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  };
  for (const auto& r : eq) {
    auto v = orthogonalize(r, row_basis);
    const double nv = norm(v);
    if (nv > 1e-10) {
      for (auto& x : v) x /= nv;
      row_basis.push_back(std::move(v));
    }
  }
  std::vector<std::vector<double>> null_basis;
  for (std::size_t i = 0; i < n && row_basis.size() + null_basis.size() < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    auto v = orthogonalize(orthogonalize(e, row_basis), null_basis);
    const double nv = norm(v);
    if (nv > 1e-8) {
      for (auto& x : v) x /= nv;
      null_basis.push_back(std::move(v));
    }
  }
  return null_basis;
}

// Feasible directions: coordinate and pairwise directions projected onto the
// null space of the equality rows, in both signs.
inline std::vector<std::vector<double>> search_directions(
    const std::vector<std::vector<double>>& null_basis, std::size_t n) {
  std::vector<std::vector<double>> dirs;
  auto project = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (const auto& b : null_basis) {
      const double dot = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) out[i] += dot * b[i];
    }
    return out;
  };
  auto add = [&](const std::vector<double>& raw) {
    auto d = project(raw);
    double nd = std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
    if (nd < 1e-10) return;
    for (auto& x : d) x /= nd;
    for (const auto& existing : dirs) {
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(existing[i] - d[i]));
      if (diff < 1e-12) return;
    }
    dirs.push_back(d);
    for (auto& x : d) x = -x;
    dirs.push_back(std::move(d));
  };
  for (const auto& b : null_basis) add(b);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    add(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[i] = 1.0;
      e[j] = 1.0;
      add(e);
      e[j] = -1.0;
      add(e);
    }
  }
  return dirs;
}

struct Polytope {
  std::vector<lp::Row> rows;  // includes box rows and any fixed coordinate
};

// Largest t >= 0 with v + t d inside every inequality row.
inline double max_step(const Polytope& poly, std::span<const double> v, std::span<const double> d) {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& r : poly.rows) {
    if (r.relation == Relation::equal) continue;
    double ad = 0.0;
    double av = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      ad += r.coefficients[i] * d[i];
      av += r.coefficients[i] * v[i];
    }
    const double sign = r.relation == Relation::less_equal ? 1.0 : -1.0;
    ad *= sign;
    const double slack = sign * (r.bound - av);
    if (ad > 1e-14) t = std::min(t, std::max(0.0, slack) / ad);
  }
  // Nonnegativity.
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (d[i] < -1e-14) t = std::min(t, std::max(0.0, v[i]) / -d[i]);
  }
  return t;
}

}  // namespace detail

/// Minimizes the G or K distance to the prior over the admissible set.
///
/// Multi-start pattern search over feasible directions. Normalization is
/// handled by enumerating the coordinate that attains 1. Starts: the L1
/// projection of the prior, the max-U solution, and up to 64 polytope
/// vertices found with seeded random LP objectives. Each start is refined
/// until the step falls below 1e-6. The result is locally optimal; global
/// optimality is checked against the grid oracle in tests, not here.
inline InferenceSolution solve_min_distance(const InferenceProblem& problem) {
  const auto* md = std::get_if<MinDistance>(&problem.objective());
  if (md == nullptr) throw DomainError("solve_min_distance: problem objective is not min-distance");
  const std::size_t n = problem.size();
  if (n > kMinDistanceSizeLimit) {
    throw DomainError("solve_min_distance: " + std::to_string(n) + " labels exceeds the limit of " +
                      std::to_string(kMinDistanceSizeLimit));
  }
  detail::require_feasible(problem);

  const auto prior = std::vector<double>(md->prior.values().begin(), md->prior.values().end());
  const Metric metric = md->metric;
  SearchSummary summary;
  auto objective = [&](std::span<const double> v) {
    ++summary.evaluations;
    return detail::raw_distance(metric, prior, v);
  };

  if (problem.admits(prior, 1e-12)) {
    summary.starts = 1;
    return {md->prior, 0.0, summary};
  }

  // Global max-U point: exact, and the right answer for the all-ones prior.
  std::optional<std::vector<double>> max_u_point;
  if (n <= kMaxUSizeLimit) {
    InferenceProblem as_max_u(problem.labels(), problem.constraints(), MaxU{},
                              problem.require_normalized());
    auto s = solve_max_u(as_max_u);
    max_u_point.emplace(s.distribution.values().begin(), s.distribution.values().end());
  }

  std::vector<detail::Polytope> polytopes;
  const auto base = detail::base_rows(problem);
  if (problem.require_normalized()) {
    for (std::size_t j = 0; j < n; ++j) {
      detail::Polytope p{base};
      p.rows.push_back(detail::unit_row(n, j, Relation::equal, 1.0));
      if (lp::solve({n, p.rows, std::vector<double>(n, 0.0)}).status == lp::Status::optimal) {
        polytopes.push_back(std::move(p));
      }
    }
  } else {
    polytopes.push_back({base});
  }

  std::mt19937_64 rng(0x5eed1234abcdULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const std::size_t vertex_budget = 64;
  const std::size_t per_polytope = (vertex_budget + polytopes.size() - 1) / polytopes.size();

  std::vector<double> best_point;
  double best_value = std::numeric_limits<double>::infinity();
  double final_step = 0.0;

  for (const auto& poly : polytopes) {
    std::vector<std::vector<double>> starts;

    // L1 projection of the prior: v - u + w = prior, minimize sum(u + w).
    {
      lp::Problem proj{3 * n, {}, std::vector<double>(3 * n, 0.0)};
      for (const auto& r : poly.rows) {
        auto coeffs = r.coefficients;
        coeffs.resize(3 * n, 0.0);
        proj.rows.push_back({std::move(coeffs), r.relation, r.bound});
      }
      for (std::size_t i = 0; i < n; ++i) {
        lp::Row r{std::vector<double>(3 * n, 0.0), Relation::equal, prior[i]};
        r.coefficients[i] = 1.0;
        r.coefficients[n + i] = -1.0;
        r.coefficients[2 * n + i] = 1.0;
        proj.rows.push_back(std::move(r));
        proj.objective[n + i] = -1.0;
        proj.objective[2 * n + i] = -1.0;
      }
      const auto r = lp::solve(proj);
      if (r.status == lp::Status::optimal) starts.emplace_back(r.x.begin(), r.x.begin() + n);
    }

    if (max_u_point) {
      bool inside = true;
      for (const auto& r : poly.rows) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) lhs += r.coefficients[i] * (*max_u_point)[i];
        if ((r.relation == Relation::less_equal && lhs > r.bound + 1e-9) ||
            (r.relation == Relation::greater_equal && lhs < r.bound - 1e-9) ||
            (r.relation == Relation::equal && std::abs(lhs - r.bound) > 1e-9)) {
          inside = false;
        }
      }
      if (inside) starts.push_back(*max_u_point);
    }

    for (std::size_t k = 0; k < per_polytope; ++k) {
      lp::Problem p{n, poly.rows, std::vector<double>(n)};
      for (auto& c : p.objective) c = unif(rng);
      const auto r = lp::solve(p);
      if (r.status != lp::Status::optimal) continue;
      const bool seen = std::any_of(starts.begin(), starts.end(), [&](const auto& s) {
        for (std::size_t i = 0; i < n; ++i) {
          if (std::abs(s[i] - r.x[i]) > 1e-12) return false;
        }
        return true;
      });
      if (!seen) starts.push_back(r.x);
    }

    std::vector<std::vector<double>> eq;
    for (const auto& r : poly.rows) {
      if (r.relation == Relation::equal) eq.push_back(r.coefficients);
    }
    const auto directions = detail::search_directions(detail::null_space(eq, n), n);

    for (auto v : starts) {
      ++summary.starts;
      double value = objective(v);
      double step = 0.25;
      while (step >= 1e-6) {
        double best_local = value;
        std::vector<double> best_candidate;
        for (const auto& d : directions) {
          const double t = std::min(step, detail::max_step(poly, v, d));
          if (t <= 1e-12) continue;
          std::vector<double> cand(n);
          for (std::size_t i = 0; i < n; ++i) cand[i] = std::clamp(v[i] + t * d[i], 0.0, 1.0);
          const double cv = objective(cand);
          if (cv < best_local - 1e-13) {
            best_local = cv;
            best_candidate = std::move(cand);
          }
        }
        if (best_candidate.empty()) {
          step *= 0.5;
        } else {
          v = std::move(best_candidate);
          value = best_local;
          step = std::min(0.5, step * 2.0);
        }
      }
      final_step = step;
      if (value < best_value - detail::kTieTolerance ||
          (value <= best_value + detail::kTieTolerance && detail::lex_greater(v, best_point))) {
        best_value = std::min(best_value, value);
        best_point = v;
      }
    }
  }

  if (best_point.empty()) throw InfeasibleError("solve_min_distance: no feasible start", {});
  summary.final_step = final_step;
  DiscreteDistribution d(problem.labels(), detail::clamp_unit(best_point));
  const double value = distance(metric, md->prior, d);
  return {std::move(d), value, summary};
}

/// Dispatches on the problem objective.
inline InferenceSolution solve(const InferenceProblem& problem) {
  if (std::holds_alternative<MaxU>(problem.objective())) return solve_max_u(problem);
  return solve_min_distance(problem);
}

/// Exhaustive scan of the grid {0, res, ..., 1}^n. Test oracle for both
/// solvers; n <= 4 and res one of 0.1, 0.05, 0.02, 0.01.
inline InferenceSolution brute_force_oracle(const InferenceProblem& problem, double resolution) {
  const std::size_t n = problem.size();
  if (n > 4) throw DomainError("brute_force_oracle: n = " + std::to_string(n) + " is too large");
  std::size_t steps = 0;
  for (double allowed : {0.1, 0.05, 0.02, 0.01}) {
    if (std::abs(resolution - allowed) < 1e-12) steps = static_cast<std::size_t>(std::lround(1.0 / allowed));
  }
  if (steps == 0) throw DomainError("brute_force_oracle: unsupported resolution");

  const auto* md = std::get_if<MinDistance>(&problem.objective());
  std::vector<double> prior;
  if (md) prior.assign(md->prior.values().begin(), md->prior.values().end());
  const bool minimize = md != nullptr;

  SearchSummary summary;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> v(n);
  std::vector<double> best_point;
  double best_value = minimize ? std::numeric_limits<double>::infinity() : -1.0;
  while (true) {
    bool has_top = false;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<double>(idx[i]) / static_cast<double>(steps);
      has_top = has_top || idx[i] == steps;
    }
    if ((has_top || !problem.require_normalized()) && problem.admits(v, 1e-9)) {
      ++summary.evaluations;
      const double value =
          minimize ? detail::raw_distance(md->metric, prior, v) : u_uncertainty(v).nats;
      const bool better = minimize ? value < best_value - detail::kTieTolerance
                                   : value > best_value + detail::kTieTolerance;
      const bool tie = std::abs(value - best_value) <= detail::kTieTolerance;
      if (better || (tie && detail::lex_greater(v, best_point))) {
        best_value = better ? value : best_value;
        best_point = v;
      }
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] > steps) idx[k++] = 0;
    if (k == n) break;
  }
  if (best_point.empty()) throw InfeasibleError("brute_force_oracle: no feasible grid point", {});
  DiscreteDistribution d(problem.labels(), best_point);
  return {std::move(d), best_value, summary};
}

}  // namespace possibility
