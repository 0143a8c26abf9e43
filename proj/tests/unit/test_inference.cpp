#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "possibility/inference.hpp"
#include "support/generators.hpp"
#include "support/problems.hpp"

using namespace possibility;

namespace {

std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

std::vector<double> values_of(const InferenceSolution& s) {
  return {s.distribution.values().begin(), s.distribution.values().end()};
}

LinearConstraint row(std::vector<double> a, Relation rel, double b) { return {std::move(a), rel, b}; }

}  // namespace

TEST(Problem, Validation) {
  EXPECT_THROW(InferenceProblem({}, {}, MaxU{}), DomainError);
  EXPECT_THROW(InferenceProblem(labels(2), {row({1}, Relation::equal, 1)}, MaxU{}), DomainError);
  EXPECT_THROW(InferenceProblem(labels(2), {row({0, 0}, Relation::equal, 1)}, MaxU{}), DomainError);
  EXPECT_THROW(InferenceProblem(labels(2), {row({1, NAN}, Relation::equal, 1)}, MaxU{}), DomainError);
  const auto prior = DiscreteDistribution::from_values({1, 0.5});
  EXPECT_THROW(InferenceProblem(labels(2), {}, MinDistance{prior, Metric::H}), DomainError);
  EXPECT_THROW(InferenceProblem(labels(2), {}, MinDistance{prior, Metric::g}), DomainError);
  EXPECT_THROW(InferenceProblem({"a", "b"}, {}, MinDistance{prior, Metric::G}), DomainError);
}

TEST(MaxU, Unconstrained) {
  const auto s = solve_max_u(InferenceProblem(labels(3), {}, MaxU{}));
  EXPECT_EQ(values_of(s), (std::vector<double>{1, 1, 1}));
  EXPECT_NEAR(s.objective_value, std::log(3.0), 1e-15);
  const auto& statuses = std::get<std::vector<OrderingStatus>>(s.certificate);
  EXPECT_EQ(statuses.size(), 6u);
}

TEST(MaxU, FixedCoordinate) {
  const auto s = solve_max_u(InferenceProblem(labels(2), {row({1, 0}, Relation::equal, 0.4)}, MaxU{}));
  EXPECT_NEAR(s.distribution[0], 0.4, 1e-12);
  EXPECT_NEAR(s.distribution[1], 1.0, 1e-12);
  EXPECT_NEAR(s.objective_value, 0.4 * std::numbers::ln2, 1e-12);
}

TEST(MaxU, TieBreakIsLexicographicallyLargest) {
  const auto s = solve_max_u(InferenceProblem(labels(2), {row({1, 1}, Relation::equal, 1.5)}, MaxU{}));
  EXPECT_NEAR(s.distribution[0], 1.0, 1e-9);
  EXPECT_NEAR(s.distribution[1], 0.5, 1e-9);
  EXPECT_NEAR(s.objective_value, 0.5 * std::numbers::ln2, 1e-12);
}

TEST(MaxU, WithoutNormalization) {
  const InferenceProblem p(labels(2), {row({1, 1}, Relation::less_equal, 0.8)}, MaxU{}, false);
  const auto s = solve_max_u(p);
  EXPECT_NEAR(s.distribution[0], 0.4, 1e-9);
  EXPECT_NEAR(s.distribution[1], 0.4, 1e-9);
  EXPECT_NEAR(s.objective_value, brute_force_oracle(p, 0.01).objective_value, 1e-9);
}

TEST(MaxU, InfeasibleCarriesFarkasCertificate) {
  const InferenceProblem p(labels(2), {row({1, 1}, Relation::greater_equal, 2.5)}, MaxU{});
  try {
    solve_max_u(p);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    const auto& y = e.farkas();
    ASSERT_EQ(y.size(), 3u);  // constraint + two box rows
    // Rows: x1 + x2 >= 2.5, x1 <= 1, x2 <= 1.
    EXPECT_LE(y[0], 1e-12);
    EXPECT_GE(y[1], -1e-12);
    EXPECT_GE(y[2], -1e-12);
    EXPECT_GE(y[0] + y[1], -1e-12);
    EXPECT_GE(y[0] + y[2], -1e-12);
    EXPECT_LT(2.5 * y[0] + y[1] + y[2], 0.0);
    EXPECT_EQ(e.category(), ErrorCategory::math);
  }
}

TEST(MaxU, SubnormalOnlyIsInfeasible) {
  const InferenceProblem p(labels(2), {row({1, 0}, Relation::less_equal, 0.5), row({0, 1}, Relation::less_equal, 0.5)},
                           MaxU{});
  try {
    solve_max_u(p);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_TRUE(e.farkas().empty());
    EXPECT_NE(std::string(e.what()).find("attains possibility 1"), std::string::npos);
  }
  const InferenceProblem relaxed(p.labels(), p.constraints(), MaxU{}, false);
  EXPECT_NEAR(solve_max_u(relaxed).objective_value, 0.5 * std::numbers::ln2, 1e-12);
}

TEST(MaxU, SizeLimit) {
  EXPECT_THROW(solve_max_u(InferenceProblem(labels(9), {}, MaxU{})), DomainError);
  EXPECT_NO_THROW(solve_max_u(InferenceProblem(labels(8), {row(std::vector<double>(8, 1.0), Relation::less_equal, 5)}, MaxU{})));
}

TEST(MaxU, PermutationEquivariance) {
  testgen::Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 2, 4);
    auto rp = testgen::feasible_constraints(rng, n);
    const auto s = solve_max_u(InferenceProblem(labels(n), rp.constraints, MaxU{}));
    const auto perm = testgen::permutation(rng, n);
    auto permuted = rp.constraints;
    for (auto& c : permuted) {
      std::vector<double> a(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = c.coefficients[perm.mapping()[i]];
      c.coefficients = a;
    }
    const auto sp = solve_max_u(InferenceProblem(labels(n), permuted, MaxU{}));
    EXPECT_NEAR(sp.objective_value, s.objective_value, 1e-9);
  }
}

TEST(MaxU, RaisingLowerBoundNeverIncreasesU) {
  testgen::Rng rng(72);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 2, 4);
    auto rp = testgen::feasible_constraints(rng, n);
    const std::size_t i = testgen::uniform_size(rng, 0, n - 1);
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    auto lower = rp.constraints;
    lower.push_back(row(e, Relation::greater_equal, 0.0));
    const double base = solve_max_u(InferenceProblem(labels(n), lower, MaxU{})).objective_value;
    lower.back().bound = rp.anchor[i];
    const double raised = solve_max_u(InferenceProblem(labels(n), lower, MaxU{})).objective_value;
    EXPECT_LE(raised, base + 1e-9);
  }
}

TEST(MaxU, MatchesOracle) {
  testgen::Rng rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 1, 3);
    const InferenceProblem p(labels(n), testgen::feasible_constraints(rng, n).constraints, MaxU{});
    const auto s = solve_max_u(p);
    EXPECT_TRUE(p.admits(s.distribution.values()));
    const double tol = std::log(static_cast<double>(n)) * 0.01 * static_cast<double>(n);
    EXPECT_LE(std::abs(s.objective_value - brute_force_oracle(p, 0.01).objective_value), tol + 1e-9);
    EXPECT_GE(s.objective_value, brute_force_oracle(p, 0.01).objective_value - 1e-9);
  }
}

TEST(MinDistance, PriorAlreadyAdmissible) {
  const auto prior = DiscreteDistribution(labels(3), {1, 0.3, 0.7});
  const InferenceProblem p(labels(3), {row({0, 1, 1}, Relation::less_equal, 1.5)}, MinDistance{prior, Metric::G});
  const auto s = solve_min_distance(p);
  EXPECT_EQ(s.distribution, prior);
  EXPECT_EQ(s.objective_value, 0.0);
}

TEST(MinDistance, RaiseSingleCoordinate) {
  const auto prior = DiscreteDistribution(labels(3), {1, 0.2, 0.2});
  const InferenceProblem p(labels(3), {row({0, 1, 0}, Relation::greater_equal, 0.6)}, MinDistance{prior, Metric::G});
  const auto s = solve_min_distance(p);
  EXPECT_NEAR(s.distribution[0], 1.0, 1e-6);
  EXPECT_NEAR(s.distribution[1], 0.6, 1e-6);
  EXPECT_NEAR(s.distribution[2], 0.2, 1e-6);
  EXPECT_NEAR(s.objective_value, 0.4 * std::numbers::ln2, 1e-6);
  EXPECT_NEAR(brute_force_oracle(p, 0.02).objective_value, 0.4 * std::numbers::ln2, 1e-9);
  const auto& summary = std::get<SearchSummary>(s.certificate);
  EXPECT_GT(summary.starts, 0u);
  EXPECT_LT(summary.final_step, 1e-6);
}

TEST(MinDistance, AllOnesPriorMatchesMaxU) {
  testgen::Rng rng(74);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 1, 5);
    const auto cs = testgen::feasible_constraints(rng, n).constraints;
    const double u = solve_max_u(InferenceProblem(labels(n), cs, MaxU{})).objective_value;
    const auto s = solve_min_distance(
        InferenceProblem(labels(n), cs, MinDistance{DiscreteDistribution(labels(n), std::vector<double>(n, 1.0)), Metric::G}));
    EXPECT_NEAR(u_uncertainty(s.distribution).nats, u, 1e-6);
  }
}

TEST(MinDistance, MatchesOracle) {
  testgen::Rng rng(75);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 1, 3);
    const auto cs = testgen::feasible_constraints(rng, n).constraints;
    const auto prior = DiscreteDistribution(labels(n), testgen::values(rng, n));
    for (Metric m : {Metric::G, Metric::K}) {
      const InferenceProblem p(labels(n), cs, MinDistance{prior, m});
      const auto s = solve_min_distance(p);
      EXPECT_TRUE(p.admits(s.distribution.values()));
      const double oracle_value = brute_force_oracle(p, 0.02).objective_value;
      const double tol = std::log(static_cast<double>(n)) * 0.02 * static_cast<double>(n);
      EXPECT_LE(s.objective_value, oracle_value + 1e-9);
      EXPECT_LE(std::abs(s.objective_value - oracle_value), tol + 1e-9);
    }
  }
}

TEST(MinDistance, SixLabels) {
  const auto prior = DiscreteDistribution(labels(6), {1, 0.1, 0.9, 0.2, 0.5, 0.0});
  const InferenceProblem p(labels(6),
                           {row({1, 1, 1, 1, 1, 1}, Relation::greater_equal, 4.0),
                            row({0, 0, 1, 0, 0, 0}, Relation::less_equal, 0.5)},
                           MinDistance{prior, Metric::K});
  const auto s = solve_min_distance(p);
  EXPECT_TRUE(p.admits(s.distribution.values()));
  EXPECT_THROW(solve_min_distance(InferenceProblem(labels(7), {}, MinDistance{max_uncertain(labels(7)), Metric::G})),
               DomainError);
}

TEST(Solve, Dispatches) {
  const InferenceProblem a(labels(2), {}, MaxU{});
  EXPECT_NEAR(solve(a).objective_value, std::numbers::ln2, 1e-15);
  EXPECT_THROW(solve_min_distance(a), DomainError);
  const InferenceProblem b(labels(2), {}, MinDistance{DiscreteDistribution(labels(2), {1, 0}), Metric::K});
  EXPECT_EQ(solve(b).objective_value, 0.0);
  EXPECT_THROW(solve_max_u(b), DomainError);
}

TEST(Oracle, Examples) {
  const auto s = brute_force_oracle(InferenceProblem(labels(2), {}, MaxU{}), 0.1);
  EXPECT_EQ(values_of(s), (std::vector<double>{1, 1}));
  const auto t = brute_force_oracle(InferenceProblem(labels(2), {row({1, 0}, Relation::equal, 0.4)}, MaxU{}), 0.1);
  EXPECT_NEAR(t.distribution[0], 0.4, 1e-12);
  EXPECT_EQ(t.distribution[1], 1.0);
  EXPECT_THROW(brute_force_oracle(InferenceProblem(labels(5), {}, MaxU{}), 0.1), DomainError);
  EXPECT_THROW(brute_force_oracle(InferenceProblem(labels(2), {}, MaxU{}), 0.03), DomainError);
  EXPECT_THROW(brute_force_oracle(InferenceProblem(labels(2), {row({1, 1}, Relation::greater_equal, 3)}, MaxU{}), 0.1),
               InfeasibleError);
}
