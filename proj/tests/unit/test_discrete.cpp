#include <gtest/gtest.h>

#include <vector>

#include "possibility/discrete.hpp"
#include "support/generators.hpp"

using namespace possibility;

namespace {

DiscreteDistribution abc(std::vector<double> v) {
  return DiscreteDistribution({"a", "b", "c"}, std::move(v));
}

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(DiscreteDistribution, RejectsInvalidInput) {
  EXPECT_THROW(DiscreteDistribution({"a"}, {1.0, 0.5}), DomainError);
  EXPECT_THROW(DiscreteDistribution({}, {}), DomainError);
  EXPECT_THROW(DiscreteDistribution({"a", "a"}, {1.0, 0.5}), DomainError);
  EXPECT_THROW(DiscreteDistribution({"a", "b"}, {1.0, 1.5}), DomainError);
  EXPECT_THROW(DiscreteDistribution({"a", "b"}, {-0.1, 1.0}), DomainError);
  EXPECT_THROW(DiscreteDistribution::from_values({1.0, std::nan("")}), DomainError);
}

TEST(DiscreteDistribution, NormalizationFlag) {
  EXPECT_TRUE(abc({1.0, 0.5, 0.2}).normalized());
  EXPECT_TRUE(abc({1.0 - 1e-10, 0.5, 0.2}).normalized());
  EXPECT_FALSE(abc({0.5, 0.5, 0.0}).normalized());
  EXPECT_EQ(DiscreteDistribution::from_values({0.3, 1.0}).labels(),
            (std::vector<std::string>{"x1", "x2"}));
}

TEST(DiscreteDistribution, LabelLookup) {
  const auto d = abc({1.0, 0.5, 0.2});
  EXPECT_DOUBLE_EQ(d.at("b"), 0.5);
  EXPECT_FALSE(d.index_of("z").has_value());
  EXPECT_THROW(d.at("z"), DomainError);
}

TEST(PossibilityOfSubset, Examples) {
  const auto d = abc({1.0, 0.5, 0.2});
  using Labels = std::vector<std::string>;
  EXPECT_DOUBLE_EQ(possibility_of_subset(d, Labels{"b", "c"}), 0.5);
  EXPECT_DOUBLE_EQ(possibility_of_subset(d, Labels{"a", "b", "c"}), 1.0);
  EXPECT_DOUBLE_EQ(possibility_of_subset(d, Labels{"c"}), 0.2);
  EXPECT_THROW(possibility_of_subset(d, Labels{"q"}), DomainError);
}

TEST(MinProduct, Examples) {
  const auto j = min_product(DiscreteDistribution::from_values({1.0, 0.6}),
                             DiscreteDistribution::from_values({1.0, 0.3}));
  ASSERT_EQ(j.rows(), 2u);
  ASSERT_EQ(j.cols(), 2u);
  EXPECT_DOUBLE_EQ(j(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(j(0, 1), 0.3);
  EXPECT_DOUBLE_EQ(j(1, 0), 0.6);
  EXPECT_DOUBLE_EQ(j(1, 1), 0.3);
  EXPECT_TRUE(j.normalized());

  const auto k = min_product(DiscreteDistribution::from_values({1.0}),
                             DiscreteDistribution::from_values({1.0, 0.5}));
  EXPECT_EQ(as_vector(k.values()), (std::vector<double>{1.0, 0.5}));

  const auto sub = min_product(DiscreteDistribution::from_values({0.7}),
                               DiscreteDistribution::from_values({1.0, 0.5}));
  EXPECT_FALSE(sub.normalized());
}

TEST(Marginals, Examples) {
  const JointDistribution j({"r1", "r2"}, {"c1", "c2"}, {1.0, 0.3, 0.6, 0.3});
  const auto [m1, m2] = marginals(j);
  EXPECT_EQ(as_vector(m1.values()), (std::vector<double>{1.0, 0.6}));
  EXPECT_EQ(as_vector(m2.values()), (std::vector<double>{1.0, 0.3}));
  EXPECT_EQ(m1.labels(), j.row_labels());

  const JointDistribution single({"r"}, {"c"}, {0.5});
  const auto [s1, s2] = marginals(single);
  EXPECT_DOUBLE_EQ(s1[0], 0.5);
  EXPECT_DOUBLE_EQ(s2[0], 0.5);
  EXPECT_FALSE(s1.normalized());
}

TEST(Marginals, RecoverFactorsOfMinProduct) {
  testgen::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto d1 = testgen::distribution(rng, testgen::uniform_size(rng, 1, 6));
    const auto d2 = testgen::distribution(rng, testgen::uniform_size(rng, 1, 6));
    const auto [m1, m2] = marginals(min_product(d1, d2));
    EXPECT_EQ(as_vector(m1.values()), as_vector(d1.values()));
    EXPECT_EQ(as_vector(m2.values()), as_vector(d2.values()));
  }
}

TEST(JointDistribution, FlattenUsesPairLabels) {
  const JointDistribution j({"a", "b"}, {"u"}, {1.0, 0.4});
  const auto flat = j.flatten();
  EXPECT_EQ(flat.labels(), (std::vector<std::string>{"(a,u)", "(b,u)"}));
  EXPECT_THROW(JointDistribution({"a"}, {"u"}, {1.0, 0.2}), DomainError);
}

TEST(Extend, Examples) {
  const DiscreteDistribution d({"a", "b"}, {1.0, 0.5});
  const auto e = extend(d, {"a", "b", "c"});
  EXPECT_EQ(as_vector(e.values()), (std::vector<double>{1.0, 0.5, 0.0}));
  EXPECT_EQ(extend(d, {"a", "b"}), d);
  const auto reordered = extend(d, {"c", "b", "a"});
  EXPECT_EQ(as_vector(reordered.values()), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_THROW(extend(d, {"a", "c"}), DomainError);
}

TEST(Extend, RestrictIsInverse) {
  testgen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = testgen::distribution(rng, testgen::uniform_size(rng, 1, 5));
    auto labels = d.labels();
    labels.push_back("extra1");
    labels.insert(labels.begin(), "extra0");
    EXPECT_EQ(restrict_to(extend(d, labels), d.labels()), d);
  }
}

TEST(Permute, Examples) {
  const auto d = abc({1.0, 0.5, 0.2});
  const std::vector<std::size_t> s{3, 1, 2};
  const auto p = permute(d, Permutation::from_one_based(s));
  EXPECT_EQ(as_vector(p.values()), (std::vector<double>{0.2, 1.0, 0.5}));
  EXPECT_EQ(p.labels(), d.labels());
  EXPECT_EQ(permute(d, Permutation::identity(3)), d);
}

TEST(Permute, Errors) {
  const auto d = abc({1.0, 0.5, 0.2});
  EXPECT_THROW(permute(d, Permutation::identity(2)), DomainError);
  EXPECT_THROW(Permutation({0, 0, 1}), DomainError);
  EXPECT_THROW(Permutation({0, 1, 3}), DomainError);
  const std::vector<std::size_t> zero_based{0, 1, 2};
  EXPECT_THROW(Permutation::from_one_based(zero_based), DomainError);
}

TEST(Permute, InverseRoundTrip) {
  testgen::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 1, 8);
    const auto d = testgen::distribution(rng, n, false);
    const auto s = testgen::permutation(rng, n);
    EXPECT_EQ(permute(permute(d, s), s.inverse()), d);
  }
}

TEST(MeetJoin, Examples) {
  const auto a = abc({1.0, 0.5, 0.0});
  const auto b = abc({0.5, 1.0, 0.5});
  const auto m = meet(a, b);
  EXPECT_EQ(as_vector(m.values()), (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_FALSE(m.normalized());
  EXPECT_EQ(as_vector(join(a, b).values()), (std::vector<double>{1.0, 1.0, 0.5}));
  EXPECT_EQ(meet(a, a), a);
  EXPECT_EQ(join(a, a), a);
}

TEST(MeetJoin, RequireIdenticalLabelOrder) {
  const DiscreteDistribution a({"a", "b"}, {1.0, 0.5});
  const DiscreteDistribution b({"b", "a"}, {1.0, 0.5});
  EXPECT_THROW(meet(a, b), DomainError);
  EXPECT_THROW(join(a, b), DomainError);
}

TEST(MeetJoin, LatticeLaws) {
  testgen::Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = testgen::uniform_size(rng, 1, 6);
    const auto a = testgen::distribution(rng, n, false);
    const auto b = testgen::distribution(rng, n, false);
    const auto c = testgen::distribution(rng, n, false);
    EXPECT_EQ(meet(a, b), meet(b, a));
    EXPECT_EQ(join(a, b), join(b, a));
    EXPECT_EQ(meet(meet(a, b), c), meet(a, meet(b, c)));
    EXPECT_EQ(join(join(a, b), c), join(a, join(b, c)));
    const auto lo = meet(a, b);
    const auto hi = join(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(lo[i], a[i]);
      EXPECT_LE(a[i], hi[i]);
    }
    if (a.normalized() || b.normalized()) {
      EXPECT_TRUE(hi.normalized());
    }
  }
}
