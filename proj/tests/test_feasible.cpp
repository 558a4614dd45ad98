#include <gtest/gtest.h>

#include <random>

#include "sbls/feasible.hpp"
#include "test_support.hpp"

namespace sbls {
namespace {

using testing::pt;
using testing::vec;

Vec unit(int dim, int i_one_based) {
  Vec e = Vec::Zero(dim);
  e[i_one_based - 1] = 1.0;
  return e;
}

TEST(Support, ProfileOfExamplePoint) {
  const SupportProfile p = support_profile(pt({1, 1, 0, 1, 1, 0}, 3), 0.0);
  EXPECT_EQ(p.gamma1, (std::vector<int>{0, 1}));
  EXPECT_EQ(p.gamma2, (std::vector<int>{3, 4}));
  EXPECT_EQ(p.gamma, (std::vector<int>{0, 1, 3, 4}));
  EXPECT_EQ(p.gamma_x, 0);
  EXPECT_EQ(p.card1, 2);
  EXPECT_EQ(p.card2, 2);
}

TEST(Support, ThresholdAndZeroVector) {
  const SupportProfile p = support_profile(pt({0, 1e-13, 1, 0, 2, 0}, 3), 1e-10);
  EXPECT_EQ(p.gamma1, (std::vector<int>{2}));
  EXPECT_EQ(p.gamma2, (std::vector<int>{4}));
  EXPECT_EQ(p.gamma_x, 2);
  const SupportProfile zero = support_profile(pt({0, 0, 0, 0}, 2));
  EXPECT_TRUE(zero.gamma.empty());
  EXPECT_FALSE(zero.gamma_x.has_value());
}

TEST(Feasible, Membership) {
  EXPECT_TRUE(is_feasible(pt({1, 1, 0, 1, 1, 0}, 3), 2, 2));
  EXPECT_FALSE(is_feasible(pt({0, 0, 0, 1, 1, 0}, 3), 2, 2));
  EXPECT_FALSE(is_feasible(pt({0, 2, 1, 0, 1, 0}, 4), 2, 2));
  EXPECT_FALSE(is_feasible(pt({1, 1, 1, 1, 0, 0}, 3), 2, 2));
  EXPECT_FALSE(is_feasible(pt({1, 0, 0, 1, 1, 1}, 3), 2, 2));
  EXPECT_TRUE(is_feasible(pt({0, 1, -4, 0, 0, 0}, 3), 2, 2));
}

TEST(Feasible, ErrorsNameTheViolation) {
  try {
    require_feasible(pt({0, 2, 1, 0, 1, 0}, 4), 2, 2);
    FAIL();
  } catch (const InfeasiblePointError& e) {
    EXPECT_NE(std::string(e.what()).find("not 1"), std::string::npos);
  }
  EXPECT_THROW(require_feasible(pt({0, 0, 1, 0}, 2), 1, 1), InfeasiblePointError);
  EXPECT_THROW(tangent_membership(pt({0, 0, 1, 0}, 2), vec({0, 0, 0, 0}), ConeSense::Clarke, 1, 1),
               InfeasiblePointError);
}

TEST(Cones, TangentExamples) {
  const Point zbar = pt({1, 1, 0, 1, 1, 0}, 3);
  for (ConeSense sense : {ConeSense::Bouligand, ConeSense::Clarke}) {
    EXPECT_TRUE(tangent_membership(zbar, Vec::Zero(6), sense, 2, 2));
    EXPECT_TRUE(tangent_membership(zbar, unit(6, 2), sense, 2, 2));
    EXPECT_FALSE(tangent_membership(zbar, unit(6, 3), sense, 2, 2));
    EXPECT_FALSE(tangent_membership(zbar, unit(6, 1), sense, 2, 2));
  }
}

TEST(Cones, NormalExamples) {
  const Point zbar = pt({1, 1, 0, 1, 1, 0}, 3);
  for (ConeSense sense : {ConeSense::Bouligand, ConeSense::Clarke}) {
    EXPECT_TRUE(normal_membership(zbar, Vec::Zero(6), sense, 2, 2));
    EXPECT_TRUE(normal_membership(zbar, unit(6, 3) + unit(6, 6), sense, 2, 2));
  }
  const Point z = pt({1, 0, 0, 1, 1, 0}, 3);
  EXPECT_FALSE(normal_membership(z, unit(6, 2), ConeSense::Bouligand, 2, 2));
  EXPECT_TRUE(normal_membership(z, unit(6, 2), ConeSense::Clarke, 2, 2));
}

TEST(Cones, BouligandNormalCases) {
  // (full, full), (full, not), (not, full), (not, not) on m = n = 4, s = t = 2.
  EXPECT_EQ(bouligand_normal_zero_set(support_profile(pt({0, 1, 3, 0, 2, 0, 1, 0}, 4)), 2, 2),
            (std::vector<int>{2, 4, 6}));
  EXPECT_EQ(bouligand_normal_zero_set(support_profile(pt({0, 1, 3, 0, 2, 0, 0, 0}, 4)), 2, 2),
            (std::vector<int>{2, 4, 5, 6, 7}));
  EXPECT_EQ(bouligand_normal_zero_set(support_profile(pt({0, 1, 0, 0, 2, 0, 1, 0}, 4)), 2, 2),
            (std::vector<int>{2, 3, 4, 6}));
  EXPECT_EQ(bouligand_normal_zero_set(support_profile(pt({0, 1, 0, 0, 0, 0, 1, 0}, 4)), 2, 2),
            (std::vector<int>{2, 3, 4, 5, 6, 7}));
}

// The Bouligand tangent cone is a union of coordinate subspaces, so its polar
// vanishes exactly on the coordinates e_i that lie in the cone.
TEST(Cones, NormalZeroSetIsPolarOfTangentAxes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 3 + trial % 4, n = 2 + trial % 5;
    const int s = 1 + trial % (m - 1), t = 1 + (trial / 3) % (n - 1);
    const Point z = testing::random_feasible_point(m, n, s, t, rng);
    const SupportProfile p = support_profile(z);
    for (ConeSense sense : {ConeSense::Bouligand, ConeSense::Clarke}) {
      std::vector<int> axes;
      for (int i = 0; i < m + n; ++i) {
        Vec e = Vec::Zero(m + n);
        e[i] = 1.0;
        if (tangent_membership(z, e, sense, s, t)) axes.push_back(i);
      }
      const std::vector<int> zero_set =
          sense == ConeSense::Clarke ? clarke_core(p) : bouligand_normal_zero_set(p, s, t);
      EXPECT_EQ(axes, zero_set) << "trial " << trial;
    }
  }
}

TEST(Cones, InclusionsAndPolarity) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 5, n = 4, s = 1 + trial % 4, t = 1 + trial % 3;
    const Point z = testing::random_feasible_point(m, n, s, t, rng);
    const SupportProfile p = support_profile(z);
    for (int k = 0; k < 100; ++k) {
      Vec d = Vec::Zero(m + n);
      for (int i = 0; i < m + n; ++i) {
        if (keep(rng)) d[i] = normal(rng);
      }
      if (tangent_membership(z, d, ConeSense::Clarke, s, t)) {
        EXPECT_TRUE(tangent_membership(z, d, ConeSense::Bouligand, s, t));
      }
      const bool nb = normal_membership(z, d, ConeSense::Bouligand, s, t);
      const bool nc = normal_membership(z, d, ConeSense::Clarke, s, t);
      if (nb) {
        EXPECT_TRUE(nc);
      }
      if (p.card1 == s && p.card2 == t) {
        EXPECT_EQ(nb, nc);
      }
      for (ConeSense sense : {ConeSense::Bouligand, ConeSense::Clarke}) {
        if (!tangent_membership(z, d, sense, s, t)) continue;
        Vec dn = Vec::Zero(m + n);
        for (int i = 0; i < m + n; ++i) dn[i] = normal(rng);
        const std::vector<int> zero_set =
            sense == ConeSense::Clarke ? clarke_core(p) : bouligand_normal_zero_set(p, s, t);
        for (int i : zero_set) dn[i] = 0.0;
        ASSERT_TRUE(normal_membership(z, dn, sense, s, t));
        EXPECT_LE(std::abs(d.dot(dn)), 1e-14);
      }
    }
  }
}

}  // namespace
}  // namespace sbls
