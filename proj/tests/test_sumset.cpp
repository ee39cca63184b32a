#include <gtest/gtest.h>

#include <cmath>

#include "qrsum/error.hpp"
#include "qrsum/reference.hpp"
#include "qrsum/sumset.hpp"

using namespace qrsum;

TEST(Profile, SingletonDecompositionOfSevenSquares) {
  const Prime p(7);
  const FpSet a(p, {1}), b(p, {0, 1, 3});
  const auto prof = build_profile(a, b);
  EXPECT_EQ(prof.support, residue_set(p));
  EXPECT_EQ(prof.m0, 3);
  EXPECT_EQ(prof.m1, 3);
  EXPECT_EQ(prof.energy, 3);
  EXPECT_EQ(prof.unique_count, 3);
  EXPECT_TRUE(check_holder(prof, 1));
  EXPECT_TRUE(check_kappa_one(prof, 0.5));
  EXPECT_TRUE(check_kappa_two(prof));
  EXPECT_TRUE(check_tau_bound(prof));
}

TEST(Profile, PairOfTwoElementSets) {
  const Prime p(7);
  const FpSet a(p, {0, 1});
  const auto prof = build_profile(a, a);
  EXPECT_EQ(prof.support.elements(), (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(prof.rep_counts, (std::vector<std::uint32_t>{1, 2, 1, 0, 0, 0, 0}));
  EXPECT_EQ(prof.m1, 4);
  EXPECT_EQ(prof.energy, 6);
  EXPECT_EQ(prof.unique_count, 2);
  EXPECT_EQ(moment(prof, 0), 3.0);
  EXPECT_EQ(moment(prof, 1), 4.0);
  EXPECT_EQ(moment(prof, 2), 6.0);
  EXPECT_DOUBLE_EQ(moment(prof, -1), 2.5);
  EXPECT_DOUBLE_EQ(moment(prof, 0.5), 2 + std::sqrt(2.0));
  // 18 <= 20, 4 <= 4 and 4 >= 2^{1/3} * 3.
  EXPECT_TRUE(check_kappa_one(prof, 1));
  EXPECT_TRUE(check_kappa_two(prof));
  EXPECT_TRUE(check_tau_bound(prof));
}

TEST(Profile, CompleteSumset) {
  const Prime p(13);
  const auto full = FpSet::full(p);
  const auto prof = build_profile(full, full);
  EXPECT_EQ(prof.m0, 13);
  EXPECT_EQ(prof.energy, 13 * 13 * 13);
  for (auto r : prof.rep_counts) EXPECT_EQ(r, 13u);
  EXPECT_EQ(prof.unique_count, 0);
  EXPECT_TRUE(check_tau_bound(prof));
}

TEST(Profile, Errors) {
  const Prime p(7);
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code([&] { build_profile(FpSet(p), FpSet(p, {1})); }), ErrorCode::EmptySet);
  EXPECT_EQ(code([&] { build_profile(FpSet(p, {1}), FpSet(Prime(11), {1})); }), ErrorCode::ModulusMismatch);
}

// Constant r(x) = 1 makes Hoelder and kappa-one equalities; the checks must
// not be tripped by rounding.
TEST(Inequalities, EqualityCasesAreAccepted) {
  const Prime p(101);
  const FpSet a(p, {0, 1, 2, 3}), b(p, {0, 10, 20, 30, 40});
  const auto prof = build_profile(a, b);
  ASSERT_EQ(prof.unique_count, prof.m1);
  for (double theta : {0.25, 0.5, 1.0, 2.0, 3.0, 7.5})
    EXPECT_TRUE(check_holder(prof, theta) && check_kappa_one(prof, theta)) << theta;
  EXPECT_TRUE(check_kappa_two(prof));
}

TEST(Inequalities, RandomPairsAndBruteForceOracles) {
  for (std::uint32_t q : {11u, 31u, 101u}) {
    const Prime p(q);
    const std::size_t hi = std::min<std::size_t>(q - 1, 40);
    for (std::uint64_t i = 0; i < 200; ++i) {
      const auto a = random_subset(p, 2, hi, 5, 2 * i);
      const auto b = random_subset(p, 2, hi, 5, 2 * i + 1);
      const auto prof = build_profile(a, b);
      ASSERT_EQ(prof.rep_counts, reference::representation_counts(a, b));
      ASSERT_EQ(prof.m1, static_cast<std::int64_t>(a.size() * b.size()));
      ASSERT_TRUE(prof.unique_count <= prof.m0 && prof.m0 <= prof.m1 && prof.m1 <= prof.energy);
      if (prof.unique_count == prof.m0) {
        ASSERT_EQ(prof.energy, prof.m0);
      }
      if (a.size() <= 12 && b.size() <= 12) {
        ASSERT_EQ(prof.energy, reference::additive_energy(a, b));
      }
      for (double theta : {0.5, 1.0, 2.0, 3.0}) {
        ASSERT_TRUE(check_holder(prof, theta));
        ASSERT_TRUE(check_kappa_one(prof, theta));
      }
      ASSERT_TRUE(check_kappa_two(prof));
      ASSERT_TRUE(check_tau_bound(prof));
    }
  }
}

TEST(Inequalities, RejectNonPositiveTheta) {
  const Prime p(7);
  const auto prof = build_profile(FpSet(p, {0, 1}), FpSet(p, {0, 1}));
  EXPECT_THROW(check_holder(prof, 0), Error);
  EXPECT_THROW(check_kappa_one(prof, -1), Error);
}

TEST(RandomSubset, SizesAndDeterminism) {
  const Prime p(31);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto set = random_subset(p, 2, 5, 42, s);
    EXPECT_GE(set.size(), 2u);
    EXPECT_LE(set.size(), 5u);
    EXPECT_EQ(set, random_subset(p, 2, 5, 42, s));
  }
  EXPECT_NE(random_subset(p, 10, 10, 1, 0), random_subset(p, 10, 10, 2, 0));
  EXPECT_EQ(random_subset(p, 31, 31, 3, 0), FpSet::full(p));
  EXPECT_THROW(random_subset(p, 0, 3, 1, 0), Error);
}
