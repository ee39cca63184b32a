#include <gtest/gtest.h>

#include <cmath>

#include "qrsum/bounds.hpp"
#include "qrsum/error.hpp"
#include "qrsum/sumset.hpp"

using namespace qrsum;

TEST(SizeRange, TheoremOneEndpointsAreExact) {
  for (auto q : primes_in(3, 20000)) {
    const Prime p(q);
    const long double r = std::sqrt(static_cast<long double>(q));
    const auto lo = theorem1_lower(p);
    const auto hi = theorem1_upper(p);
    ASSERT_GE(lo, r / 4 + 0.125L) << q;
    ASSERT_LT(lo - 1, r / 4 + 0.125L) << q;
    ASSERT_LT(hi, 2 * r - 1) << q;
    ASSERT_GE(hi + 1, 2 * r - 1) << q;
  }
}

TEST(SizeRange, LargePrime) {
  const auto r = admissible_size_range(Prime(1009));
  EXPECT_EQ(r.lower_a, 9);
  EXPECT_EQ(r.upper_a, 62);
  EXPECT_EQ(r.product_min, 504);
  EXPECT_TRUE(r.feasible);
}

TEST(SizeRange, SmallPrimesAreInfeasible) {
  for (auto q : primes_in(3, 31)) {
    const auto r = admissible_size_range(Prime(q));
    EXPECT_FALSE(r.feasible) << q;
    EXPECT_TRUE(r.lattice.empty());
  }
  EXPECT_TRUE(admissible_size_range(Prime(37)).feasible);
}

TEST(SizeRange, LatticeSatisfiesConstraints) {
  for (std::uint32_t q : {37u, 61u, 101u}) {
    const Prime p(q);
    const auto r = admissible_size_range(p);
    for (auto [a, b] : r.lattice) {
      EXPECT_GE(a, r.lower_a);
      EXPECT_LE(a, r.upper_a);
      EXPECT_GE(b, r.lower_a);
      EXPECT_LE(b, r.upper_a);
      EXPECT_GE(2 * a * b, q - 1);
      EXPECT_LE(static_cast<std::int64_t>(q) * a * b, (q - a) * (q - b));
    }
  }
  const auto r61 = admissible_size_range(Prime(61));
  ASSERT_FALSE(r61.lattice.empty());
  EXPECT_EQ(r61.lattice.front(), (std::pair<std::int64_t, std::int64_t>{5, 6}));
}

TEST(AdmissiblePairs, SingletonsAllowedWithoutTheoremRules) {
  const auto pairs = admissible_pairs(Prime(7), {1, 0, 1, 0});
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), std::pair<std::int64_t, std::int64_t>{1, 3}), pairs.end());
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), std::pair<std::int64_t, std::int64_t>{3, 1}), pairs.end());
}

TEST(Evaluators, FrozenValues) {
  EXPECT_NEAR(theorem2_lower_bound(Prime(1009)), 44.2269, 1e-4);
  EXPECT_NEAR(theorem2_lower_bound(Prime(37)), 7.1756, 1e-4);
  const auto t3 = theorem3_bounds(0.25, Prime(101));
  EXPECT_NEAR(t3.energy_min, 108.5786, 1e-4);
  EXPECT_NEAR(t3.size_min, 3.55317, 1e-5);
}

TEST(Evaluators, EndpointIdentities) {
  for (std::uint32_t q : {37u, 101u, 1009u}) {
    const Prime p(q);
    const auto t0 = theorem3_bounds(0, p);
    EXPECT_EQ(t0.energy_min, 2.0 * (q - 1));
    EXPECT_EQ(t0.size_min, std::sqrt(static_cast<double>(q)) / 2);
    const auto d = proposition_delta_bounds(1, p);
    EXPECT_DOUBLE_EQ(d.lower_a, std::sqrt((q - 1) / 2.0));
    EXPECT_DOUBLE_EQ(d.lower_a, d.lower_b);
    EXPECT_NEAR(d.lower_a / std::sqrt(q - 1.0), 1 / std::sqrt(2.0), 1e-15);
  }
}

TEST(Evaluators, DomainErrors) {
  const Prime p(101);
  EXPECT_THROW(theorem3_bounds(0.5, p), Error);
  EXPECT_THROW(theorem3_bounds(-0.1, p), Error);
  EXPECT_THROW(proposition_delta_bounds(0.125, p), Error);
  EXPECT_THROW(proposition_delta_bounds(1.5, p), Error);
  EXPECT_NO_THROW(proposition_delta_bounds(0.126, p));
}

TEST(TheoremTwoStep, HoldsFromThirtySeven) {
  EXPECT_GT(theorem2_step_margin(37), 0);
  EXPECT_NEAR(static_cast<double>(theorem2_step_margin(37)), 0.1385056 - 0.1381591, 2e-7);
  const auto rep = verify_theorem2_step(5000);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.smallest_passing, 37u);
  EXPECT_FALSE(rep.first_failure.has_value());
  EXPECT_EQ(rep.primes_checked, primes_in(37, 5000).size());
  EXPECT_THROW(verify_theorem2_step(36), Error);
}

TEST(ConditionalLemmas, HypothesisIsEnforced) {
  const Prime p(7);
  EXPECT_TRUE(check_subset_residues(FpSet(p, {1}), FpSet(p, {0, 1, 3})));
  EXPECT_FALSE(check_subset_residues(FpSet(p, {0, 1}), FpSet(p, {0, 1})));
  try {
    check_lemma_ab_bound(FpSet(p, {0, 1}), FpSet(p, {0, 1}));
    FAIL() << "expected HypothesisViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
  }
  EXPECT_THROW(check_lemma_p_ab(FpSet(p, {0}), FpSet(p, {0})), Error);
}

TEST(ConditionalLemmas, CertificateOnSingleton) {
  const Prime p(7);
  const auto cert = certify_pair(FpSet(p, {1}), FpSet(p, {0, 1, 3}));
  ASSERT_EQ(cert.named_checks.size(), 2u);
  EXPECT_EQ(cert.named_checks[0].name, "lemma_ab_bound");
  EXPECT_EQ(cert.named_checks[1].name, "lemma_p_ab");
  // p|A||B| = 21 <= (7-1)(7-3) = 24.
  EXPECT_EQ(cert.named_checks[1].lhs, 21);
  EXPECT_EQ(cert.named_checks[1].rhs, 24);
  EXPECT_TRUE(cert.all_passed);
}

TEST(ResidueInstances, LandInsideTheSquares) {
  for (std::uint32_t q : {31u, 101u, 499u}) {
    const Prime p(q);
    int built = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto inst = generate_residue_instance(p, 3, 2, seed);
      if (!inst) continue;
      ++built;
      EXPECT_EQ(inst->first.size(), 3u);
      EXPECT_EQ(inst->second.size(), 2u);
      EXPECT_TRUE(check_subset_residues(inst->first, inst->second));
      EXPECT_TRUE(certify_pair(inst->first, inst->second).all_passed);
      EXPECT_EQ(inst, generate_residue_instance(p, 3, 2, seed));
    }
    EXPECT_GT(built, 40);
  }
  // |A| + |B| - 1 <= |A + B| <= (p-1)/2 rules out large pairs.
  EXPECT_FALSE(generate_residue_instance(Prime(7), 3, 3, 1).has_value());
}
