#include <gtest/gtest.h>

#include "qrsum/reference.hpp"
#include "qrsum/search.hpp"
#include "qrsum/sumset.hpp"

using namespace qrsum;

namespace {

SearchConfig unpruned(Prime p) {
  SearchConfig c{p};
  c.use_theorem1_pruning = false;
  c.use_lemma5_pruning = false;
  return c;
}

}  // namespace

TEST(Search, SingletonsAtSeven) {
  const Prime p(7);
  SearchConfig c{p};
  c.min_size_a = 1;
  c.min_size_b = 1;
  const auto report = search(c);
  EXPECT_TRUE(report.exhaustive);
  ASSERT_EQ(report.decompositions_found.size(), 14u);
  const Decomposition witness{{1}, {0, 1, 3}};
  EXPECT_NE(std::find(report.decompositions_found.begin(), report.decompositions_found.end(), witness),
            report.decompositions_found.end());
  const auto residues = residue_set(p);
  for (const auto& d : report.decompositions_found) {
    EXPECT_TRUE(d.a.size() == 1 || d.b.size() == 1);
    std::vector<std::int64_t> a(d.a.begin(), d.a.end()), b(d.b.begin(), d.b.end());
    EXPECT_EQ(build_profile(FpSet(p, a), FpSet(p, b)).support, residues);
  }
  EXPECT_TRUE(std::is_sorted(report.decompositions_found.begin(), report.decompositions_found.end()));
}

TEST(Search, SingletonCountIsTwoP) {
  for (std::uint32_t q : {5u, 11u, 13u}) {
    SearchConfig c{Prime(q)};
    c.min_size_a = 1;
    c.min_size_b = 1;
    EXPECT_EQ(search(c).decompositions_found.size(), 2 * q) << q;
  }
  SearchConfig c{Prime(3)};
  c.min_size_a = 1;
  c.min_size_b = 1;
  EXPECT_EQ(search(c).decompositions_found.size(), 3u);
}

TEST(Search, SmallPrimesSettleWithoutNodes) {
  for (auto q : primes_in(3, 23)) {
    const auto report = search(SearchConfig{Prime(q)});
    EXPECT_TRUE(report.decompositions_found.empty());
    EXPECT_TRUE(report.exhaustive);
    EXPECT_TRUE(report.size_range_empty);
    EXPECT_EQ(report.nodes_explored, 0u);
  }
}

// Prune rules never discard a valid branch: compare with a search that has
// no pruning at all, on a size window where singleton-free pairs would live.
TEST(Search, AgreesWithBruteForce) {
  for (std::uint32_t q : {7u, 11u, 13u}) {
    const Prime p(q);
    EXPECT_TRUE(reference::brute_force_decompositions(p, 2, 4).empty());
    EXPECT_TRUE(search(SearchConfig{p}).decompositions_found.empty());
    EXPECT_TRUE(search(unpruned(p)).decompositions_found.empty());
  }
  // Singleton mode exposes found pairs that both methods must list.
  for (std::uint32_t q : {7u, 11u}) {
    const Prime p(q);
    SearchConfig c{p};
    c.min_size_a = 1;
    c.min_size_b = 1;
    auto found = search(c).decompositions_found;
    // |A| + |B| - 1 <= |A + B| caps both sizes at (p - 1)/2.
    const auto brute = reference::brute_force_decompositions(p, 1, (q - 1) / 2);
    EXPECT_EQ(found, brute);
  }
}

TEST(Search, SymmetricAgreesWithBruteForce) {
  for (std::uint32_t q : {7u, 11u, 13u, 17u}) {
    const Prime p(q);
    EXPECT_TRUE(reference::brute_force_symmetric(p, 1, 6).empty());
    const auto r = search_symmetric(p, 2);
    EXPECT_TRUE(r.decompositions_found.empty());
    EXPECT_TRUE(r.exhaustive);
  }
  EXPECT_TRUE(search_symmetric(Prime(7), 1).decompositions_found.empty());
}

TEST(Search, PruningIsMonotone) {
  for (std::uint32_t q : {37u, 41u}) {
    const Prime p(q);
    auto none = unpruned(p);
    auto t1 = none;
    t1.use_theorem1_pruning = true;
    auto l5 = none;
    l5.use_lemma5_pruning = true;
    const auto r_none = search(none), r_t1 = search(t1), r_l5 = search(l5), r_all = search(SearchConfig{p});
    for (const auto* r : {&r_none, &r_t1, &r_l5, &r_all}) {
      EXPECT_TRUE(r->decompositions_found.empty());
      EXPECT_TRUE(r->exhaustive);
    }
    EXPECT_LE(r_t1.nodes_explored, r_none.nodes_explored);
    EXPECT_LE(r_l5.nodes_explored, r_none.nodes_explored);
    EXPECT_LE(r_all.nodes_explored, r_t1.nodes_explored);
    EXPECT_LE(r_all.nodes_explored, r_l5.nodes_explored);
  }
}

TEST(Search, WorkerCountDoesNotChangeReport) {
  for (std::uint32_t q : {13u, 37u, 43u}) {
    for (bool singles : {false, true}) {
      SearchConfig c{Prime(q)};
      if (singles) c.min_size_a = c.min_size_b = 1;
      c.worker_count = 1;
      const auto one = search(c);
      c.worker_count = 4;
      const auto four = search(c);
      EXPECT_EQ(one.decompositions_found, four.decompositions_found);
      EXPECT_EQ(one.nodes_explored, four.nodes_explored);
      EXPECT_EQ(one.prune_counts, four.prune_counts);
    }
  }
}

TEST(Search, NodeLimitMakesRunInconclusive) {
  SearchConfig c{Prime(61)};
  c.node_limit = 500;
  c.worker_count = 1;
  const auto r = search(c);
  EXPECT_FALSE(r.exhaustive);

  const auto rows = verify_conjecture_range(59, 61, c);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) EXPECT_EQ(row.verdict, Verdict::Inconclusive);
}

TEST(Search, PruneCountersAreRecorded) {
  const auto r = search(SearchConfig{Prime(43)});
  EXPECT_GT(r.nodes_explored, 0u);
  std::uint64_t prunes = 0;
  for (const auto& [key, n] : r.prune_counts) {
    EXPECT_TRUE(key == kPruneCandidateSet || key == kPruneCoverage || key == kPruneSizeCap || key == kPruneProductCap)
        << key;
    prunes += n;
  }
  EXPECT_GT(prunes, 0u);
}

TEST(VerifyRange, SmallRangeTable) {
  const auto rows = verify_conjecture_range(1, 40, SearchConfig{Prime(3)});
  const auto primes = primes_in(3, 40);
  ASSERT_EQ(rows.size(), primes.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].p, primes[i]);
    EXPECT_EQ(rows[i].verdict, Verdict::NoDecomposition);
    EXPECT_EQ(rows[i].report.config.min_size_a, 2);
    if (rows[i].p < 26) {
      EXPECT_EQ(rows[i].nodes, 0u);
    }
  }
  EXPECT_EQ(to_string(Verdict::NoDecomposition), "no-decomposition");
  EXPECT_EQ(to_string(Verdict::Found), "FOUND");
  EXPECT_EQ(to_string(Verdict::Inconclusive), "inconclusive");
}
