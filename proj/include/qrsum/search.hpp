#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qrsum/field.hpp"

namespace qrsum {

struct SearchConfig {
  Prime modulus;
  std::int64_t min_size_a = 2;
  std::int64_t min_size_b = 2;
  // Theorem-derived rules only fire when both minimum sizes are >= 2,
  // which is the hypothesis they are proved under.
  bool use_theorem1_pruning = true;
  bool use_lemma5_pruning = true;
  bool symmetric_only = false;
  std::uint64_t node_limit = 1'000'000'000;
  int worker_count = 0;
};

struct Decomposition {
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
  friend auto operator<=>(const Decomposition&, const Decomposition&) = default;
};

// Prune reason keys.
inline constexpr const char* kPruneCandidateSet = "candidate-set-too-small";
inline constexpr const char* kPruneCoverage = "coverage-impossible";
inline constexpr const char* kPruneSizeCap = "size-cap";
inline constexpr const char* kPruneProductCap = "product-cap";

/// Outcome of one exhaustive run.
///
/// A node is one partial set A visited by the outer walk, or one
/// include/exclude decision of the inner walk over B. Symmetric runs only
/// have outer nodes.
struct SearchReport {
  SearchConfig config;
  std::vector<Decomposition> decompositions_found;  // sorted, each re-verified
  std::uint64_t nodes_explored = 0;
  std::map<std::string, std::uint64_t> prune_counts;
  bool exhaustive = true;
  bool size_range_empty = false;  // settled before any node was expanded
};

/// Depth-first branch-and-bound over A in increasing element order with
/// candidate pool C = ∩_{a in A} (R_p - a); every B ⊆ C with A + B = R_p
/// is reported. Top-level branches (first two elements of A) are spread over
/// worker_count OpenMP threads and merged in branch order.
SearchReport search(const SearchConfig& config);

/// search() restricted to B = A.
SearchReport search_symmetric(Prime p, std::int64_t min_size, const SearchConfig& base);
SearchReport search_symmetric(Prime p, std::int64_t min_size);

enum class Verdict { NoDecomposition, Found, Inconclusive };
std::string_view to_string(Verdict v);

struct RangeRow {
  std::uint32_t p;
  Verdict verdict;
  std::uint64_t nodes;
  double seconds;
  SearchReport report;
};

/// search() with min sizes (2, 2) for every odd prime in [p_min, p_max];
/// the template supplies everything except the modulus and minimum sizes.
std::vector<RangeRow> verify_conjecture_range(std::int64_t p_min, std::int64_t p_max, const SearchConfig& templ);

}  // namespace qrsum
