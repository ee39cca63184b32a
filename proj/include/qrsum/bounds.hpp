#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrsum/field.hpp"

namespace qrsum {

struct CheckEntry {
  std::string name;
  double lhs;
  double rhs;
  bool passed;
};

struct BoundsCertificate {
  Prime modulus;
  std::vector<CheckEntry> named_checks;
  bool all_passed = true;

  void add(CheckEntry entry) {
    all_passed = all_passed && entry.passed;
    named_checks.push_back(std::move(entry));
  }
};

/// A + B ⊆ R_p.
bool check_subset_residues(const FpSet& a, const FpSet& b);

/// |B||A|(|A|+2)^2 <= 2 sqrt(p)(|A|^2-1)(|A|-2) - |A|^3 + 11|A| - 15 + p(3|A|+2).
/// Requires A + B ⊆ R_p, otherwise Error{HypothesisViolated}.
CheckEntry check_lemma_ab_bound(const FpSet& a, const FpSet& b);

/// p|A||B| <= (p - |A|)(p - |B|). Same hypothesis.
CheckEntry check_lemma_p_ab(const FpSet& a, const FpSet& b);

/// Both conditional lemmas for one pair.
BoundsCertificate certify_pair(const FpSet& a, const FpSet& b);

/// Greedy A + B ⊆ R_p instance: A is grown from elements that keep
/// C = ∩_{a in A} (R_p - a) at least nb strong, then B is drawn from C.
/// Returns nullopt when the construction gets stuck.
std::optional<std::pair<FpSet, FpSet>> generate_residue_instance(Prime p, std::size_t na, std::size_t nb,
                                                                 std::uint64_t seed);

struct SizeConstraints {
  std::int64_t min_a = 1;
  std::int64_t max_a = 0;  // inclusive; 0 means p
  std::int64_t min_b = 1;
  std::int64_t max_b = 0;
};

/// Lattice points (|A|, |B|) inside the constraints that also satisfy
/// |A||B| >= (p-1)/2 and p|A||B| <= (p-|A|)(p-|B|), sorted.
std::vector<std::pair<std::int64_t, std::int64_t>> admissible_pairs(Prime p, const SizeConstraints& c);

struct SizeRange {
  std::int64_t lower_a;
  std::int64_t upper_a;
  std::int64_t product_min;
  std::int64_t product_max;
  bool feasible;
  std::vector<std::pair<std::int64_t, std::int64_t>> lattice;
};

/// Sizes a decomposition A + B = R_p with |A|, |B| >= 2 would need.
SizeRange admissible_size_range(Prime p);

/// ceil(sqrt(p)/4 + 1/8), exactly.
std::int64_t theorem1_lower(Prime p);
/// Largest integer strictly below 2 sqrt(p) - 1, exactly.
std::int64_t theorem1_upper(Prime p);

/// sqrt(p)/log 2 - 1.6
double theorem2_lower_bound(Prime p);

struct Theorem3Bounds {
  double energy_min;
  double size_min;
};

/// Throws Error{EtaOutOfRange} unless 0 <= eta < 1/2.
Theorem3Bounds theorem3_bounds(double eta, Prime p);

struct DeltaBounds {
  double lower_a;
  double upper_a;
  double lower_b;
  double upper_b;
};

/// |A| = delta |B| with 1/8 < delta <= 1, otherwise Error{DeltaOutOfRange}.
DeltaBounds proposition_delta_bounds(double delta, Prime p);

struct Theorem2StepReport {
  bool holds = true;
  std::uint64_t primes_checked = 0;
  std::optional<std::uint32_t> first_failure;
  std::uint32_t smallest_passing = 0;  // 0 when no prime passes
  std::uint32_t tightest_prime = 0;
  long double min_margin = 0;          // min over primes of lhs - rhs
};

/// (1/2)log(p-1) + log(sqrt p + 1) - log p >= sqrt(p)/(p-1) - 1.6 log 2/(p-1)
/// for every prime 37 <= p <= p_max.
Theorem2StepReport verify_theorem2_step(std::int64_t p_max);
long double theorem2_step_margin(std::uint32_t p);

}  // namespace qrsum
