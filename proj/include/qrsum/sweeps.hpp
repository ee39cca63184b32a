#pragma once

#include <array>
#include <cstdint>

#include "qrsum/field.hpp"

namespace qrsum {

inline constexpr std::array<double, 3> kSweepThetas = {0.5, 1.0, 2.0};

/// Unconditional inequalities on seeded random pairs.
struct UnconditionalSweep {
  std::uint32_t p = 0;
  std::uint64_t pairs = 0;
  std::array<std::uint64_t, kSweepThetas.size()> holder_failures{};
  std::array<std::uint64_t, kSweepThetas.size()> kappa_one_failures{};
  std::uint64_t kappa_two_failures = 0;
  std::uint64_t tau_failures = 0;
  std::uint64_t chain_failures = 0;
  std::uint64_t energy_checked = 0;  // pairs small enough for the quadruple count
  std::uint64_t energy_mismatches = 0;

  std::uint64_t failures() const;
};

/// Pair i uses subset streams 2i and 2i+1 of `seed`; cardinalities are
/// uniform in [2, min(p-1, 40)].
UnconditionalSweep sweep_unconditional(Prime p, std::uint64_t pairs, std::uint64_t seed, int workers = 0);

/// Conditional lemmas on generate_residue_instance output.
struct ConditionalSweep {
  std::uint32_t p = 0;
  std::uint64_t requested = 0;
  std::uint64_t generated = 0;
  std::uint64_t construction_failures = 0;
  std::uint64_t ab_bound_failures = 0;
  std::uint64_t p_ab_failures = 0;

  std::uint64_t failures() const { return ab_bound_failures + p_ab_failures; }
};

/// Instance i draws |A| in [1, max(2, floor(log2 p) - 2)] and
/// |B| in [1, max(1, (p-1)/2^{|A|+1})] from stream i of `seed`, then retries
/// failed constructions with fresh seeds, up to 20 attempts.
ConditionalSweep sweep_conditional(Prime p, std::uint64_t instances, std::uint64_t seed, int workers = 0);

}  // namespace qrsum
