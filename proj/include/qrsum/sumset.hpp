#pragma once

#include <cstdint>
#include <vector>

#include "qrsum/field.hpp"

namespace qrsum {

/// Representation function r(x) = #{(a, b) in A x B : a + b = x} of a pair,
/// with its moments: m0 = |A+B|, m1 = |A||B|, energy = E(A,B) = M_2 and
/// unique_count = #{x : r(x) = 1}.
struct RepProfile {
  Prime modulus;
  FpSet support;
  std::vector<std::uint32_t> rep_counts;  // dense, length p
  std::int64_t m0 = 0;
  std::int64_t m1 = 0;
  std::int64_t energy = 0;
  std::int64_t unique_count = 0;
};

/// Throws Error{EmptySet} or Error{ModulusMismatch}.
RepProfile build_profile(const FpSet& a, const FpSet& b);

/// sum over A+B of r(x)^theta; exact for theta in {0, 1, 2}.
double moment(const RepProfile& profile, double theta);

/// M_0 <= M_1^{theta/(theta+1)} M_{-theta}^{1/(theta+1)}, theta > 0.
bool check_holder(const RepProfile& profile, double theta);

/// 2^theta M_0^{theta+1} <= M_1^theta (M_0 + (2^theta - 1) U), theta > 0.
bool check_kappa_one(const RepProfile& profile, double theta);

/// (M_1 - U)^2 <= (E - U)(M_0 - U), in integers.
bool check_kappa_two(const RepProfile& profile);

/// M_1 >= 2^{1 - tau} M_0 with tau = U / M_0.
bool check_tau_bound(const RepProfile& profile);

/// Relative tolerance for the real-valued inequality checks.
inline constexpr double kRelTol = 1e-9;

/// Random nonempty subset with uniform cardinality in [lo, hi].
FpSet random_subset(Prime p, std::size_t lo, std::size_t hi, std::uint64_t seed, std::uint64_t stream);

}  // namespace qrsum
