#pragma once

// Serial, deliberately naive counterparts of the parallel kernels. They share
// no code with the fast paths beyond the Prime/FpSet value types and exist so
// tests and benchmarks have something independent to compare against.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qrsum/field.hpp"
#include "qrsum/search.hpp"

namespace qrsum::reference {

/// Euler's criterion on the full product (x + a_1)...(x + a_k) mod p.
std::int64_t char_sum(std::span<const std::int64_t> shifts, Prime p);

/// Histogram of S_k over all ordered pairwise-distinct tuples with a_1 = 0,
/// one evaluation per tuple.
std::map<std::int64_t, std::uint64_t> sum_distribution(std::size_t k, Prime p);

/// max S_k over every ordered pairwise-distinct tuple in F_p^k.
std::int64_t max_char_sum(std::size_t k, Prime p);

/// r(x) = #{a in A : x - a in B}.
std::vector<std::uint32_t> representation_counts(const FpSet& a, const FpSet& b);

/// #{(a1, a2, b1, b2) : a1 + b1 = a2 + b2}.
std::int64_t additive_energy(const FpSet& a, const FpSet& b);

/// sum_{s in S} exp(2 pi i psi s / p), term by term.
std::vector<std::complex<double>> additive_char_sums(const FpSet& set);

/// Every (A, B) with sizes in [lo, hi] and A + B = R_p, by exhaustive
/// enumeration of both sets with no pruning at all.
std::vector<Decomposition> brute_force_decompositions(Prime p, std::size_t lo, std::size_t hi);

/// Every A with |A| in [lo, hi] and A + A = R_p.
std::vector<std::vector<std::uint32_t>> brute_force_symmetric(Prime p, std::size_t lo, std::size_t hi);

}  // namespace qrsum::reference
