#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qrsum/bitvec.hpp"

namespace qrsum {

/// An odd prime modulus below 2^31, so products of two residues fit in 64 bits.
class Prime {
 public:
  static constexpr std::int64_t kMaxValue = (std::int64_t{1} << 31) - 1;

  /// Throws Error{EvenInput} for 2, Error{CompositeInput} for composites and
  /// Error{OutOfRange} outside [3, 2^31).
  explicit Prime(std::int64_t n);

  std::uint32_t value() const noexcept { return value_; }
  std::int64_t half() const noexcept { return (value_ - 1) / 2; }
  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t value_;
};

Prime validate_prime(std::int64_t n);
bool is_prime(std::int64_t n);

/// All primes in [lo, hi] by sieve.
std::vector<std::uint32_t> primes_in(std::int64_t lo, std::int64_t hi);

class FpElement {
 public:
  /// Reduces any integer into [0, p).
  FpElement(std::int64_t x, Prime p);

  std::uint32_t residue() const noexcept { return residue_; }
  Prime modulus() const noexcept { return modulus_; }

 private:
  std::uint32_t residue_;
  Prime modulus_;
};

std::uint32_t reduce(std::int64_t x, std::uint32_t p) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) noexcept;

/// Legendre symbol by Euler's criterion.
int legendre(FpElement x);
int legendre(std::int64_t x, Prime p);

/// Quadratic character for every residue, laid out twice so that
/// chi[x + a] needs no reduction for x, a < p.
class LegendreTable {
 public:
  explicit LegendreTable(Prime p);

  Prime modulus() const noexcept { return p_; }
  std::int8_t operator[](std::size_t i) const noexcept { return chi_[i]; }
  std::span<const std::int8_t> doubled() const noexcept { return chi_; }

 private:
  Prime p_;
  std::vector<std::int8_t> chi_;
};

/// Subset of F_p with O(1) membership and a cached cardinality.
class FpSet {
 public:
  explicit FpSet(Prime p) : modulus_(p), bits_(p.value()) {}
  FpSet(Prime p, std::initializer_list<std::int64_t> elems) : FpSet(p, std::span(elems.begin(), elems.size())) {}
  FpSet(Prime p, std::span<const std::int64_t> elems);
  FpSet(Prime p, BitVec bits);

  static FpSet full(Prime p);

  Prime modulus() const noexcept { return modulus_; }
  std::size_t size() const noexcept { return cardinality_; }
  bool empty() const noexcept { return cardinality_ == 0; }
  bool contains(std::uint32_t x) const noexcept { return x < bits_.size() && bits_.test(x); }
  const BitVec& bits() const noexcept { return bits_; }

  void insert(std::int64_t x);
  void erase(std::int64_t x);

  /// Sorted members.
  std::vector<std::uint32_t> elements() const;

  /// { s + t : s in this }
  FpSet translated(std::int64_t t) const;

  friend bool operator==(const FpSet& a, const FpSet& b) {
    return a.modulus_ == b.modulus_ && a.bits_ == b.bits_;
  }

 private:
  Prime modulus_;
  BitVec bits_;
  std::size_t cardinality_ = 0;
};

/// R_p, the nonzero squares mod p; 0 is excluded so |R_p| = (p-1)/2.
FpSet residue_set(Prime p);

}  // namespace qrsum
