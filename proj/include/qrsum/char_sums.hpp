#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qrsum/field.hpp"

namespace qrsum {

/// Shift vector a = (a_1, ..., a_k) reduced mod p.
class KTuple {
 public:
  KTuple(Prime p, std::span<const std::int64_t> coords);
  KTuple(Prime p, std::initializer_list<std::int64_t> coords)
      : KTuple(p, std::span(coords.begin(), coords.size())) {}

  Prime modulus() const noexcept { return modulus_; }
  std::size_t k() const noexcept { return coords_.size(); }
  std::span<const std::uint32_t> coords() const noexcept { return coords_; }
  bool distinct() const noexcept { return distinct_; }

 private:
  Prime modulus_;
  std::vector<std::uint32_t> coords_;
  bool distinct_;
};

struct CharSumRecord {
  KTuple tuple;
  std::int64_t value;          // S_k(a; p), exact
  double normalized;           // value / sqrt(p)
  double shifted_normalized;   // (value + 1) / sqrt(p)
  std::optional<bool> weil_ok; // empty when coordinates collide
  std::optional<bool> wan_ok;  // empty unless distinct and k even
};

/// sum_x chi((x + a_1) ... (x + a_k)) via a character table; every
/// coordinate must already be reduced mod p.
std::int64_t char_sum_value(std::span<const std::uint32_t> coords, const LegendreTable& chi);

CharSumRecord char_sum(const KTuple& tuple, Prime p);
CharSumRecord char_sum(const KTuple& tuple, const LegendreTable& chi);

/// sum_x chi(prod_{i>=2} (1 + (a_i - a_1) x)), which equals S_k + 1.
std::int64_t shift_reduced_sum(const KTuple& tuple, Prime p);

/// |S_k| <= (k-1) sqrt(p), compared as S^2 <= (k-1)^2 p.
bool check_weil(const CharSumRecord& record, Prime p);

/// S_k <= (k-2) sqrt(p) - 1 for even k, compared in integers.
bool check_wan(const CharSumRecord& record, Prime p);

bool weil_holds(std::int64_t value, std::size_t k, Prime p) noexcept;
bool wan_holds(std::int64_t value, std::size_t k, Prime p) noexcept;

struct Exhaustive {};
struct Sampled {
  std::uint64_t count;
  std::uint64_t seed;
};
using EnumerationMode = std::variant<Exhaustive, Sampled>;

struct EnumerationOptions {
  std::uint64_t budget = 100'000'000;  // exhaustive tuple evaluations
  int workers = 0;
};

/// Multiset of exact sums S_k(a; p) over pairwise-distinct tuples.
/// Exhaustive runs fix a_1 = 0 by translation invariance and visit the
/// remaining coordinates as sorted combinations weighted by (k-1)!, so
/// counts are those of the ordered tuples with a_1 = 0.
struct SumDistribution {
  Prime modulus;
  std::size_t k;
  std::vector<std::uint64_t> counts;  // index value + p
  std::uint64_t total = 0;

  std::int64_t min_value() const;
  std::int64_t max_value() const;
  std::uint64_t count_of(std::int64_t value) const;
};

SumDistribution sum_distribution(std::size_t k, Prime p, const EnumerationMode& mode,
                                 const EnumerationOptions& options = {});

/// Number of sum evaluations an exhaustive run of (k, p) performs.
std::uint64_t exhaustive_evaluations(std::size_t k, Prime p);

struct CkEstimate {
  std::int64_t max_sum;  // exact maximum of S_k over the visited tuples
  double value;          // max_sum / sqrt(p); equals c_k(p) when exhaustive
  std::uint64_t tuples;
};

CkEstimate ck_empirical(std::size_t k, Prime p, const EnumerationMode& mode,
                        const EnumerationOptions& options = {});

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  double statistic_mean = 0;
  double statistic_variance = 0;
  double min_value = 0;
  double max_value = 0;
  std::optional<std::vector<double>> reference_density;  // at bin centers
};

/// Density of 2cos(theta) under the Sato-Tate measure (2/pi) sin^2(theta).
double semicircle_density(double t) noexcept;
double semicircle_cdf(double t) noexcept;

/// Histogram of (S_k + 1)/sqrt(p) on [-(k-2), k-2].
Histogram vertical_histogram(std::size_t k, Prime p, std::size_t bins, const EnumerationMode& mode,
                             const EnumerationOptions& options = {});
Histogram histogram_of(const SumDistribution& dist, std::size_t bins);

/// Sup-norm distance between the empirical CDF of (S + 1)/sqrt(p) and the
/// semicircle CDF.
double semicircle_discrepancy(const SumDistribution& dist);

struct SweepPoint {
  std::uint32_t p;
  std::int64_t sum;
  double shifted_normalized;
};

struct SweepResult {
  Histogram histogram;
  std::vector<SweepPoint> points;
  std::vector<std::uint32_t> skipped;  // primes where two shifts collide, and 2
};

/// Fixed integer shifts, p ranging over the primes in [p_lo, p_hi].
SweepResult horizontal_sweep(std::span<const std::int64_t> shifts, std::int64_t p_lo, std::int64_t p_hi,
                             std::size_t bins, int workers = 0);

/// |sum_{s in S} e(psi s / p)|^2 for psi = 0 .. p-1.
std::vector<double> additive_char_power(const FpSet& set, int workers = 0);

}  // namespace qrsum
