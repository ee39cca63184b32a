#include "qrsum/sumset.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "qrsum/error.hpp"
#include "qrsum/rng.hpp"

namespace qrsum {

namespace {

// base^exp when it fits comfortably in 120 bits.
std::optional<__int128> pow128(std::int64_t base, unsigned exp) {
  __int128 r = 1;
  const double bits = exp * std::log2(static_cast<double>(base) + 1);
  if (bits > 120) return std::nullopt;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_small_positive_integer(double theta) {
  return theta >= 1 && theta <= 16 && theta == std::floor(theta);
}

bool leq_rel(long double lhs, long double rhs) { return lhs <= rhs + kRelTol * std::fabs(rhs); }

}  // namespace

RepProfile build_profile(const FpSet& a, const FpSet& b) {
  if (a.modulus() != b.modulus()) throw Error(ErrorCode::ModulusMismatch, "sets live in different fields");
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "sumset of an empty set");
  const Prime p = a.modulus();
  const std::uint32_t n = p.value();
  RepProfile prof{p, FpSet(p), std::vector<std::uint32_t>(n, 0)};
  const auto bs = b.elements();
  a.bits().for_each([&](std::size_t x) {
    for (auto y : bs) {
      std::size_t s = x + y;
      if (s >= n) s -= n;
      ++prof.rep_counts[s];
    }
  });
  BitVec support(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::int64_t r = prof.rep_counts[x];
    if (!r) continue;
    support.set(x);
    ++prof.m0;
    prof.m1 += r;
    prof.energy += r * r;
    if (r == 1) ++prof.unique_count;
  }
  prof.support = FpSet(p, std::move(support));
  return prof;
}

double moment(const RepProfile& profile, double theta) {
  if (theta == 0) return static_cast<double>(profile.m0);
  if (theta == 1) return static_cast<double>(profile.m1);
  if (theta == 2) return static_cast<double>(profile.energy);
  long double s = 0;
  for (auto r : profile.rep_counts)
    if (r) s += std::pow(static_cast<long double>(r), static_cast<long double>(theta));
  return static_cast<double>(s);
}

bool check_holder(const RepProfile& profile, double theta) {
  if (!(theta > 0)) throw Error(ErrorCode::InvalidArgument, "Hoelder check needs theta > 0");
  const long double t = theta;
  const long double m1 = profile.m1;
  const long double m_neg = moment(profile, -theta);
  const long double rhs = std::pow(m1, t / (t + 1)) * std::pow(m_neg, 1 / (t + 1));
  return leq_rel(static_cast<long double>(profile.m0), rhs);
}

bool check_kappa_one(const RepProfile& profile, double theta) {
  if (!(theta > 0)) throw Error(ErrorCode::InvalidArgument, "kappa-one check needs theta > 0");
  const std::int64_t m0 = profile.m0, m1 = profile.m1, u = profile.unique_count;
  if (is_small_positive_integer(theta)) {
    const auto th = static_cast<unsigned>(theta);
    const std::int64_t two_th = std::int64_t{1} << th;
    const auto m0_pow = pow128(m0, th + 1);
    const auto m1_pow = pow128(m1, th);
    const std::int64_t tail = m0 + (two_th - 1) * u;
    const double rhs_bits = th * std::log2(static_cast<double>(m1) + 1) + std::log2(static_cast<double>(tail) + 1);
    if (m0_pow && m1_pow && th + 1 + (th + 1) * std::log2(static_cast<double>(m0) + 1) < 120 && rhs_bits < 120)
      return two_th * *m0_pow <= *m1_pow * tail;
  }
  const long double t = theta;
  const long double two_t = std::pow(2.0L, t);
  const long double lhs = two_t * std::pow(static_cast<long double>(m0), t + 1);
  const long double rhs = std::pow(static_cast<long double>(m1), t) * (m0 + (two_t - 1) * u);
  return leq_rel(lhs, rhs);
}

bool check_kappa_two(const RepProfile& profile) {
  const __int128 u = profile.unique_count;
  const __int128 d = profile.m1 - u;
  return d * d <= (profile.energy - u) * (profile.m0 - u);
}

bool check_tau_bound(const RepProfile& profile) {
  const long double tau = static_cast<long double>(profile.unique_count) / profile.m0;
  const long double rhs = std::pow(2.0L, 1 - tau) * profile.m0;
  return leq_rel(rhs, static_cast<long double>(profile.m1));
}

FpSet random_subset(Prime p, std::size_t lo, std::size_t hi, std::uint64_t seed, std::uint64_t stream) {
  const std::uint32_t n = p.value();
  if (lo == 0 || lo > hi || hi > n) throw Error(ErrorCode::InvalidArgument, "subset size range must lie in [1, p]");
  Rng rng = make_stream(seed, stream);
  const auto size = static_cast<std::size_t>(uniform_between(rng, static_cast<std::int64_t>(lo),
                                                             static_cast<std::int64_t>(hi)));
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  FpSet out(p);
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
    out.insert(pool[i]);
  }
  return out;
}

}  // namespace qrsum
