#include "qrsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrsum/error.hpp"
#include "qrsum/rng.hpp"

namespace qrsum {

namespace {

void require_hypothesis(const FpSet& a, const FpSet& b) {
  if (!check_subset_residues(a, b))
    throw Error(ErrorCode::HypothesisViolated, "A + B is not contained in the quadratic residues");
}

// lhs <= r0 + 2 sqrt(p) q, decided in integers.
bool leq_with_root_term(__int128 lhs, __int128 r0, __int128 q, std::int64_t p) {
  const __int128 d = lhs - r0;
  const __int128 four_p_q2 = 4 * static_cast<__int128>(p) * q * q;
  if (q >= 0) return d <= 0 || d * d <= four_p_q2;
  return d <= 0 && d * d >= four_p_q2;
}

}  // namespace

bool check_subset_residues(const FpSet& a, const FpSet& b) {
  if (a.modulus() != b.modulus()) throw Error(ErrorCode::ModulusMismatch, "sets live in different fields");
  const BitVec residues = residue_set(a.modulus()).bits();
  bool ok = true;
  a.bits().for_each([&](std::size_t x) {
    if (ok) ok = b.bits().rotated(x).subset_of(residues);
  });
  return ok;
}

CheckEntry check_lemma_ab_bound(const FpSet& a, const FpSet& b) {
  require_hypothesis(a, b);
  const std::int64_t p = a.modulus().value();
  const __int128 na = static_cast<std::int64_t>(a.size());
  const __int128 nb = static_cast<std::int64_t>(b.size());
  const __int128 lhs = nb * na * (na + 2) * (na + 2);
  const __int128 q = (na * na - 1) * (na - 2);
  const __int128 r0 = -na * na * na + 11 * na - 15 + static_cast<__int128>(p) * (3 * na + 2);
  const double rhs = static_cast<double>(r0) + 2 * std::sqrt(static_cast<double>(p)) * static_cast<double>(q);
  return {"lemma_ab_bound", static_cast<double>(lhs), rhs, leq_with_root_term(lhs, r0, q, p)};
}

CheckEntry check_lemma_p_ab(const FpSet& a, const FpSet& b) {
  require_hypothesis(a, b);
  const std::int64_t p = a.modulus().value();
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  const std::int64_t lhs = p * na * nb;
  const std::int64_t rhs = (p - na) * (p - nb);
  return {"lemma_p_ab", static_cast<double>(lhs), static_cast<double>(rhs), lhs <= rhs};
}

BoundsCertificate certify_pair(const FpSet& a, const FpSet& b) {
  BoundsCertificate cert{a.modulus(), {}, true};
  cert.add(check_lemma_ab_bound(a, b));
  cert.add(check_lemma_p_ab(a, b));
  return cert;
}

std::optional<std::pair<FpSet, FpSet>> generate_residue_instance(Prime p, std::size_t na, std::size_t nb,
                                                                 std::uint64_t seed) {
  if (na == 0 || nb == 0) throw Error(ErrorCode::InvalidArgument, "instance sizes must be positive");
  const std::uint32_t n = p.value();
  const BitVec residues = residue_set(p).bits();
  Rng rng = make_stream(seed, 0);

  FpSet a(p);
  BitVec pool(n);
  pool.fill();
  std::vector<std::uint32_t> candidates;
  std::vector<BitVec> next_pools;
  while (a.size() < na) {
    candidates.clear();
    next_pools.clear();
    for (std::uint32_t x = 0; x < n; ++x) {
      if (a.contains(x)) continue;
      BitVec next = pool & residues.rotated(n - x);  // R_p - x
      if (next.count() >= nb) {
        candidates.push_back(x);
        next_pools.push_back(std::move(next));
      }
    }
    if (candidates.empty()) return std::nullopt;
    const auto pick = static_cast<std::size_t>(uniform_below(rng, candidates.size()));
    a.insert(candidates[pick]);
    pool = std::move(next_pools[pick]);
  }

  std::vector<std::uint32_t> members;
  pool.for_each([&](std::size_t x) { members.push_back(static_cast<std::uint32_t>(x)); });
  FpSet b(p);
  for (std::size_t i = 0; i < nb; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, members.size() - i));
    std::swap(members[i], members[j]);
    b.insert(members[i]);
  }
  return std::make_pair(std::move(a), std::move(b));
}

std::vector<std::pair<std::int64_t, std::int64_t>> admissible_pairs(Prime p, const SizeConstraints& c) {
  const std::int64_t n = p.value();
  const std::int64_t max_a = c.max_a > 0 ? std::min(c.max_a, n) : n;
  const std::int64_t max_b = c.max_b > 0 ? std::min(c.max_b, n) : n;
  const std::int64_t half = (n - 1) / 2;
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t a = std::max<std::int64_t>(c.min_a, 1); a <= max_a; ++a) {
    const std::int64_t b0 = std::max<std::int64_t>({c.min_b, 1, (half + a - 1) / a});
    for (std::int64_t b = b0; b <= max_b; ++b) {
      // p|A||B| <= (p-|A|)(p-|B|) only tightens as |B| grows.
      if (n * a * b > (n - a) * (n - b)) break;
      out.emplace_back(a, b);
    }
  }
  return out;
}

std::int64_t theorem1_lower(Prime p) {
  // smallest L with 8L - 1 >= 2 sqrt(p)
  const std::int64_t four_p = 4 * static_cast<std::int64_t>(p.value());
  std::int64_t l = 1;
  while ((8 * l - 1) * (8 * l - 1) < four_p) ++l;
  return l;
}

std::int64_t theorem1_upper(Prime p) {
  // largest U with (U + 1)^2 < 4p
  const std::int64_t four_p = 4 * static_cast<std::int64_t>(p.value());
  std::int64_t u = static_cast<std::int64_t>(std::sqrt(static_cast<double>(four_p)));
  while ((u + 1) * (u + 1) >= four_p) --u;
  while ((u + 2) * (u + 2) < four_p) ++u;
  return u;
}

SizeRange admissible_size_range(Prime p) {
  SizeRange r;
  r.lower_a = std::max<std::int64_t>(5, theorem1_lower(p));
  r.upper_a = theorem1_upper(p);
  r.product_min = (static_cast<std::int64_t>(p.value()) - 1) / 2;
  r.product_max = static_cast<std::int64_t>(p.value()) - 1;
  if (r.lower_a <= r.upper_a) r.lattice = admissible_pairs(p, {r.lower_a, r.upper_a, r.lower_a, r.upper_a});
  r.feasible = r.lower_a <= r.upper_a && r.product_min <= r.product_max && !r.lattice.empty();
  return r;
}

double theorem2_lower_bound(Prime p) { return std::sqrt(static_cast<double>(p.value())) / std::numbers::ln2 - 1.6; }

Theorem3Bounds theorem3_bounds(double eta, Prime p) {
  if (!(eta >= 0 && eta < 0.5)) throw Error(ErrorCode::EtaOutOfRange, "eta must lie in [0, 1/2)");
  const double pm1 = static_cast<double>(p.value()) - 1;
  const double num = std::exp2(2 - 4 * eta) - std::exp2(3 - 2 * eta) * eta + 4 * eta - 1;
  return {(0.5 + num / (2 - 4 * eta)) * pm1, std::sqrt(static_cast<double>(p.value())) / (2 * std::pow(4.0, eta))};
}

DeltaBounds proposition_delta_bounds(double delta, Prime p) {
  if (!(delta > 0.125 && delta <= 1)) throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in (1/8, 1]");
  const double pm1 = static_cast<double>(p.value()) - 1;
  const double root = std::sqrt(pm1);
  return {std::sqrt(delta * pm1 / 2), std::min(2 * delta, std::sqrt(delta)) * root, std::sqrt(pm1 / (2 * delta)),
          std::min(2.0, 1 / std::sqrt(delta)) * root};
}

long double theorem2_step_margin(std::uint32_t p) {
  const long double q = p;
  const long double root = std::sqrt(q);
  const long double lhs = 0.5L * std::log(q - 1) + std::log(root + 1) - std::log(q);
  const long double rhs = root / (q - 1) - 1.6L * std::numbers::ln2_v<long double> / (q - 1);
  return lhs - rhs;
}

Theorem2StepReport verify_theorem2_step(std::int64_t p_max) {
  if (p_max < 37) throw Error(ErrorCode::InvalidArgument, "p_max must be at least 37");
  Theorem2StepReport rep;
  for (auto q : primes_in(37, p_max)) {
    const long double margin = theorem2_step_margin(q);
    if (rep.primes_checked == 0 || margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.tightest_prime = q;
    }
    ++rep.primes_checked;
    if (margin >= 0) {
      if (rep.smallest_passing == 0) rep.smallest_passing = q;
    } else {
      rep.holds = false;
      if (!rep.first_failure) rep.first_failure = q;
    }
  }
  return rep;
}

}  // namespace qrsum
