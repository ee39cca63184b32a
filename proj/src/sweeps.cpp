#include "qrsum/sweeps.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "qrsum/bounds.hpp"
#include "qrsum/parallel.hpp"
#include "qrsum/reference.hpp"
#include "qrsum/rng.hpp"
#include "qrsum/sumset.hpp"

namespace qrsum {

namespace {

constexpr std::size_t kEnergyBruteLimit = 12;
constexpr int kAttemptsPerInstance = 20;

bool chain_holds(const RepProfile& prof, const FpSet& a, const FpSet& b) {
  return 0 <= prof.unique_count && prof.unique_count <= prof.m0 && prof.m0 <= prof.m1 && prof.m1 <= prof.energy &&
         prof.m1 == static_cast<std::int64_t>(a.size() * b.size());
}

}  // namespace

std::uint64_t UnconditionalSweep::failures() const {
  std::uint64_t total = kappa_two_failures + tau_failures + chain_failures + energy_mismatches;
  for (auto f : holder_failures) total += f;
  for (auto f : kappa_one_failures) total += f;
  return total;
}

UnconditionalSweep sweep_unconditional(Prime p, std::uint64_t pairs, std::uint64_t seed, int workers) {
  const std::size_t hi = std::min<std::size_t>(p.value() - 1, 40);
  std::vector<UnconditionalSweep> per_pair(pairs);

#pragma omp parallel for schedule(dynamic, 8) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs); ++i) {
    auto& out = per_pair[i];
    const FpSet a = random_subset(p, 2, hi, seed, 2 * i);
    const FpSet b = random_subset(p, 2, hi, seed, 2 * i + 1);
    const RepProfile prof = build_profile(a, b);
    for (std::size_t t = 0; t < kSweepThetas.size(); ++t) {
      out.holder_failures[t] += !check_holder(prof, kSweepThetas[t]);
      out.kappa_one_failures[t] += !check_kappa_one(prof, kSweepThetas[t]);
    }
    out.kappa_two_failures += !check_kappa_two(prof);
    out.tau_failures += !check_tau_bound(prof);
    out.chain_failures += !chain_holds(prof, a, b);
    if (a.size() <= kEnergyBruteLimit && b.size() <= kEnergyBruteLimit) {
      ++out.energy_checked;
      out.energy_mismatches += reference::additive_energy(a, b) != prof.energy;
    }
  }

  UnconditionalSweep total;
  total.p = p.value();
  total.pairs = pairs;
  for (const auto& s : per_pair) {
    for (std::size_t t = 0; t < kSweepThetas.size(); ++t) {
      total.holder_failures[t] += s.holder_failures[t];
      total.kappa_one_failures[t] += s.kappa_one_failures[t];
    }
    total.kappa_two_failures += s.kappa_two_failures;
    total.tau_failures += s.tau_failures;
    total.chain_failures += s.chain_failures;
    total.energy_checked += s.energy_checked;
    total.energy_mismatches += s.energy_mismatches;
  }
  return total;
}

ConditionalSweep sweep_conditional(Prime p, std::uint64_t instances, std::uint64_t seed, int workers) {
  const std::uint32_t n = p.value();
  const std::int64_t a_cap = std::max<std::int64_t>(2, std::bit_width(n) - 1 - 2);
  std::vector<ConditionalSweep> per_instance(instances);

#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(instances); ++i) {
    auto& out = per_instance[i];
    Rng rng = make_stream(seed, i);
    const auto na = static_cast<std::size_t>(uniform_between(rng, 1, a_cap));
    const std::int64_t b_cap = std::max<std::int64_t>(1, (n - 1) >> (na + 1));
    const auto nb = static_cast<std::size_t>(uniform_between(rng, 1, b_cap));
    for (int attempt = 0; attempt < kAttemptsPerInstance; ++attempt) {
      auto inst = generate_residue_instance(p, na, nb, rng());
      if (!inst) {
        ++out.construction_failures;
        continue;
      }
      ++out.generated;
      out.ab_bound_failures += !check_lemma_ab_bound(inst->first, inst->second).passed;
      out.p_ab_failures += !check_lemma_p_ab(inst->first, inst->second).passed;
      break;
    }
  }

  ConditionalSweep total;
  total.p = n;
  total.requested = instances;
  for (const auto& s : per_instance) {
    total.generated += s.generated;
    total.construction_failures += s.construction_failures;
    total.ab_bound_failures += s.ab_bound_failures;
    total.p_ab_failures += s.p_ab_failures;
  }
  return total;
}

}  // namespace qrsum
