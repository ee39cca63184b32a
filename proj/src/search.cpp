#include "qrsum/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <limits>

#include "qrsum/bounds.hpp"
#include "qrsum/error.hpp"
#include "qrsum/parallel.hpp"
#include "qrsum/sumset.hpp"

namespace qrsum {

namespace {

enum Reason : std::size_t { kCandidate, kCoverage, kSizeCap, kProductCap, kReasonCount };
constexpr std::array<const char*, kReasonCount> kReasonNames = {kPruneCandidateSet, kPruneCoverage, kPruneSizeCap,
                                                                kPruneProductCap};
constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
constexpr std::uint64_t kFlushEvery = 1024;

// Size bounds that hold under the active rules, per |A|.
struct Plan {
  Prime p;
  std::uint32_t n;
  std::int64_t half;
  BitVec residues;
  std::vector<BitVec> residues_minus;  // R_p - x
  std::vector<std::int64_t> bmin, bmax;  // indexed by |A|; bmax == 0 when |A| is inadmissible
  std::vector<std::int64_t> need_b;      // min bmin over sizes >= |A|
  std::int64_t a_min = kNever;
  std::int64_t a_max = 0;
  bool empty = true;
};

Plan make_plan(const SearchConfig& cfg) {
  const Prime p = cfg.modulus;
  Plan plan{p, p.value(), (static_cast<std::int64_t>(p.value()) - 1) / 2, residue_set(p).bits(), {}, {}, {}, {}};
  const std::uint32_t n = plan.n;
  plan.residues_minus.reserve(n);
  for (std::uint32_t x = 0; x < n; ++x) plan.residues_minus.push_back(plan.residues.rotated(n - x));

  SizeConstraints c{cfg.min_size_a, 0, cfg.min_size_b, 0};
  if (cfg.symmetric_only) c.min_a = c.min_b = std::max(cfg.min_size_a, cfg.min_size_b);
  if (c.min_a >= 2 && c.min_b >= 2) {
    if (cfg.use_lemma5_pruning) {
      c.min_a = std::max<std::int64_t>(c.min_a, 5);
      c.min_b = std::max<std::int64_t>(c.min_b, 5);
    }
    if (cfg.use_theorem1_pruning) {
      const std::int64_t lo = theorem1_lower(p), hi = theorem1_upper(p);
      c.min_a = std::max(c.min_a, lo);
      c.min_b = std::max(c.min_b, lo);
      c.max_a = c.max_b = hi;
    }
  }
  plan.bmin.assign(n + 2, kNever);
  plan.bmax.assign(n + 2, 0);
  plan.need_b.assign(n + 3, kNever);
  for (auto [a, b] : admissible_pairs(p, c)) {
    if (cfg.symmetric_only && a != b) continue;
    plan.bmin[a] = std::min(plan.bmin[a], b);
    plan.bmax[a] = std::max(plan.bmax[a], b);
    plan.a_min = std::min(plan.a_min, a);
    plan.a_max = std::max(plan.a_max, a);
    plan.empty = false;
  }
  for (std::int64_t s = n + 1; s >= 0; --s) plan.need_b[s] = std::min(plan.need_b[s + 1], plan.bmin[s]);
  return plan;
}

BitVec translate_set(const std::vector<std::uint32_t>& a, std::uint32_t t, std::uint32_t n) {
  BitVec out(n);
  for (auto x : a) {
    std::uint32_t y = x + t;
    if (y >= n) y -= n;
    out.set(y);
  }
  return out;
}

class Worker {
 public:
  Worker(const Plan& plan, std::uint64_t limit, std::atomic<std::uint64_t>& global, std::atomic<bool>& abort)
      : plan_(plan), limit_(limit), global_(global), abort_(abort) {}

  std::vector<Decomposition> found;
  std::uint64_t nodes = 0;
  std::array<std::uint64_t, kReasonCount> prunes{};

  void run_general(std::uint32_t a1, std::int64_t a2) {
    std::vector<std::uint32_t> a{a1};
    const BitVec& pool = plan_.residues_minus[a1];
    if (a2 < 0) {
      visit_general(a, pool, a1, false);
      if (plan_.a_max < 2 && a1 + 1 < plan_.n) ++prunes[kSizeCap];
      return;
    }
    if (plan_.a_max < 2) return;
    BitVec next = pool & plan_.residues_minus[a2];
    if (!admit_child(1, static_cast<std::uint32_t>(a2), next.count())) return;
    a.push_back(static_cast<std::uint32_t>(a2));
    visit_general(a, next, static_cast<std::uint32_t>(a2), true);
  }

  void run_symmetric(std::uint32_t a1, std::int64_t a2, const BitVec& doubles) {
    const std::uint32_t n = plan_.n;
    std::vector<std::uint32_t> a{a1};
    BitVec pool = doubles & plan_.residues_minus[a1];
    BitVec cov(n);
    cov.set((2 * std::uint64_t{a1}) % n);
    if (a2 < 0) {
      visit_symmetric(a, pool, cov, a1, false);
      if (plan_.a_max < 2 && pool.next_after(a1) < n) ++prunes[kSizeCap];
      return;
    }
    if (plan_.a_max < 2) return;
    extend_symmetric(a, pool, cov, static_cast<std::uint32_t>(a2));
  }

  void flush() {
    global_ += unflushed_;
    unflushed_ = 0;
  }

 private:
  bool tick() {
    ++nodes;
    if (++unflushed_ >= kFlushEvery) {
      flush();
      if (global_.load(std::memory_order_relaxed) > limit_) abort_ = true;
    }
    return !abort_.load(std::memory_order_relaxed);
  }

  // Whether a child of a size-s node obtained by adding x, with pool size
  // `pool_size`, can still lead anywhere.
  bool admit_child(std::int64_t s, std::uint32_t x, std::size_t pool_size) {
    const auto c = static_cast<std::int64_t>(pool_size);
    if (c < plan_.need_b[s + 1]) {
      ++prunes[kCandidate];
      return false;
    }
    const std::int64_t reach = std::min<std::int64_t>(plan_.a_max, s + 1 + (plan_.n - 1 - x));
    if (reach * c < plan_.half) {
      ++prunes[kCoverage];
      return false;
    }
    return true;
  }

  void visit_general(std::vector<std::uint32_t>& a, const BitVec& pool, std::uint32_t last, bool extend) {
    if (!tick()) return;
    const auto s = static_cast<std::int64_t>(a.size());
    if (s >= plan_.a_min && s <= plan_.a_max) {
      if (plan_.bmax[s] == 0)
        ++prunes[kProductCap];
      else
        enumerate_b(a, pool, plan_.bmin[s], plan_.bmax[s]);
    }
    if (!extend) return;
    if (s >= plan_.a_max) {
      if (last + 1 < plan_.n) ++prunes[kSizeCap];
      return;
    }
    for (std::uint32_t x = last + 1; x < plan_.n; ++x) {
      BitVec next = pool & plan_.residues_minus[x];
      if (!admit_child(s, x, next.count())) continue;
      a.push_back(x);
      visit_general(a, next, x, true);
      a.pop_back();
      if (abort_.load(std::memory_order_relaxed)) return;
    }
  }

  void enumerate_b(const std::vector<std::uint32_t>& a, const BitVec& pool, std::int64_t lo, std::int64_t hi) {
    const std::uint32_t n = plan_.n;
    cands_.clear();
    pool.for_each([&](std::size_t c) { cands_.push_back(static_cast<std::uint32_t>(c)); });
    const auto m = cands_.size();
    if (static_cast<std::int64_t>(m) < lo) {
      ++prunes[kCandidate];
      return;
    }
    shifted_.clear();
    for (auto c : cands_) shifted_.push_back(translate_set(a, c, n));
    suffix_.assign(m + 1, BitVec(n));
    for (std::size_t j = m; j-- > 0;) suffix_[j] = suffix_[j + 1] | shifted_[j];
    if (!plan_.residues.subset_of(suffix_[0])) {
      ++prunes[kCoverage];
      return;
    }
    covs_.assign(m + 1, BitVec(n));
    chosen_.clear();
    walk_b(a, 0, lo, hi);
  }

  // covs_[depth] holds the coverage of the current chosen_ prefix.
  void walk_b(const std::vector<std::uint32_t>& a, std::size_t j, std::int64_t lo, std::int64_t hi) {
    if (!tick()) return;
    const auto count = static_cast<std::int64_t>(chosen_.size());
    const std::size_t m = cands_.size();
    if (count == hi || j == m) return;
    if (count + static_cast<std::int64_t>(m - j) < lo) {
      ++prunes[kCandidate];
      return;
    }
    const BitVec& cov = covs_[chosen_.size()];
    if (!BitVec::or_covers(cov, suffix_[j], plan_.residues)) {
      ++prunes[kCoverage];
      return;
    }
    covs_[chosen_.size() + 1] = cov | shifted_[j];
    chosen_.push_back(cands_[j]);
    if (count + 1 >= lo && plan_.residues.subset_of(covs_[chosen_.size()])) found.push_back({a, chosen_});
    walk_b(a, j + 1, lo, hi);
    chosen_.pop_back();
    walk_b(a, j + 1, lo, hi);
  }

  void visit_symmetric(std::vector<std::uint32_t>& a, const BitVec& pool, const BitVec& cov, std::uint32_t last,
                       bool extend) {
    if (!tick()) return;
    const auto s = static_cast<std::int64_t>(a.size());
    if (s >= plan_.a_min && s <= plan_.a_max && plan_.bmax[s] != 0 && plan_.residues.subset_of(cov))
      found.push_back({a, a});
    if (!extend) return;
    if (s >= plan_.a_max) {
      if (pool.next_after(last) < plan_.n) ++prunes[kSizeCap];
      return;
    }
    for (std::size_t x = pool.next_after(last); x < plan_.n; x = pool.next_after(x)) {
      extend_symmetric(a, pool, cov, static_cast<std::uint32_t>(x));
      if (abort_.load(std::memory_order_relaxed)) return;
    }
  }

  void extend_symmetric(std::vector<std::uint32_t>& a, const BitVec& pool, const BitVec& cov, std::uint32_t x) {
    const std::uint32_t n = plan_.n;
    BitVec next = pool & plan_.residues_minus[x];
    BitVec next_cov = cov | translate_set(a, x, n);
    next_cov.set((2 * std::uint64_t{x}) % n);

    std::vector<std::uint32_t> rest;
    for (std::size_t y = next.next_after(x); y < n; y = next.next_after(y)) rest.push_back(static_cast<std::uint32_t>(y));
    const auto s = static_cast<std::int64_t>(a.size()) + 1;
    const std::int64_t reach = std::min<std::int64_t>(plan_.a_max, s + static_cast<std::int64_t>(rest.size()));
    if (reach < plan_.a_min) {
      ++prunes[kCandidate];
      return;
    }
    if (reach * (reach + 1) / 2 < plan_.half) {
      ++prunes[kCoverage];
      return;
    }
    // Everything still reachable: (A ∪ {x} ∪ rest) + (A ∪ {x} ∪ rest).
    BitVec reachable = next_cov;
    std::vector<std::uint32_t> grown = a;
    grown.push_back(x);
    for (auto y : rest) {
      grown.push_back(y);
      reachable |= translate_set(grown, y, n);
    }
    if (!plan_.residues.subset_of(reachable)) {
      ++prunes[kCoverage];
      return;
    }
    a.push_back(x);
    visit_symmetric(a, next, next_cov, x, true);
    a.pop_back();
  }

  const Plan& plan_;
  std::uint64_t limit_;
  std::atomic<std::uint64_t>& global_;
  std::atomic<bool>& abort_;
  std::uint64_t unflushed_ = 0;

  std::vector<std::uint32_t> cands_;
  std::vector<BitVec> shifted_;
  std::vector<BitVec> suffix_;
  std::vector<BitVec> covs_;
  std::vector<std::uint32_t> chosen_;
};

bool verify_decomposition(const Decomposition& d, Prime p) {
  FpSet a(p), b(p);
  for (auto x : d.a) a.insert(x);
  for (auto x : d.b) b.insert(x);
  return build_profile(a, b).support == residue_set(p);
}

}  // namespace

SearchReport search(const SearchConfig& config) {
  if (config.node_limit == 0) throw Error(ErrorCode::InvalidArgument, "node_limit must be positive");
  if (config.min_size_a < 1 || config.min_size_b < 1)
    throw Error(ErrorCode::InvalidArgument, "minimum sizes must be at least 1");
  SearchReport report{config, {}, 0, {}, true, false};
  for (auto name : kReasonNames) report.prune_counts[name] = 0;

  const Plan plan = make_plan(config);
  if (plan.empty) {
    report.size_range_empty = true;
    return report;
  }

  const std::uint32_t n = plan.n;
  BitVec doubles(n);  // {x : 2x in R_p}
  for (std::uint32_t x = 0; x < n; ++x)
    if (plan.residues.test((2 * std::uint64_t{x}) % n)) doubles.set(x);

  // Branch list: the singleton {a1}, then every admissible second element.
  struct Item {
    std::uint32_t a1;
    std::int64_t a2;
  };
  std::vector<Item> items;
  for (std::uint32_t a1 = 0; a1 < n; ++a1) {
    if (config.symmetric_only) {
      if (!doubles.test(a1)) continue;
      items.push_back({a1, -1});
      const BitVec pool = doubles & plan.residues_minus[a1];
      for (std::size_t y = pool.next_after(a1); y < n; y = pool.next_after(y))
        items.push_back({a1, static_cast<std::int64_t>(y)});
    } else {
      items.push_back({a1, -1});
      for (std::uint32_t a2 = a1 + 1; a2 < n; ++a2) items.push_back({a1, a2});
    }
  }

  std::vector<std::vector<Decomposition>> per_item(items.size());
  std::atomic<std::uint64_t> global{0};
  std::atomic<bool> abort{false};
  std::array<std::uint64_t, kReasonCount> prunes{};
  std::uint64_t nodes = 0;
  const auto m = static_cast<std::int64_t>(items.size());

#pragma omp parallel num_threads(resolve_workers(config.worker_count))
  {
    Worker w(plan, config.node_limit, global, abort);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t i = 0; i < m; ++i) {
      if (abort.load(std::memory_order_relaxed)) continue;
      w.found.clear();
      if (config.symmetric_only)
        w.run_symmetric(items[i].a1, items[i].a2, doubles);
      else
        w.run_general(items[i].a1, items[i].a2);
      per_item[i] = std::move(w.found);
    }
    w.flush();
#pragma omp critical
    {
      nodes += w.nodes;
      for (std::size_t r = 0; r < kReasonCount; ++r) prunes[r] += w.prunes[r];
    }
  }

  report.nodes_explored = nodes;
  report.exhaustive = !abort.load() && nodes <= config.node_limit;
  for (std::size_t r = 0; r < kReasonCount; ++r) report.prune_counts[kReasonNames[r]] = prunes[r];
  for (auto& batch : per_item)
    for (auto& d : batch)
      if (verify_decomposition(d, plan.p)) report.decompositions_found.push_back(std::move(d));
  auto& found = report.decompositions_found;
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return report;
}

SearchReport search_symmetric(Prime p, std::int64_t min_size, const SearchConfig& base) {
  SearchConfig cfg = base;
  cfg.modulus = p;
  cfg.min_size_a = cfg.min_size_b = min_size;
  cfg.symmetric_only = true;
  return search(cfg);
}

SearchReport search_symmetric(Prime p, std::int64_t min_size) { return search_symmetric(p, min_size, SearchConfig{p}); }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NoDecomposition: return "no-decomposition";
    case Verdict::Found: return "FOUND";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::vector<RangeRow> verify_conjecture_range(std::int64_t p_min, std::int64_t p_max, const SearchConfig& templ) {
  if (p_min > p_max) throw Error(ErrorCode::InvalidArgument, "empty prime range");
  std::vector<RangeRow> rows;
  for (auto q : primes_in(p_min, p_max)) {
    if (q == 2) continue;
    SearchConfig cfg = templ;
    cfg.modulus = Prime(q);
    cfg.min_size_a = cfg.min_size_b = 2;
    const auto start = std::chrono::steady_clock::now();
    SearchReport rep = search(cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    Verdict v = Verdict::NoDecomposition;
    if (!rep.decompositions_found.empty())
      v = Verdict::Found;
    else if (!rep.exhaustive)
      v = Verdict::Inconclusive;
    rows.push_back({q, v, rep.nodes_explored, elapsed.count(), std::move(rep)});
  }
  return rows;
}

}  // namespace qrsum
