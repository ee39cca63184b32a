#include "qrsum/char_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qrsum/error.hpp"
#include "qrsum/parallel.hpp"
#include "qrsum/rng.hpp"

namespace qrsum {

namespace {

constexpr std::uint64_t kSampleBlock = 1u << 14;

void require_distinct(const KTuple& t) {
  if (!t.distinct()) throw Error(ErrorCode::NotDistinct, "tuple coordinates are not pairwise distinct");
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Saturating binomial coefficient.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (n - r + i) / i;
    if (c > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(c);
}

// Depth-first walk over sorted combinations a_2 < ... < a_k of F_p \ {0}
// below a fixed first element, carrying the running character product.
class CombinationWalker {
 public:
  CombinationWalker(const LegendreTable& chi, std::size_t k, std::vector<std::uint64_t>& counts,
                    std::uint64_t weight)
      : chi_(chi.doubled()),
        p_(chi.modulus().value()),
        k_(k),
        counts_(counts),
        weight_(weight),
        layers_(k, std::vector<std::int8_t>(p_)) {
    // a_1 = 0
    for (std::uint32_t x = 0; x < p_; ++x) layers_[0][x] = chi_[x];
  }

  // Visit every combination whose smallest element is `first`.
  void run(std::uint32_t first) { descend(1, first); }

 private:
  void descend(std::size_t depth, std::uint32_t a) {
    const auto& prev = layers_[depth - 1];
    const std::int8_t* shifted = chi_.data() + a;
    if (depth + 1 == k_) {
      std::int64_t s = 0;
      for (std::uint32_t x = 0; x < p_; ++x) s += prev[x] * shifted[x];
      counts_[static_cast<std::size_t>(s + p_)] += weight_;
      return;
    }
    auto& cur = layers_[depth];
    for (std::uint32_t x = 0; x < p_; ++x) cur[x] = static_cast<std::int8_t>(prev[x] * shifted[x]);
    // Leave room for the remaining k - depth - 1 coordinates.
    const std::uint32_t last = p_ - static_cast<std::uint32_t>(k_ - depth - 1);
    for (std::uint32_t b = a + 1; b <= last; ++b) descend(depth + 1, b);
  }

  std::span<const std::int8_t> chi_;
  std::uint32_t p_;
  std::size_t k_;
  std::vector<std::uint64_t>& counts_;
  std::uint64_t weight_;
  std::vector<std::vector<std::int8_t>> layers_;
};

void draw_distinct(Rng& rng, std::uint32_t p, std::size_t k, std::vector<std::uint32_t>& out) {
  out.clear();
  while (out.size() < k) {
    const auto c = static_cast<std::uint32_t>(uniform_below(rng, p));
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
}

void merge_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace

KTuple::KTuple(Prime p, std::span<const std::int64_t> coords) : modulus_(p), distinct_(true) {
  coords_.reserve(coords.size());
  for (auto c : coords) coords_.push_back(reduce(c, p.value()));
  for (std::size_t i = 0; i < coords_.size() && distinct_; ++i)
    for (std::size_t j = i + 1; j < coords_.size(); ++j)
      if (coords_[i] == coords_[j]) {
        distinct_ = false;
        break;
      }
}

std::int64_t char_sum_value(std::span<const std::uint32_t> coords, const LegendreTable& chi) {
  const auto table = chi.doubled();
  const std::uint32_t p = chi.modulus().value();
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    int v = 1;
    for (auto a : coords) v *= table[x + a];
    s += v;
  }
  return s;
}

bool weil_holds(std::int64_t value, std::size_t k, Prime p) noexcept {
  const auto km1 = static_cast<std::int64_t>(k) - 1;
  return static_cast<__int128>(value) * value <= static_cast<__int128>(km1) * km1 * p.value();
}

bool wan_holds(std::int64_t value, std::size_t k, Prime p) noexcept {
  const std::int64_t lhs = value + 1;
  if (lhs <= 0) return true;
  const auto km2 = static_cast<std::int64_t>(k) - 2;
  return static_cast<__int128>(lhs) * lhs <= static_cast<__int128>(km2) * km2 * p.value();
}

CharSumRecord char_sum(const KTuple& tuple, const LegendreTable& chi) {
  const Prime p = chi.modulus();
  if (tuple.modulus() != p) throw Error(ErrorCode::ModulusMismatch, "tuple and table moduli differ");
  if (tuple.k() < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  const std::int64_t value = char_sum_value(tuple.coords(), chi);
  const double root = std::sqrt(static_cast<double>(p.value()));
  CharSumRecord rec{tuple, value, value / root, (value + 1) / root, std::nullopt, std::nullopt};
  if (tuple.distinct()) {
    rec.weil_ok = weil_holds(value, tuple.k(), p);
    if (tuple.k() % 2 == 0) rec.wan_ok = wan_holds(value, tuple.k(), p);
  }
  return rec;
}

CharSumRecord char_sum(const KTuple& tuple, Prime p) { return char_sum(tuple, LegendreTable(p)); }

std::int64_t shift_reduced_sum(const KTuple& tuple, Prime p) {
  require_distinct(tuple);
  const LegendreTable chi(p);
  const std::uint64_t n = p.value();
  const auto coords = tuple.coords();
  std::vector<std::uint64_t> h;
  for (std::size_t i = 1; i < coords.size(); ++i) h.push_back((coords[i] + n - coords[0]) % n);
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    int v = 1;
    for (auto hi : h) v *= chi[(1 + hi * x) % n];
    s += v;
  }
  return s;
}

bool check_weil(const CharSumRecord& record, Prime p) {
  require_distinct(record.tuple);
  return weil_holds(record.value, record.tuple.k(), p);
}

bool check_wan(const CharSumRecord& record, Prime p) {
  if (record.tuple.k() % 2 != 0) throw Error(ErrorCode::OddK, "Wan bound needs even k");
  require_distinct(record.tuple);
  return wan_holds(record.value, record.tuple.k(), p);
}

std::int64_t SumDistribution::min_value() const {
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i]) return static_cast<std::int64_t>(i) - modulus.value();
  throw Error(ErrorCode::EmptySet, "empty distribution");
}

std::int64_t SumDistribution::max_value() const {
  for (std::size_t i = counts.size(); i-- > 0;)
    if (counts[i]) return static_cast<std::int64_t>(i) - modulus.value();
  throw Error(ErrorCode::EmptySet, "empty distribution");
}

std::uint64_t SumDistribution::count_of(std::int64_t value) const {
  const std::int64_t i = value + modulus.value();
  if (i < 0 || i >= static_cast<std::int64_t>(counts.size())) return 0;
  return counts[static_cast<std::size_t>(i)];
}

std::uint64_t exhaustive_evaluations(std::size_t k, Prime p) { return binomial(p.value() - 1, k - 1); }

SumDistribution sum_distribution(std::size_t k, Prime p, const EnumerationMode& mode,
                                 const EnumerationOptions& options) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  if (k > p.value()) throw Error(ErrorCode::InvalidArgument, "k exceeds p: no distinct tuples");
  const std::uint32_t n = p.value();
  const LegendreTable chi(p);
  const int workers = resolve_workers(options.workers);
  SumDistribution dist{p, k, std::vector<std::uint64_t>(2 * std::size_t{n} + 1, 0), 0};

  if (std::holds_alternative<Exhaustive>(mode)) {
    const std::uint64_t evals = exhaustive_evaluations(k, p);
    if (evals > options.budget)
      throw Error(ErrorCode::BudgetExceeded, std::to_string(evals) + " evaluations exceed budget " +
                                                 std::to_string(options.budget));
    const std::uint64_t weight = factorial(k - 1);
    const auto last_first = static_cast<std::int64_t>(n - (k - 1));
#pragma omp parallel num_threads(workers)
    {
      std::vector<std::uint64_t> local(dist.counts.size(), 0);
      CombinationWalker w(chi, k, local, weight);
#pragma omp for schedule(dynamic, 1) nowait
      for (std::int64_t first = 1; first <= last_first; ++first) w.run(static_cast<std::uint32_t>(first));
#pragma omp critical
      merge_into(dist.counts, local);
    }
  } else {
    const auto& s = std::get<Sampled>(mode);
    const std::int64_t blocks = static_cast<std::int64_t>((s.count + kSampleBlock - 1) / kSampleBlock);
#pragma omp parallel num_threads(workers)
    {
      std::vector<std::uint64_t> local(dist.counts.size(), 0);
      std::vector<std::uint32_t> tuple;
#pragma omp for schedule(dynamic, 1) nowait
      for (std::int64_t b = 0; b < blocks; ++b) {
        Rng rng = make_stream(s.seed, static_cast<std::uint64_t>(b));
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kSampleBlock;
        const std::uint64_t end = std::min(s.count, begin + kSampleBlock);
        for (std::uint64_t i = begin; i < end; ++i) {
          draw_distinct(rng, n, k, tuple);
          ++local[static_cast<std::size_t>(char_sum_value(tuple, chi) + n)];
        }
      }
#pragma omp critical
      merge_into(dist.counts, local);
    }
  }
  for (auto c : dist.counts) dist.total += c;
  return dist;
}

CkEstimate ck_empirical(std::size_t k, Prime p, const EnumerationMode& mode, const EnumerationOptions& options) {
  const SumDistribution dist = sum_distribution(k, p, mode, options);
  const std::int64_t m = dist.max_value();
  return {m, m / std::sqrt(static_cast<double>(p.value())), dist.total};
}

double semicircle_density(double t) noexcept {
  if (t <= -2 || t >= 2) return 0;
  return std::sqrt(4 - t * t) / (2 * std::numbers::pi);
}

double semicircle_cdf(double t) noexcept {
  if (t <= -2) return 0;
  if (t >= 2) return 1;
  return 0.5 + t * std::sqrt(4 - t * t) / (4 * std::numbers::pi) + std::asin(t / 2) / std::numbers::pi;
}

namespace {

Histogram empty_histogram(double half_width, std::size_t bins, bool with_reference) {
  if (bins < 2) throw Error(ErrorCode::InvalidArgument, "at least two bins required");
  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = -half_width + 2 * half_width * static_cast<double>(i) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  if (with_reference) {
    std::vector<double> ref(bins);
    for (std::size_t i = 0; i < bins; ++i) ref[i] = semicircle_density(0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]));
    h.reference_density = std::move(ref);
  }
  return h;
}

std::size_t bin_of(double t, double half_width, std::size_t bins) {
  const double u = (t + half_width) / (2 * half_width) * static_cast<double>(bins);
  if (!(u > 0)) return 0;
  return std::min(bins - 1, static_cast<std::size_t>(u));
}

}  // namespace

Histogram histogram_of(const SumDistribution& dist, std::size_t bins) {
  const double half_width = static_cast<double>(dist.k) - 2;
  if (half_width <= 0) throw Error(ErrorCode::InvalidArgument, "histogram needs k >= 4");
  Histogram h = empty_histogram(half_width, bins, dist.k == 4);
  const std::int64_t n = dist.modulus.value();
  const double root = std::sqrt(static_cast<double>(n));
  // Moments from exact integer sums of (S + 1), so the result does not
  // depend on reduction order.
  __int128 s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    const std::uint64_t c = dist.counts[i];
    if (!c) continue;
    const std::int64_t shifted = static_cast<std::int64_t>(i) - n + 1;
    h.counts[bin_of(shifted / root, half_width, bins)] += c;
    s1 += static_cast<__int128>(c) * shifted;
    s2 += static_cast<__int128>(c) * shifted * shifted;
  }
  h.total = dist.total;
  if (h.total) {
    const long double tot = static_cast<long double>(h.total);
    const long double mean = static_cast<long double>(s1) / tot;
    const long double second = static_cast<long double>(s2) / tot;
    h.statistic_mean = static_cast<double>(mean / std::sqrt(static_cast<long double>(n)));
    h.statistic_variance = static_cast<double>((second - mean * mean) / static_cast<long double>(n));
    h.min_value = (dist.min_value() + 1) / root;
    h.max_value = (dist.max_value() + 1) / root;
  }
  return h;
}

Histogram vertical_histogram(std::size_t k, Prime p, std::size_t bins, const EnumerationMode& mode,
                             const EnumerationOptions& options) {
  if (k % 2 != 0) throw Error(ErrorCode::OddK, "vertical histogram needs even k");
  if (k < 4) throw Error(ErrorCode::InvalidArgument, "vertical histogram needs k >= 4");
  if (bins < 2) throw Error(ErrorCode::InvalidArgument, "at least two bins required");
  return histogram_of(sum_distribution(k, p, mode, options), bins);
}

double semicircle_discrepancy(const SumDistribution& dist) {
  const std::int64_t n = dist.modulus.value();
  const double root = std::sqrt(static_cast<double>(n));
  const long double tot = static_cast<long double>(dist.total);
  std::uint64_t below = 0;
  double worst = 0;
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    const std::uint64_t c = dist.counts[i];
    if (!c) continue;
    const double t = (static_cast<std::int64_t>(i) - n + 1) / root;
    const double f = semicircle_cdf(t);
    const double left = static_cast<double>(below / tot);
    below += c;
    const double right = static_cast<double>(below / tot);
    worst = std::max({worst, std::abs(left - f), std::abs(right - f)});
  }
  return worst;
}

SweepResult horizontal_sweep(std::span<const std::int64_t> shifts, std::int64_t p_lo, std::int64_t p_hi,
                             std::size_t bins, int workers) {
  const std::size_t k = shifts.size();
  if (k < 4 || k % 2 != 0) throw Error(ErrorCode::OddK, "horizontal sweep needs an even number k >= 4 of shifts");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (shifts[i] == shifts[j]) throw Error(ErrorCode::NotDistinct, "shifts must be pairwise distinct integers");

  const double half_width = static_cast<double>(k) - 2;
  SweepResult out{empty_histogram(half_width, bins, k == 4), {}, {}};
  std::vector<std::uint32_t> usable;
  for (auto q : primes_in(p_lo, p_hi)) {
    bool collide = q == 2;
    for (std::size_t i = 0; i < k && !collide; ++i)
      for (std::size_t j = i + 1; j < k && !collide; ++j)
        collide = (shifts[i] - shifts[j]) % static_cast<std::int64_t>(q) == 0;
    (collide ? out.skipped : usable).push_back(q);
  }

  std::vector<std::int64_t> sums(usable.size());
  const auto m = static_cast<std::int64_t>(usable.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < m; ++i) {
    const Prime q(usable[i]);
    sums[i] = char_sum_value(KTuple(q, shifts).coords(), LegendreTable(q));
  }

  long double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const double t = (sums[i] + 1) / std::sqrt(static_cast<double>(usable[i]));
    out.points.push_back({usable[i], sums[i], t});
    out.histogram.counts[bin_of(t, half_width, bins)] += 1;
    s1 += t;
    s2 += static_cast<long double>(t) * t;
    if (i == 0 || t < out.histogram.min_value) out.histogram.min_value = t;
    if (i == 0 || t > out.histogram.max_value) out.histogram.max_value = t;
  }
  out.histogram.total = usable.size();
  if (!usable.empty()) {
    const long double mean = s1 / usable.size();
    out.histogram.statistic_mean = static_cast<double>(mean);
    out.histogram.statistic_variance = static_cast<double>(s2 / usable.size() - mean * mean);
  }
  return out;
}

std::vector<double> additive_char_power(const FpSet& set, int workers) {
  const std::uint32_t n = set.modulus().value();
  std::vector<double> cosines(n), sines(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    const double angle = 2 * std::numbers::pi * j / n;
    cosines[j] = std::cos(angle);
    sines[j] = std::sin(angle);
  }
  const auto elems = set.elements();
  std::vector<double> power(n);
  const auto m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (std::int64_t psi = 0; psi < m; ++psi) {
    double re = 0, im = 0;
    for (auto s : elems) {
      const auto j = static_cast<std::size_t>(static_cast<std::uint64_t>(psi) * s % n);
      re += cosines[j];
      im += sines[j];
    }
    power[psi] = re * re + im * im;
  }
  return power;
}

}  // namespace qrsum
