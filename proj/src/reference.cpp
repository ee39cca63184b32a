#include "qrsum/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace qrsum::reference {

namespace {

int euler(std::uint64_t x, std::uint64_t p) {
  x %= p;
  if (x == 0) return 0;
  std::uint64_t r = 1, b = x, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

std::set<std::uint32_t> squares(std::uint32_t p) {
  std::set<std::uint32_t> out;
  for (std::uint64_t y = 1; y < p; ++y) out.insert(static_cast<std::uint32_t>(y * y % p));
  return out;
}

// All subsets of {0..p-1} with exactly `size` elements, lexicographically.
void subsets_of_size(std::uint32_t p, std::size_t size, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t next) -> void {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t x = next; x < p; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

std::set<std::uint32_t> naive_sumset(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                     std::uint32_t p) {
  std::set<std::uint32_t> s;
  for (auto x : a)
    for (auto y : b) s.insert((x + y) % p);
  return s;
}

}  // namespace

std::int64_t char_sum(std::span<const std::int64_t> shifts, Prime p) {
  const std::int64_t n = p.value();
  std::int64_t total = 0;
  for (std::int64_t x = 0; x < n; ++x) {
    std::uint64_t prod = 1;
    for (auto a : shifts) {
      std::int64_t f = (x + a) % n;
      if (f < 0) f += n;
      prod = prod * static_cast<std::uint64_t>(f) % static_cast<std::uint64_t>(n);
    }
    total += euler(prod, static_cast<std::uint64_t>(n));
  }
  return total;
}

std::map<std::int64_t, std::uint64_t> sum_distribution(std::size_t k, Prime p) {
  std::map<std::int64_t, std::uint64_t> dist;
  std::vector<std::int64_t> t{0};
  auto rec = [&](auto&& self) -> void {
    if (t.size() == k) {
      ++dist[char_sum(t, p)];
      return;
    }
    for (std::int64_t x = 1; x < p.value(); ++x) {
      if (std::find(t.begin(), t.end(), x) != t.end()) continue;
      t.push_back(x);
      self(self);
      t.pop_back();
    }
  };
  rec(rec);
  return dist;
}

std::int64_t max_char_sum(std::size_t k, Prime p) {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> t;
  auto rec = [&](auto&& self) -> void {
    if (t.size() == k) {
      best = std::max(best, char_sum(t, p));
      return;
    }
    for (std::int64_t x = 0; x < p.value(); ++x) {
      if (std::find(t.begin(), t.end(), x) != t.end()) continue;
      t.push_back(x);
      self(self);
      t.pop_back();
    }
  };
  rec(rec);
  return best;
}

std::vector<std::uint32_t> representation_counts(const FpSet& a, const FpSet& b) {
  const std::uint32_t n = a.modulus().value();
  std::vector<std::uint32_t> r(n, 0);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (a.contains(y) && b.contains((x + n - y) % n)) ++r[x];
  return r;
}

std::int64_t additive_energy(const FpSet& a, const FpSet& b) {
  const std::uint32_t n = a.modulus().value();
  const auto as = a.elements();
  const auto bs = b.elements();
  std::int64_t e = 0;
  for (auto a1 : as)
    for (auto a2 : as)
      for (auto b1 : bs)
        for (auto b2 : bs)
          if ((a1 + b1) % n == (a2 + b2) % n) ++e;
  return e;
}

std::vector<std::complex<double>> additive_char_sums(const FpSet& set) {
  const std::uint32_t n = set.modulus().value();
  std::vector<std::complex<double>> out(n);
  for (std::uint32_t psi = 0; psi < n; ++psi)
    for (auto s : set.elements())
      out[psi] += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(psi) * s / n);
  return out;
}

std::vector<Decomposition> brute_force_decompositions(Prime p, std::size_t lo, std::size_t hi) {
  const std::uint32_t n = p.value();
  const auto target = squares(n);
  std::vector<std::vector<std::uint32_t>> sets;
  for (std::size_t s = lo; s <= hi && s <= n; ++s) subsets_of_size(n, s, sets);
  std::vector<Decomposition> out;
  for (const auto& a : sets)
    for (const auto& b : sets)
      if (naive_sumset(a, b, n) == target) out.push_back({a, b});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint32_t>> brute_force_symmetric(Prime p, std::size_t lo, std::size_t hi) {
  const std::uint32_t n = p.value();
  const auto target = squares(n);
  std::vector<std::vector<std::uint32_t>> sets;
  for (std::size_t s = lo; s <= hi && s <= n; ++s) subsets_of_size(n, s, sets);
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& a : sets)
    if (naive_sumset(a, a, n) == target) out.push_back(a);
  return out;
}

}  // namespace qrsum::reference
