#include "qrsum/field.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "qrsum/error.hpp"

namespace qrsum {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositeInput: return "CompositeInput";
    case ErrorCode::EvenInput: return "EvenInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotDistinct: return "NotDistinct";
    case ErrorCode::OddK: return "OddK";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EtaOutOfRange: return "EtaOutOfRange";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(std::int64_t n) {
  if (n == 2) throw Error(ErrorCode::EvenInput, "modulus 2 is excluded: an odd prime is required");
  if (n < 3 || n > kMaxValue)
    throw Error(ErrorCode::OutOfRange, "modulus " + std::to_string(n) + " outside [3, 2^31)");
  if (!is_prime(n)) throw Error(ErrorCode::CompositeInput, std::to_string(n) + " is not prime");
  value_ = static_cast<std::uint32_t>(n);
}

Prime validate_prime(std::int64_t n) { return Prime(n); }

std::vector<std::uint32_t> primes_in(std::int64_t lo, std::int64_t hi) {
  std::vector<std::uint32_t> out;
  if (hi < 2 || hi < lo) return out;
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  for (std::int64_t i = 2; i * i <= hi; ++i)
    if (!composite[i])
      for (std::int64_t j = i * i; j <= hi; j += i) composite[j] = true;
  for (std::int64_t i = std::max<std::int64_t>(lo, 2); i <= hi; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

std::uint32_t reduce(std::int64_t x, std::uint32_t p) noexcept {
  std::int64_t r = x % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) noexcept {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

FpElement::FpElement(std::int64_t x, Prime p) : residue_(reduce(x, p.value())), modulus_(p) {}

int legendre(FpElement x) {
  const std::uint64_t p = x.modulus().value();
  if (x.residue() == 0) return 0;
  return pow_mod(x.residue(), (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(std::int64_t x, Prime p) { return legendre(FpElement(x, p)); }

LegendreTable::LegendreTable(Prime p) : p_(p), chi_(2 * static_cast<std::size_t>(p.value()), -1) {
  const std::uint32_t n = p.value();
  chi_[0] = 0;
  chi_[n] = 0;
  for (std::uint64_t y = 1; y <= n / 2; ++y) {
    const auto sq = static_cast<std::size_t>(y * y % n);
    chi_[sq] = 1;
    chi_[sq + n] = 1;
  }
}

FpSet::FpSet(Prime p, std::span<const std::int64_t> elems) : FpSet(p) {
  for (auto x : elems) insert(x);
}

FpSet::FpSet(Prime p, BitVec bits) : modulus_(p), bits_(std::move(bits)) {
  if (bits_.size() != p.value())
    throw Error(ErrorCode::ModulusMismatch, "bit-vector length does not match modulus");
  cardinality_ = bits_.count();
}

FpSet FpSet::full(Prime p) {
  BitVec b(p.value());
  b.fill();
  return FpSet(p, std::move(b));
}

void FpSet::insert(std::int64_t x) {
  const auto r = reduce(x, modulus_.value());
  if (!bits_.test(r)) {
    bits_.set(r);
    ++cardinality_;
  }
}

void FpSet::erase(std::int64_t x) {
  const auto r = reduce(x, modulus_.value());
  if (bits_.test(r)) {
    bits_.reset(r);
    --cardinality_;
  }
}

std::vector<std::uint32_t> FpSet::elements() const {
  std::vector<std::uint32_t> out;
  out.reserve(cardinality_);
  bits_.for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
  return out;
}

FpSet FpSet::translated(std::int64_t t) const {
  return FpSet(modulus_, bits_.rotated(reduce(t, modulus_.value())));
}

FpSet residue_set(Prime p) {
  FpSet r(p);
  const std::uint64_t n = p.value();
  for (std::uint64_t y = 1; y <= n / 2; ++y) r.insert(static_cast<std::int64_t>(y * y % n));
  return r;
}

}  // namespace qrsum
