#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qrsum {

/// Fixed-length bit-vector over the universe [0, n). Word-parallel set
/// algebra backs both FpSet and the candidate pools of the search.
class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const Word* data() const noexcept { return words_.data(); }
  Word* data() noexcept { return words_.data(); }

  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }
  void fill() noexcept {
    for (auto& w : words_) w = ~Word{0};
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  BitVec& operator&=(const BitVec& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend BitVec operator&(BitVec a, const BitVec& b) noexcept { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) noexcept { return a |= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  /// this ⊆ o
  bool subset_of(const BitVec& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// target ⊆ (a | b), without materializing the union.
  static bool or_covers(const BitVec& a, const BitVec& b, const BitVec& target) noexcept {
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      if (target.words_[i] & ~(a.words_[i] | b.words_[i])) return false;
    return true;
  }

  /// Cyclic translate: result contains (x + t) mod n for every x in this.
  BitVec rotated(std::size_t t) const {
    BitVec out(n_);
    t %= n_ == 0 ? 1 : n_;
    for_each([&](std::size_t x) {
      std::size_t y = x + t;
      if (y >= n_) y -= n_;
      out.set(y);
    });
    return out;
  }

  /// Calls f(i) for each set bit in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        const auto b = static_cast<std::size_t>(std::countr_zero(w));
        f(wi * kWordBits + b);
        w &= w - 1;
      }
    }
  }

  /// Smallest set index strictly greater than i, or size() if none.
  std::size_t next_after(std::size_t i) const noexcept {
    std::size_t j = i + 1;
    if (j >= n_) return n_;
    std::size_t wi = j / kWordBits;
    Word w = words_[wi] & (~Word{0} << (j % kWordBits));
    while (true) {
      if (w) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return n_;
      w = words_[wi];
    }
  }

 private:
  void trim() noexcept {
    const std::size_t rem = n_ % kWordBits;
    if (rem && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
  }

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

}  // namespace qrsum
