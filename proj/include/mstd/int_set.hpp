#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mstd {

// Hard ceiling on universe sizes (n+1). Keeps bit-vector allocations sane and
// catches runaway affine images.
inline constexpr int kMaxUniverseSize = (1 << 20) + 1;

namespace bits {

inline constexpr int kWordBits = 64;

constexpr int words_for(int bit_count) {
  return (bit_count + kWordBits - 1) / kWordBits;
}

// dest |= src << shift. dest must be sized for the shifted result; bits that
// would fall past dest are a caller bug (all stored words keep their unused
// high bits zero).
inline void or_shifted(std::span<uint64_t> dest, std::span<const uint64_t> src, int shift) {
  const int ws = shift / kWordBits;
  const int bs = shift % kWordBits;
  if (bs == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i]) dest[i + ws] |= src[i];
    }
    return;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    const uint64_t w = src[i];
    if (!w) continue;
    dest[i + ws] |= w << bs;
    if (i + ws + 1 < dest.size()) dest[i + ws + 1] |= w >> (kWordBits - bs);
  }
}

inline int popcount(std::span<const uint64_t> words) {
  int c = 0;
  for (uint64_t w : words) c += std::popcount(w);
  return c;
}

constexpr uint64_t reverse_word(uint64_t x) {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
  return (x >> 32) | (x << 32);
}

// dest = bit-reversal of the low `bit_count` bits of src (index i -> bit_count-1-i).
// dest and src must not alias and both hold words_for(bit_count) words.
inline void reverse_into(std::span<uint64_t> dest, std::span<const uint64_t> src, int bit_count) {
  const int nw = words_for(bit_count);
  for (int i = 0; i < nw; ++i) dest[i] = reverse_word(src[nw - 1 - i]);
  const int pad = nw * kWordBits - bit_count;
  if (pad) {
    for (int i = 0; i + 1 < nw; ++i) dest[i] = (dest[i] >> pad) | (dest[i + 1] << (kWordBits - pad));
    dest[nw - 1] >>= pad;
  }
}

inline bool test_bit(std::span<const uint64_t> words, int i) {
  return (words[i / kWordBits] >> (i % kWordBits)) & 1;
}

inline void set_bit(std::span<uint64_t> words, int i) {
  words[i / kWordBits] |= uint64_t(1) << (i % kWordBits);
}

// True iff every bit in [lo, hi] is set.
inline bool contains_range(std::span<const uint64_t> words, int lo, int hi) {
  if (lo > hi) return true;
  const int wl = lo / kWordBits, wh = hi / kWordBits;
  const uint64_t first = ~uint64_t(0) << (lo % kWordBits);
  const uint64_t last = ~uint64_t(0) >> (kWordBits - 1 - hi % kWordBits);
  if (wl == wh) {
    const uint64_t m = first & last;
    return (words[wl] & m) == m;
  }
  if ((words[wl] & first) != first) return false;
  for (int w = wl + 1; w < wh; ++w) {
    if (~words[w]) return false;
  }
  return (words[wh] & last) == last;
}

template <class Fn>
void for_each_bit(std::span<const uint64_t> words, Fn&& fn) {
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    uint64_t w = words[wi];
    while (w) {
      fn(int(wi) * kWordBits + std::countr_zero(w));
      w &= w - 1;
    }
  }
}

}  // namespace bits

// Finite set of non-negative integers over a fixed universe [0, universe_size-1],
// stored as a packed bit vector. Unused high bits of the last word stay zero.
class IntSet {
 public:
  IntSet() = default;
  explicit IntSet(int universe_size) : universe_(check_universe(universe_size)),
                                       words_(bits::words_for(universe_size)) {}

  static IntSet full(int universe_size) {
    IntSet s(universe_size);
    for (auto& w : s.words_) w = ~uint64_t(0);
    s.trim();
    return s;
  }

  // universe_size == 0 fits the universe to max(elems)+1 (1 when empty).
  static IntSet from_elements(const std::vector<int>& elems, int universe_size = 0);

  int universe_size() const { return universe_; }
  int max_value() const { return universe_ - 1; }

  bool contains(int e) const {
    return e >= 0 && e < universe_ && bits::test_bit(words_, e);
  }
  void add(int e) {
    check_element(e);
    bits::set_bit(std::span<uint64_t>(words_), e);
  }
  void remove(int e) {
    check_element(e);
    words_[e / bits::kWordBits] &= ~(uint64_t(1) << (e % bits::kWordBits));
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  int count() const { return bits::popcount(words_); }
  bool empty() const {
    for (uint64_t w : words_) {
      if (w) return false;
    }
    return true;
  }

  int min_element() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return int(i) * bits::kWordBits + std::countr_zero(words_[i]);
    }
    return -1;
  }
  int max_element() const {
    for (std::size_t i = words_.size(); i-- > 0;) {
      if (words_[i]) return int(i) * bits::kWordBits + 63 - std::countl_zero(words_[i]);
    }
    return -1;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(std::size_t(count()));
    bits::for_each_bit(words_, [&](int e) { out.push_back(e); });
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    bits::for_each_bit(std::span<const uint64_t>(words_), fn);
  }

  // Same elements in a universe of new_size; shrinking below max_element() throws.
  IntSet resized(int new_size) const {
    if (new_size <= max_element()) throw std::invalid_argument("IntSet::resized: would drop elements");
    IntSet out(new_size);
    for (std::size_t i = 0; i < words_.size() && i < out.words_.size(); ++i) out.words_[i] = words_[i];
    return out;
  }

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> mutable_words() { return words_; }

  // Low 32 bits as a mask; only valid when universe_size <= 32.
  uint32_t mask32() const {
    if (universe_ > 32) throw std::invalid_argument("IntSet::mask32: universe too large");
    return words_.empty() ? 0u : uint32_t(words_[0]);
  }

  friend bool operator==(const IntSet&, const IntSet&) = default;

 private:
  static int check_universe(int u) {
    if (u < 0 || u > kMaxUniverseSize) throw std::invalid_argument("IntSet: universe size out of range");
    return u;
  }
  void check_element(int e) const {
    if (e < 0 || e >= universe_) throw std::out_of_range("IntSet: element outside universe");
  }
  void trim() {
    const int pad = int(words_.size()) * bits::kWordBits - universe_;
    if (pad && !words_.empty()) words_.back() &= ~uint64_t(0) >> pad;
  }

  int universe_ = 0;
  std::vector<uint64_t> words_;
};

// Set of integers in [-bound, bound]; bit index d + bound.
class SignedIntSet {
 public:
  SignedIntSet() = default;
  explicit SignedIntSet(int bound) : bound_(bound), words_(bits::words_for(2 * bound + 1)) {
    if (bound < 0 || 2 * bound + 1 > kMaxUniverseSize * 2) {
      throw std::invalid_argument("SignedIntSet: bound out of range");
    }
  }

  int bound() const { return bound_; }
  bool contains(int d) const {
    return d >= -bound_ && d <= bound_ && bits::test_bit(words_, d + bound_);
  }
  void add(int d) {
    if (d < -bound_ || d > bound_) throw std::out_of_range("SignedIntSet: element outside range");
    bits::set_bit(std::span<uint64_t>(words_), d + bound_);
  }
  int count() const { return bits::popcount(words_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    bits::for_each_bit(std::span<const uint64_t>(words_), [&](int i) { out.push_back(i - bound_); });
    return out;
  }

  // d in the set iff -d in the set.
  bool symmetric() const {
    std::vector<uint64_t> rev(words_.size());
    bits::reverse_into(rev, words_, 2 * bound_ + 1);
    return rev == words_;
  }

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> mutable_words() { return words_; }

  friend bool operator==(const SignedIntSet&, const SignedIntSet&) = default;

 private:
  int bound_ = 0;
  std::vector<uint64_t> words_;
};

// Text form used across the CLI: comma-separated decimal elements, e.g. "0,2,3,4,7".
// Whitespace around elements is ignored; duplicates are rejected. Empty text is the
// empty set. universe_size == 0 fits the universe to the largest element.
IntSet parse_set(std::string_view text, int universe_size = 0);
std::string format_set(const IntSet& s);

}  // namespace mstd
