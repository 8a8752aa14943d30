#pragma once

#include <cstdint>
#include <vector>

#include "mstd/int_set.hpp"

namespace mstd {

// |A+B|, |±(A-B)| and their complements inside [0,2n] resp. [-n,n].
struct SumDiffStats {
  int sum_size = 0;
  int diff_size = 0;
  int sum_complement = 0;
  int diff_complement = 0;
};

// A+B = {a+b} over [0, 2n]. Both operands must share a universe [0, n].
IntSet sumset(const IntSet& a, const IntSet& b);

// ±(A-B) = (A-B) ∪ (B-A) over [-n, n].
SignedIntSet signed_difference_set(const IntSet& a, const IntSet& b);

// A-B only (not symmetrised).
SignedIntSet difference_set(const IntSet& a, const IntSet& b);

bool is_mstd_pair(const IntSet& a, const IntSet& b);
SumDiffStats pair_stats(const IntSet& a, const IntSet& b);

// Counts of ordered representations: sum_mult[s] = #{(a,b) ∈ A×B : a+b = s},
// diff_mult[d+n] = #{(a,b) ∈ A×B : a-b = d}.
struct RepMultiplicities {
  int n = 0;
  std::vector<int> sum_mult;
  std::vector<int> diff_mult;
};
RepMultiplicities representation_multiplicities(const IntSet& a, const IntSet& b);

// {n-a : a ∈ A} in universe [0, n]. Requires max(A) <= n.
IntSet reflect(const IntSet& a, int n);

// {alpha*a + beta : a ∈ A}, translated so its minimum is 0, in a fitted universe.
// alpha must be nonzero; the image diameter must respect kMaxUniverseSize.
IntSet affine_image(const IntSet& a, long long alpha, long long beta);

// Reusable scratch buffers for pair_stats at a fixed universe size (hot loops).
class PairStatsWorkspace {
 public:
  void resize(int universe_size);
  SumDiffStats stats(const IntSet& a, const IntSet& b);

 private:
  int universe_ = -1;
  std::vector<uint64_t> sum_, diff_, rev_;
};

// Small-universe fast path: sets as masks over [0, n] with n <= 31, so sum and
// signed-difference accumulators fit in one 64-bit word.
namespace small {

inline uint64_t sumset_mask(uint32_t a, uint32_t b) {
  uint64_t acc = 0;
  uint32_t rest = b;
  while (rest) {
    acc |= uint64_t(a) << std::countr_zero(rest);
    rest &= rest - 1;
  }
  return acc;
}

// Offset representation of ±(A-B): bit (d+n) for d ∈ [-n, n].
inline uint64_t pm_diff_mask(uint32_t a, uint32_t b, int n) {
  uint64_t acc = 0;
  uint32_t rest = b;
  while (rest) {
    const int bb = std::countr_zero(rest);
    acc |= uint64_t(a) << (n - bb);
    rest &= rest - 1;
  }
  return acc | (bits::reverse_word(acc) >> (64 - (2 * n + 1)));
}

inline SumDiffStats pair_stats_mask(uint32_t a, uint32_t b, int n) {
  SumDiffStats st;
  st.sum_size = std::popcount(sumset_mask(a, b));
  st.diff_size = std::popcount(pm_diff_mask(a, b, n));
  st.sum_complement = 2 * n + 1 - st.sum_size;
  st.diff_complement = 2 * n + 1 - st.diff_size;
  return st;
}

inline bool is_mstd_mask(uint32_t a, uint32_t b, int n) {
  return std::popcount(sumset_mask(a, b)) > std::popcount(pm_diff_mask(a, b, n));
}

}  // namespace small

}  // namespace mstd
