#include "mstd/kernels.hpp"

#include <numeric>

namespace mstd {

namespace {

void require_shared_universe(const IntSet& a, const IntSet& b) {
  if (a.universe_size() != b.universe_size() || a.universe_size() == 0) {
    throw std::invalid_argument("pair kernels require a shared nonempty universe");
  }
}

// acc |= union of (larger << e) over elements e of the smaller operand.
void accumulate_shifted(std::span<uint64_t> acc, const IntSet& a, const IntSet& b, int extra_shift) {
  const IntSet& small_op = a.count() <= b.count() ? a : b;
  const IntSet& big_op = a.count() <= b.count() ? b : a;
  small_op.for_each([&](int e) { bits::or_shifted(acc, big_op.words(), e + extra_shift); });
}

}  // namespace

IntSet sumset(const IntSet& a, const IntSet& b) {
  require_shared_universe(a, b);
  const int n = a.max_value();
  IntSet out(2 * n + 1);
  accumulate_shifted(out.mutable_words(), a, b, 0);
  return out;
}

SignedIntSet difference_set(const IntSet& a, const IntSet& b) {
  require_shared_universe(a, b);
  const int n = a.max_value();
  SignedIntSet out(n);
  // a - b at offset n: a + (n - b).
  b.for_each([&](int e) { bits::or_shifted(out.mutable_words(), a.words(), n - e); });
  return out;
}

SignedIntSet signed_difference_set(const IntSet& a, const IntSet& b) {
  SignedIntSet out = difference_set(a, b);
  const int n = out.bound();
  std::vector<uint64_t> rev(out.words().size());
  bits::reverse_into(rev, out.words(), 2 * n + 1);
  auto w = out.mutable_words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= rev[i];
  return out;
}

SumDiffStats pair_stats(const IntSet& a, const IntSet& b) {
  PairStatsWorkspace ws;
  ws.resize(a.universe_size());
  return ws.stats(a, b);
}

bool is_mstd_pair(const IntSet& a, const IntSet& b) {
  const SumDiffStats st = pair_stats(a, b);
  return st.sum_size > st.diff_size;
}

RepMultiplicities representation_multiplicities(const IntSet& a, const IntSet& b) {
  require_shared_universe(a, b);
  RepMultiplicities out;
  out.n = a.max_value();
  out.sum_mult.assign(2 * out.n + 1, 0);
  out.diff_mult.assign(2 * out.n + 1, 0);
  const std::vector<int> ae = a.elements();
  const std::vector<int> be = b.elements();
  for (int x : ae) {
    for (int y : be) {
      ++out.sum_mult[std::size_t(x + y)];
      ++out.diff_mult[std::size_t(x - y + out.n)];
    }
  }
  return out;
}

IntSet reflect(const IntSet& a, int n) {
  if (n < 0 || n + 1 > kMaxUniverseSize) throw std::invalid_argument("reflect: bad bound");
  if (a.max_element() > n) throw std::invalid_argument("reflect: set exceeds [0, n]");
  const IntSet padded = a.universe_size() == n + 1 ? a : a.resized(n + 1);
  IntSet out(n + 1);
  bits::reverse_into(out.mutable_words(), padded.words(), n + 1);
  return out;
}

IntSet affine_image(const IntSet& a, long long alpha, long long beta) {
  if (alpha == 0) throw std::invalid_argument("affine_image: alpha must be nonzero");
  const std::vector<int> elems = a.elements();
  if (elems.empty()) return IntSet(1);
  long long lo = 0, hi = 0;
  bool first = true;
  for (int e : elems) {
    const long long v = alpha * e + beta;
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  }
  if (hi - lo + 1 > kMaxUniverseSize) throw std::invalid_argument("affine_image: universe bound exceeded");
  IntSet out(int(hi - lo + 1));
  for (int e : elems) out.add(int(alpha * e + beta - lo));
  return out;
}

void PairStatsWorkspace::resize(int universe_size) {
  universe_ = universe_size;
  const int result_bits = 2 * (universe_size - 1) + 1;
  sum_.assign(std::size_t(bits::words_for(result_bits)), 0);
  diff_.assign(sum_.size(), 0);
  rev_.assign(sum_.size(), 0);
}

SumDiffStats PairStatsWorkspace::stats(const IntSet& a, const IntSet& b) {
  require_shared_universe(a, b);
  if (a.universe_size() != universe_) resize(a.universe_size());
  const int n = universe_ - 1;
  std::fill(sum_.begin(), sum_.end(), 0);
  std::fill(diff_.begin(), diff_.end(), 0);
  accumulate_shifted(sum_, a, b, 0);
  b.for_each([&](int e) { bits::or_shifted(std::span<uint64_t>(diff_), a.words(), n - e); });
  bits::reverse_into(rev_, diff_, 2 * n + 1);
  SumDiffStats st;
  int dcount = 0;
  for (std::size_t i = 0; i < diff_.size(); ++i) dcount += std::popcount(diff_[i] | rev_[i]);
  st.sum_size = bits::popcount(sum_);
  st.diff_size = dcount;
  st.sum_complement = 2 * n + 1 - st.sum_size;
  st.diff_complement = 2 * n + 1 - st.diff_size;
  return st;
}

}  // namespace mstd
