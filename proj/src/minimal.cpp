#include "mstd/minimal.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "mstd/kernels.hpp"
#include "mstd/parallel.hpp"

namespace mstd {

namespace {

std::pair<IntSet, IntSet> shared_universe(const IntSet& a, const IntSet& b) {
  const int universe = std::max(a.universe_size(), b.universe_size());
  return {a.universe_size() == universe ? a : a.resized(universe),
          b.universe_size() == universe ? b : b.resized(universe)};
}

using Encoding = std::pair<std::vector<int>, std::vector<int>>;

Encoding encode(const IntSet& a, const IntSet& b) { return {a.elements(), b.elements()}; }

}  // namespace

CanonicalPair canonicalize(const IntSet& a, const IntSet& b) {
  std::vector<int> ae = a.elements();
  std::vector<int> be = b.elements();
  if (ae.empty() && be.empty()) throw std::invalid_argument("canonicalize: A ∪ B is empty");

  int lo = kMaxUniverseSize;
  for (int e : ae) lo = std::min(lo, e);
  for (int e : be) lo = std::min(lo, e);
  int g = 0;
  for (int e : ae) g = std::gcd(g, e - lo);
  for (int e : be) g = std::gcd(g, e - lo);
  if (g == 0) g = 1;  // single distinct value in A ∪ B

  int m = 0;
  for (int& e : ae) m = std::max(m, e = (e - lo) / g);
  for (int& e : be) m = std::max(m, e = (e - lo) / g);

  const IntSet plain_a = IntSet::from_elements(ae, m + 1);
  const IntSet plain_b = IntSet::from_elements(be, m + 1);
  const IntSet flip_a = reflect(plain_a, m);
  const IntSet flip_b = reflect(plain_b, m);

  CanonicalPair out;
  out.original_a = a;
  out.original_b = b;
  out.shift = lo;
  out.divisor = g;
  out.reflected = encode(flip_a, flip_b) < encode(plain_a, plain_b);
  out.a = out.reflected ? flip_a : plain_a;
  out.b = out.reflected ? flip_b : plain_b;
  return out;
}

namespace {

uint64_t binomial(int n, int k) {
  if (k < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  uint64_t v = 1;
  for (int i = 0; i < k; ++i) v = v * uint64_t(n - i) / uint64_t(i + 1);
  return v;
}

// next k-subset mask in increasing numeric order (Gosper)
uint64_t next_combination(uint64_t v) {
  const uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

std::vector<uint64_t> all_masks(int universe, int k) {
  std::vector<uint64_t> out;
  if (k < 1 || k > universe) return out;
  const uint64_t limit = uint64_t(1) << universe;
  for (uint64_t m = (uint64_t(1) << k) - 1; m < limit; m = next_combination(m)) out.push_back(m);
  return out;
}

}  // namespace

std::vector<CanonicalPair> search_size(SizeClass size, int n_max, uint64_t budget, int threads) {
  if (size.size_a < 1 || size.size_b < 1) {
    throw std::invalid_argument("search_size: set sizes must be >= 1");
  }
  if (n_max < 0 || n_max > 31) {
    throw std::invalid_argument("search_size: n_max must lie in [0, 31]");
  }
  const uint64_t cost = binomial(n_max + 1, size.size_a) * binomial(n_max + 1, size.size_b);
  if (cost > budget) {
    std::ostringstream msg;
    msg.setf(std::ios::scientific);
    msg.precision(2);
    msg << "search_size: " << double(cost) << " pairs exceed the budget of " << double(budget);
    throw BudgetError(msg.str());
  }

  const std::vector<uint64_t> a_masks = all_masks(n_max + 1, size.size_a);
  const std::vector<uint64_t> b_masks = all_masks(n_max + 1, size.size_b);

  using Hit = std::pair<uint32_t, uint32_t>;
  auto scan = [&](std::size_t a_lo, std::size_t a_hi, std::vector<Hit>& hits) {
    for (std::size_t i = a_lo; i < a_hi; ++i) {
      const uint32_t am = uint32_t(a_masks[i]);
      for (const uint64_t bm : b_masks) {
        if (small::is_mstd_mask(am, uint32_t(bm), n_max)) hits.emplace_back(am, uint32_t(bm));
      }
    }
  };

  std::vector<Hit> hits;
  const int nt = std::max(1, std::min<int>(resolve_threads(threads), int(a_masks.size())));
  if (nt <= 1) {
    scan(0, a_masks.size(), hits);
  } else {
    const std::size_t nparts = std::size_t(nt);
    std::vector<std::vector<Hit>> parts(nparts);
    std::vector<std::thread> pool;
    const std::size_t chunk = (a_masks.size() + std::size_t(nt) - 1) / std::size_t(nt);
    for (int w = 0; w < nt; ++w) {
      const std::size_t lo = std::min(a_masks.size(), std::size_t(w) * chunk);
      const std::size_t hi = std::min(a_masks.size(), lo + chunk);
      pool.emplace_back(scan, lo, hi, std::ref(parts[std::size_t(w)]));
    }
    for (auto& th : pool) th.join();
    for (const auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());
  }

  // dedupe by canonical encoding; hits arrive in mask order, so the kept
  // representative (the first) is deterministic
  std::map<Encoding, CanonicalPair> classes;
  for (const auto& [am, bm] : hits) {
    std::vector<int> ae, be;
    for (int e = 0; e <= n_max; ++e) {
      if (am >> e & 1) ae.push_back(e);
      if (bm >> e & 1) be.push_back(e);
    }
    CanonicalPair cp = canonicalize(IntSet::from_elements(ae, n_max + 1),
                                    IntSet::from_elements(be, n_max + 1));
    classes.emplace(encode(cp.a, cp.b), std::move(cp));
  }

  std::vector<CanonicalPair> out;
  out.reserve(classes.size());
  for (auto& [key, cp] : classes) out.push_back(std::move(cp));
  return out;
}

bool verify_triple_lemma(const IntSet& a, const IntSet& b) {
  const auto [aa, bb] = shared_universe(a, b);
  const RepMultiplicities rep = representation_multiplicities(aa, bb);
  return std::any_of(rep.sum_mult.begin(), rep.sum_mult.end(), [](int m) { return m >= 3; });
}

StructureReport structure_report(const IntSet& a, const IntSet& b) {
  const auto [aa, bb] = shared_universe(a, b);
  const RepMultiplicities rep = representation_multiplicities(aa, bb);

  StructureReport rpt;
  rpt.pair_product = (long long)(aa.count()) * bb.count();
  for (const int m : rep.sum_mult) {
    if (!m) continue;
    ++rpt.sum_size;
    rpt.collapsed_sums += (long long)(m) * (m - 1) / 2;
    rpt.sum_excess += (long long)(m - 1) * (m - 2) / 2;
  }
  for (const int m : rep.diff_mult) {
    if (!m) continue;
    ++rpt.signed_diff_size;
    rpt.collapsed_diffs += (long long)(m) * (m - 1) / 2;
    rpt.diff_excess += (long long)(m - 1) * (m - 2) / 2;
  }
  rpt.m_value = rpt.pair_product - rpt.collapsed_sums;
  rpt.pm_diff_size = pair_stats(aa, bb).diff_size;
  return rpt;
}

}  // namespace mstd
