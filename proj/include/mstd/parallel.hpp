#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mstd {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

inline constexpr uint64_t kTrialChunk = 4096;

// Runs per_trial(acc, t) for t in [0, trials). Trials are accumulated into
// fixed chunks of kTrialChunk and the chunk results are folded in index order,
// so the total is bit-identical for every thread count. Each worker gets a
// private copy of `prototype`; Accum needs operator+= and value initialization.
template <class Accum, class PerTrial>
Accum run_trials(uint64_t trials, int threads, const PerTrial& prototype) {
  const uint64_t nchunks = trials == 0 ? 0 : (trials - 1) / kTrialChunk + 1;
  std::vector<Accum> partial(nchunks);
  std::atomic<uint64_t> cursor{0};
  auto work = [&] {
    PerTrial per_trial(prototype);
    for (uint64_t c; (c = cursor.fetch_add(1, std::memory_order_relaxed)) < nchunks;) {
      Accum acc{};
      const uint64_t lo = c * kTrialChunk;
      const uint64_t hi = std::min(trials, lo + kTrialChunk);
      for (uint64_t t = lo; t < hi; ++t) per_trial(acc, t);
      partial[c] = acc;
    }
  };
  const int want = resolve_threads(threads);
  const int nt = int(std::min<uint64_t>(uint64_t(want), std::max<uint64_t>(nchunks, 1)));
  if (nt <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nt - 1));
    for (int i = 0; i + 1 < nt; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }
  Accum total{};
  for (const Accum& a : partial) total += a;
  return total;
}

}  // namespace mstd
