#pragma once

#include <cstdint>
#include <utility>

#include "mstd/int_set.hpp"
#include "mstd/rho.hpp"
#include "mstd/rng.hpp"

namespace mstd {

struct ConfidenceInterval {
  double low = 0;
  double high = 0;
};

// 95% by default; always contains successes/trials.
ConfidenceInterval wilson_interval(uint64_t successes, uint64_t trials,
                                   double z = 1.959963984540054);

struct EstimateWithCI {
  double point = 0;
  uint64_t trials = 0;
  uint64_t successes = 0;
  double ci_low = 0;
  double ci_high = 0;
  uint64_t seed = 0;
  int n = 0;
  RhoVector rho;
};

// One draw per element: the four-outcome law decides membership in A and B
// jointly. a and b must share the universe [0, n].
void sample_pair_into(IntSet& a, IntSet& b, const ElementLaw& law, SplitMix64& stream);

std::pair<IntSet, IntSet> sample_pair(int n, const RhoVector& rho, uint64_t seed,
                                      uint64_t trial_index = 0);

// Monte-Carlo estimate of P(sampled pair is MSTD) over [0, n].
// Deterministic for fixed (n, rho, trials, seed) at any thread count.
EstimateWithCI estimate_p_n(int n, const RhoVector& rho, uint64_t trials, uint64_t seed,
                            int threads = 1);

struct SumDiffMoments {
  int n = 0;
  RhoVector rho;
  uint64_t trials = 0;
  uint64_t seed = 0;
  double mean_sum = 0, sd_sum = 0;
  double mean_diff = 0, sd_diff = 0;
  double mean_sum_complement = 0, sd_sum_complement = 0;
  double mean_diff_complement = 0, sd_diff_complement = 0;
  double mean_diff_over_sum = 0;  // over trials with a nonempty sumset
  uint64_t ratio_trials = 0;
  uint64_t mstd_count = 0;
  double mstd_frequency = 0;
};

SumDiffMoments estimate_sum_diff_stats(int n, const RhoVector& rho, uint64_t trials,
                                       uint64_t seed, int threads = 1);

}  // namespace mstd
