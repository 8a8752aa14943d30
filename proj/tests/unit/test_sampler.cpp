#include <doctest.h>

#include <cmath>

#include "mstd/kernels.hpp"
#include "mstd/sampler.hpp"
#include "oracles.hpp"

using namespace mstd;

TEST_CASE("wilson interval basics") {
  const ConfidenceInterval empty = wilson_interval(0, 0);
  CHECK(empty.low == 0.0);
  CHECK(empty.high == 1.0);

  const ConfidenceInterval none = wilson_interval(0, 100);
  CHECK(none.low == 0.0);
  CHECK(none.high > 0.0);
  CHECK(none.high < 0.05);

  const ConfidenceInterval all = wilson_interval(100, 100);
  CHECK(all.high == 1.0);
  CHECK(all.low > 0.95);

  const ConfidenceInterval mid = wilson_interval(50, 100);
  CHECK(mid.low < 0.5);
  CHECK(mid.high > 0.5);
  CHECK(mid.low > 0.39);
  CHECK(mid.high < 0.61);
}

TEST_CASE("sample_pair is reproducible and respects degenerate laws") {
  const auto [a1, b1] = sample_pair(50, {0.5, 0.5, 0.5}, 7, 3);
  const auto [a2, b2] = sample_pair(50, {0.5, 0.5, 0.5}, 7, 3);
  CHECK(a1 == a2);
  CHECK(b1 == b2);
  const auto [a3, b3] = sample_pair(50, {0.5, 0.5, 0.5}, 7, 4);
  CHECK((a3 != a1 || b3 != b1));

  // rho1 = 1, rho2 = 0 forces B = A; rho1 = 0, rho2 = 1 forces B = complement
  for (uint64_t t = 0; t < 20; ++t) {
    const auto [a, b] = sample_pair(40, {0.5, 1.0, 0.0}, 11, t);
    CHECK(a == b);
    const auto [c, d] = sample_pair(40, {0.5, 0.0, 1.0}, 11, t);
    CHECK(c.count() + d.count() == 41);
    bool overlap = false;
    c.for_each([&](int e) { overlap = overlap || d.contains(e); });
    CHECK_FALSE(overlap);
  }

  const auto [full, none] = sample_pair(30, {1.0, 0.0, 1.0}, 5);
  CHECK(full.count() == 31);
  CHECK(none.empty());
}

TEST_CASE("estimate_p_n is deterministic and thread-count invariant") {
  const EstimateWithCI one = estimate_p_n(40, {0.5, 0.5, 0.5}, 20000, 99, 1);
  const EstimateWithCI again = estimate_p_n(40, {0.5, 0.5, 0.5}, 20000, 99, 1);
  const EstimateWithCI threaded = estimate_p_n(40, {0.5, 0.5, 0.5}, 20000, 99, 3);
  CHECK(one.successes == again.successes);
  CHECK(one.successes == threaded.successes);
  CHECK(one.point == threaded.point);
  CHECK(one.ci_low <= one.point);
  CHECK(one.point <= one.ci_high);
  CHECK(one.trials == 20000);
}

TEST_CASE("estimate_p_n agrees with the exact small-universe probability") {
  const int n = 4;
  const RhoVector rho{0.5, 0.3, 0.7};
  double exact = 0;
  oracle::for_each_assignment(n, rho, [&](uint32_t am, uint32_t bm, double prob) {
    if (small::is_mstd_mask(am, bm, n)) exact += prob;
  });
  const EstimateWithCI est = estimate_p_n(n, rho, 200000, 12345);
  const double se = std::sqrt(exact * (1 - exact) / double(est.trials));
  CHECK(std::abs(est.point - exact) < 4 * se + 1e-9);
  CHECK(est.ci_low <= exact);
  CHECK(exact <= est.ci_high);
}

TEST_CASE("moment estimates match forced laws") {
  // p=1, rho1=1: A = B = [0,n] always, so every statistic is deterministic
  const SumDiffMoments forced = estimate_sum_diff_stats(20, {1.0, 1.0, 0.5}, 500, 3);
  CHECK(forced.mean_sum == doctest::Approx(41.0));
  CHECK(forced.sd_sum == doctest::Approx(0.0));
  CHECK(forced.mean_diff == doctest::Approx(41.0));
  CHECK(forced.mean_sum_complement == doctest::Approx(0.0));
  CHECK(forced.mean_diff_complement == doctest::Approx(0.0));
  CHECK(forced.mean_diff_over_sum == doctest::Approx(1.0));
  CHECK(forced.ratio_trials == 500);
  CHECK(forced.mstd_count == 0);
  CHECK(forced.mstd_frequency == doctest::Approx(0.0));
}

TEST_CASE("moment estimation is deterministic across thread counts") {
  const SumDiffMoments a = estimate_sum_diff_stats(60, {0.3, 0.6, 0.2}, 9000, 555, 1);
  const SumDiffMoments b = estimate_sum_diff_stats(60, {0.3, 0.6, 0.2}, 9000, 555, 4);
  CHECK(a.mean_sum == b.mean_sum);
  CHECK(a.sd_sum == b.sd_sum);
  CHECK(a.mean_diff == b.mean_diff);
  CHECK(a.mean_diff_over_sum == b.mean_diff_over_sum);
  CHECK(a.mstd_count == b.mstd_count);
  CHECK(a.ratio_trials == b.ratio_trials);
}

TEST_CASE("sampled mean sum size tracks the exact expectation") {
  // E|A+B| = sum over k of P(k in A+B), available in closed form
  const int n = 30;
  const RhoVector rho{0.4, 0.6, 0.3};
  double expect = 0;
  for (int k = 0; k <= 2 * n; ++k) expect += 1.0 - prob_sum_missing(k, n, rho);
  const SumDiffMoments mom = estimate_sum_diff_stats(n, rho, 40000, 777);
  const double se = mom.sd_sum / std::sqrt(double(mom.trials));
  CHECK(std::abs(mom.mean_sum - expect) < 5 * se + 1e-9);
}

TEST_CASE("substreams honor the spacing contract") {
  SplitMix64 s0 = substream(42, 0);
  SplitMix64 s1 = substream(42, 1);
  CHECK(s0.next() != s1.next());
  // one stream advanced far stays clear of the next stream's start
  SplitMix64 probe = substream(42, 0);
  uint64_t x = 0;
  for (int i = 0; i < 1000; ++i) x ^= probe.next();
  SplitMix64 fresh = substream(42, 1);
  CHECK(probe.next() != fresh.next());
  (void)x;
}
