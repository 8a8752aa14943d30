#include "mstd/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "mstd/kernels.hpp"
#include "mstd/parallel.hpp"

namespace mstd {

ConfidenceInterval wilson_interval(uint64_t successes, uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double t = double(trials);
  const double phat = double(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (phat + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t)) / denom;
  // at the boundaries center and half agree analytically; keep the ends exact
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

void sample_pair_into(IntSet& a, IntSet& b, const ElementLaw& law, SplitMix64& stream) {
  const int n = a.max_value();
  if (b.max_value() != n) throw std::invalid_argument("sample_pair_into: universes differ");
  a.clear();
  b.clear();
  auto aw = a.mutable_words();
  auto bw = b.mutable_words();
  const double t_both = law.q_both;
  const double t_a = t_both + law.q_a_only;
  const double t_b = t_a + law.q_b_only;
  for (int e = 0; e <= n; ++e) {
    const double u = stream.next_unit();
    if (u >= t_b) continue;
    const uint64_t bit = uint64_t(1) << (e % bits::kWordBits);
    const std::size_t w = std::size_t(e) / bits::kWordBits;
    if (u < t_both) {
      aw[w] |= bit;
      bw[w] |= bit;
    } else if (u < t_a) {
      aw[w] |= bit;
    } else {
      bw[w] |= bit;
    }
  }
}

std::pair<IntSet, IntSet> sample_pair(int n, const RhoVector& rho, uint64_t seed,
                                      uint64_t trial_index) {
  if (n < 0) throw std::invalid_argument("sample_pair: need n >= 0");
  const ElementLaw law = ElementLaw::from(rho);
  IntSet a(n + 1), b(n + 1);
  SplitMix64 stream = substream(seed, trial_index);
  sample_pair_into(a, b, law, stream);
  return {std::move(a), std::move(b)};
}

namespace {

// Per-worker sampling state; copies get independent buffers.
struct TrialRunner {
  int n;
  ElementLaw law;
  uint64_t seed;
  IntSet a, b;
  PairStatsWorkspace ws;

  TrialRunner(int n_, const ElementLaw& law_, uint64_t seed_)
      : n(n_), law(law_), seed(seed_), a(n_ + 1), b(n_ + 1) {
    ws.resize(n_ + 1);
  }

  SumDiffStats operator()(uint64_t trial) {
    SplitMix64 stream = substream(seed, trial);
    sample_pair_into(a, b, law, stream);
    return ws.stats(a, b);
  }
};

struct CountAccum {
  uint64_t successes = 0;
  CountAccum& operator+=(const CountAccum& o) {
    successes += o.successes;
    return *this;
  }
};

struct MomentsAccum {
  double s = 0, s2 = 0, d = 0, d2 = 0, sc = 0, sc2 = 0, dc = 0, dc2 = 0;
  double ratio = 0;
  uint64_t ratio_n = 0, mstd = 0;
  MomentsAccum& operator+=(const MomentsAccum& o) {
    s += o.s;
    s2 += o.s2;
    d += o.d;
    d2 += o.d2;
    sc += o.sc;
    sc2 += o.sc2;
    dc += o.dc;
    dc2 += o.dc2;
    ratio += o.ratio;
    ratio_n += o.ratio_n;
    mstd += o.mstd;
    return *this;
  }
};

double sample_sd(double sum, double sum_sq, uint64_t count) {
  if (count < 2) return 0.0;
  const double mean = sum / double(count);
  const double var = (sum_sq - double(count) * mean * mean) / double(count - 1);
  return std::sqrt(std::max(0.0, var));
}

}  // namespace

EstimateWithCI estimate_p_n(int n, const RhoVector& rho, uint64_t trials, uint64_t seed,
                            int threads) {
  if (n < 0) throw std::invalid_argument("estimate_p_n: need n >= 0");
  const ElementLaw law = ElementLaw::from(rho);
  struct PerTrial {
    TrialRunner runner;
    void operator()(CountAccum& acc, uint64_t t) {
      const SumDiffStats st = runner(t);
      acc.successes += st.sum_size > st.diff_size;
    }
  };
  const CountAccum total = run_trials<CountAccum>(trials, threads, PerTrial{{n, law, seed}});
  EstimateWithCI est;
  est.trials = trials;
  est.successes = total.successes;
  est.point = trials ? double(total.successes) / double(trials) : 0.0;
  const ConfidenceInterval ci = wilson_interval(total.successes, trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.seed = seed;
  est.n = n;
  est.rho = rho;
  return est;
}

SumDiffMoments estimate_sum_diff_stats(int n, const RhoVector& rho, uint64_t trials,
                                       uint64_t seed, int threads) {
  if (n < 0) throw std::invalid_argument("estimate_sum_diff_stats: need n >= 0");
  const ElementLaw law = ElementLaw::from(rho);
  struct PerTrial {
    TrialRunner runner;
    void operator()(MomentsAccum& acc, uint64_t t) {
      const SumDiffStats st = runner(t);
      acc.s += st.sum_size;
      acc.s2 += double(st.sum_size) * st.sum_size;
      acc.d += st.diff_size;
      acc.d2 += double(st.diff_size) * st.diff_size;
      acc.sc += st.sum_complement;
      acc.sc2 += double(st.sum_complement) * st.sum_complement;
      acc.dc += st.diff_complement;
      acc.dc2 += double(st.diff_complement) * st.diff_complement;
      if (st.sum_size > 0) {
        acc.ratio += double(st.diff_size) / double(st.sum_size);
        ++acc.ratio_n;
      }
      acc.mstd += st.sum_size > st.diff_size;
    }
  };
  const MomentsAccum m = run_trials<MomentsAccum>(trials, threads, PerTrial{{n, law, seed}});
  SumDiffMoments out;
  out.n = n;
  out.rho = rho;
  out.trials = trials;
  out.seed = seed;
  if (trials) {
    const double t = double(trials);
    out.mean_sum = m.s / t;
    out.mean_diff = m.d / t;
    out.mean_sum_complement = m.sc / t;
    out.mean_diff_complement = m.dc / t;
    out.sd_sum = sample_sd(m.s, m.s2, trials);
    out.sd_diff = sample_sd(m.d, m.d2, trials);
    out.sd_sum_complement = sample_sd(m.sc, m.sc2, trials);
    out.sd_diff_complement = sample_sd(m.dc, m.dc2, trials);
    out.mstd_frequency = double(m.mstd) / t;
  }
  out.mean_diff_over_sum = m.ratio_n ? m.ratio / double(m.ratio_n) : 0.0;
  out.ratio_trials = m.ratio_n;
  out.mstd_count = m.mstd;
  return out;
}

}  // namespace mstd
