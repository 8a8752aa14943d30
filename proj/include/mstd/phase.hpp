#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mstd/int_set.hpp"
#include "mstd/rho.hpp"
#include "mstd/sampler.hpp"

namespace mstd {

// g(x) = 2(e^{-x} - (1 - x))/x for x > 0. Below 1e-6 the closed form loses all
// precision to cancellation and a short series takes over. g(x)/x -> 1 as
// x -> 0+, g(x) -> 2 as x -> infinity.
double g_function(double x);

std::string u128_to_string(unsigned __int128 v);

// Number of ways to pick k unordered pairs {a,b}, a < b, from [0, N] so that
// all k pairs share one sum. Same-sum pairs are automatically disjoint, so the
// count per sum value is a plain binomial. Requires N >= 2k >= 2; throws
// overflow_error when the exact value would not fit 128 bits.
unsigned __int128 count_xi1(int64_t N, int k);
// Same value rounded to double (exact until the 2^53 boundary).
double count_xi1_approx(int64_t N, int k);

// Collision statistics of a concrete pair. Sums are counted over unordered
// element-pairs {a,b} with a = b allowed: the pair counts toward r_s at
// s = a + b when one endpoint is in A and the other in B, in either role.
// Differences keep their sign: r'_d for d != 0 counts ordered (a,b) in A x B
// with a - b = d; the sign already fixes the roles, so no merge is needed.
struct CollisionProfile {
  std::map<int, int> sum_pairs;   // s -> r_s, entries with r_s >= 1 only
  std::map<int, int> diff_pairs;  // d -> r'_d, d != 0, entries >= 1 only

  // X_k = sum_s C(r_s, k) and the difference analogue.
  unsigned long long x_k(int k) const;
  unsigned long long x_prime_k(int k) const;
};

CollisionProfile collision_profile(const IntSet& a, const IntSet& b);

// Analytic E[X_1] for a pair drawn over [0, N]: one p_hat per unordered pair
// of distinct elements plus one p*rho1 per diagonal pair {a,a}, all N+1 of
// them counted exactly.
double expected_x1(int64_t N, const RhoVector& rho);

// Smallest p in [0,1] with p_hat(p, rho1, rho2) = target, bisected to 1e-12.
// The quadratic peaks inside (0,1) when 2*rho1 - rho1^2 < 2*rho2; any target
// up to that peak is accepted, beyond it is an error.
double solve_p_for_p_hat(double target, double rho1, double rho2);

enum class DecayRegime {
  fixed_p,       // p itself stays constant
  p_hat_power,   // p_hat = N^-alpha
  p_hat_over_n,  // p_hat = c / N
};

// How the sampling law decays along a scan. rho1 and rho2 are held fixed and
// must satisfy 0 < rho1 + rho2 < 2; p is resolved per N, directly or through
// solve_p_for_p_hat.
struct DecaySpec {
  DecayRegime regime = DecayRegime::fixed_p;
  double param = 0;  // p for fixed_p, alpha for p_hat_power, c for p_hat_over_n
  double rho1 = 0;
  double rho2 = 0;

  // Resolved p at this N. Throws unless p is in (0,1) and N*p > 1; the scan
  // regimes assume 1/N = o(p) and this is the per-N finite check.
  double p_at(int64_t N) const;
  double p_hat_at(int64_t N) const;
  RhoVector rho_at(int64_t N) const;
};

DecayRegime parse_regime(const std::string& name);  // "fixed", "power", "chat"

struct PhaseRow {
  int64_t N = 0;
  double p = 0;
  double p_hat = 0;
  SumDiffMoments moments;
};

// One Monte-Carlo row per N. Each row's stream is derived from (seed, N), so
// a row's numbers do not depend on its position in n_list.
std::vector<PhaseRow> phase_scan(const DecaySpec& spec, const std::vector<int64_t>& n_list,
                                 uint64_t trials, uint64_t seed, int threads = 1);

// CSV with the scan's observable columns, 6-decimal fixed point:
// N, mean_sum, mean_diff, mean_diff_over_sum, mean_sum_complement,
// mean_diff_complement, mstd_frequency.
std::string phase_rows_to_csv(const std::vector<PhaseRow>& rows);

}  // namespace mstd
