#include "mstd/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mstd/kernels.hpp"
#include "mstd/rng.hpp"

namespace mstd {

double g_function(double x) {
  if (!(x > 0)) throw std::invalid_argument("g_function: need x > 0");
  if (x < 1e-6) return x - x * x / 3 + x * x * x / 12;
  return 2 * (std::exp(-x) - (1 - x)) / x;
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v) {
    out.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

using u128 = unsigned __int128;
constexpr u128 kU128Max = ~u128(0);

// C(a, k) by the stepwise exact recurrence r_{i+1} = r_i (a - i) / (i + 1).
u128 binomial_u128(int64_t a, int k) {
  if (k < 0 || a < k) return 0;
  if (k > a - k) k = int(a - k);
  u128 r = 1;
  for (int i = 0; i < k; ++i) {
    const u128 f = u128(a - i);
    if (r > kU128Max / f) throw std::overflow_error("binomial: value exceeds 128 bits");
    r = r * f / u128(i + 1);
  }
  return r;
}

unsigned long long binomial_u64(int r, int k) {
  if (k < 0 || r < k) return 0;
  if (k > r - k) k = r - k;
  unsigned long long v = 1;
  for (int i = 0; i < k; ++i) {
    const unsigned long long f = (unsigned long long)(r - i);
    if (v > std::numeric_limits<unsigned long long>::max() / f) {
      throw std::overflow_error("binomial: value exceeds 64 bits");
    }
    v = v * f / (unsigned long long)(i + 1);
  }
  return v;
}

}  // namespace

unsigned __int128 count_xi1(int64_t N, int k) {
  if (k < 1 || N < 2 * k) throw std::invalid_argument("count_xi1: need N >= 2k >= 2");
  u128 total = 0;
  for (int64_t n = 1; n <= 2 * N - 1; ++n) {
    // pairs {a, n-a} with a < n-a and both ends in [0, N]
    const int64_t lo = std::max<int64_t>(0, n - N);
    const int64_t hi = (n - 1) / 2;
    if (hi < lo) continue;
    const u128 term = binomial_u128(hi - lo + 1, k);
    if (total > kU128Max - term) throw std::overflow_error("count_xi1: value exceeds 128 bits");
    total += term;
  }
  return total;
}

double count_xi1_approx(int64_t N, int k) {
  const u128 v = count_xi1(N, k);
  return double(uint64_t(v >> 64)) * 0x1.0p64 + double(uint64_t(v));
}

unsigned long long CollisionProfile::x_k(int k) const {
  unsigned long long total = 0;
  for (const auto& [s, r] : sum_pairs) total += binomial_u64(r, k);
  return total;
}

unsigned long long CollisionProfile::x_prime_k(int k) const {
  unsigned long long total = 0;
  for (const auto& [d, r] : diff_pairs) total += binomial_u64(r, k);
  return total;
}

CollisionProfile collision_profile(const IntSet& a, const IntSet& b) {
  const int universe = std::max(a.universe_size(), b.universe_size());
  const IntSet aa = a.universe_size() == universe ? a : a.resized(universe);
  const IntSet bb = b.universe_size() == universe ? b : b.resized(universe);

  IntSet both(universe);
  {
    auto w = both.mutable_words();
    const auto wa = aa.words();
    const auto wb = bb.words();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = wa[i] & wb[i];
  }

  const RepMultiplicities rep = representation_multiplicities(aa, bb);
  const RepMultiplicities rep_both = representation_multiplicities(both, both);
  const int n = rep.n;

  CollisionProfile prof;
  for (int s = 0; s <= 2 * n; ++s) {
    // ordered count, minus once per cross pair {x,y}, x != y, with both
    // endpoints in A and B (those pairs appear in both orders)
    const int ordered = rep.sum_mult[std::size_t(s)];
    if (!ordered) continue;
    const int diag = s % 2 == 0 && both.contains(s / 2) ? 1 : 0;
    const int twice_counted = (rep_both.sum_mult[std::size_t(s)] - diag) / 2;
    const int r = ordered - twice_counted;
    if (r) prof.sum_pairs.emplace(s, r);
  }
  for (int d = -n; d <= n; ++d) {
    if (d == 0) continue;
    const int r = rep.diff_mult[std::size_t(d + n)];
    if (r) prof.diff_pairs.emplace(d, r);
  }
  return prof;
}

double expected_x1(int64_t N, const RhoVector& rho) {
  rho.validate();
  if (N < 1) throw std::invalid_argument("expected_x1: need N >= 1");
  const double distinct_pairs = double(N) * double(N + 1) / 2;
  return distinct_pairs * p_hat(rho) + double(N + 1) * rho.p * rho.rho1;
}

double solve_p_for_p_hat(double target, double rho1, double rho2) {
  if (rho1 < 0 || rho1 > 1 || rho2 < 0 || rho2 > 1) {
    throw std::invalid_argument("solve_p_for_p_hat: rho1, rho2 must lie in [0, 1]");
  }
  if (target < 0) throw std::invalid_argument("solve_p_for_p_hat: target must be >= 0");
  // p_hat(p) = a p^2 + b p with a = 2 rho1 - rho1^2 - 2 rho2, b = 2 rho2;
  // increasing on [0, p_peak], so the smallest root lives there
  const double a = 2 * rho1 - rho1 * rho1 - 2 * rho2;
  const double b = 2 * rho2;
  const double p_peak = a < 0 ? std::min(1.0, -b / (2 * a)) : 1.0;
  auto f = [&](double p) { return a * p * p + b * p; };
  const double best = f(p_peak);
  if (target > best + 1e-15) {
    std::ostringstream msg;
    msg << "solve_p_for_p_hat: target " << target << " exceeds the maximum " << best
        << " reachable at these rho";
    throw std::invalid_argument(msg.str());
  }
  if (target == 0) return 0;
  if (target >= best) return p_peak;
  double lo = 0, hi = p_peak;
  while (hi - lo > 1e-12) {
    const double mid = (lo + hi) / 2;
    (f(mid) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

double DecaySpec::p_at(int64_t N) const {
  if (N < 1) throw std::invalid_argument("DecaySpec: need N >= 1");
  if (rho1 < 0 || rho1 > 1 || rho2 < 0 || rho2 > 1 || rho1 + rho2 <= 0 || rho1 + rho2 >= 2) {
    throw std::invalid_argument("DecaySpec: need rho1, rho2 in [0, 1] with 0 < rho1 + rho2 < 2");
  }
  double p = 0;
  switch (regime) {
    case DecayRegime::fixed_p:
      p = param;
      break;
    case DecayRegime::p_hat_power:
      if (param <= 0) throw std::invalid_argument("DecaySpec: power regime needs alpha > 0");
      p = solve_p_for_p_hat(std::pow(double(N), -param), rho1, rho2);
      break;
    case DecayRegime::p_hat_over_n:
      if (param <= 0) throw std::invalid_argument("DecaySpec: c/N regime needs c > 0");
      p = solve_p_for_p_hat(param / double(N), rho1, rho2);
      break;
  }
  if (p <= 0 || p >= 1) {
    std::ostringstream msg;
    msg << "DecaySpec: resolved p = " << p << " at N = " << N << " is outside (0, 1)";
    throw std::invalid_argument(msg.str());
  }
  if (double(N) * p <= 1) {
    std::ostringstream msg;
    msg << "DecaySpec: N * p = " << double(N) * p << " at N = " << N
        << " violates the 1/N = o(p) requirement";
    throw std::invalid_argument(msg.str());
  }
  return p;
}

double DecaySpec::p_hat_at(int64_t N) const { return p_hat(rho_at(N)); }

RhoVector DecaySpec::rho_at(int64_t N) const { return RhoVector{p_at(N), rho1, rho2}; }

DecayRegime parse_regime(const std::string& name) {
  if (name == "fixed") return DecayRegime::fixed_p;
  if (name == "power") return DecayRegime::p_hat_power;
  if (name == "chat") return DecayRegime::p_hat_over_n;
  throw std::invalid_argument("unknown regime '" + name + "', expected fixed, power, or chat");
}

std::vector<PhaseRow> phase_scan(const DecaySpec& spec, const std::vector<int64_t>& n_list,
                                 uint64_t trials, uint64_t seed, int threads) {
  // validate the whole scan before spending any sampling time
  for (int64_t N : n_list) (void)spec.p_at(N);
  std::vector<PhaseRow> rows;
  rows.reserve(n_list.size());
  for (int64_t N : n_list) {
    PhaseRow row;
    row.N = N;
    const RhoVector rho = spec.rho_at(N);
    row.p = rho.p;
    row.p_hat = p_hat(rho);
    const uint64_t row_seed = mix64(seed) ^ mix64(uint64_t(N));
    row.moments = estimate_sum_diff_stats(int(N), rho, trials, row_seed, threads);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string phase_rows_to_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream out;
  out << "N,mean_sum,mean_diff,mean_diff_over_sum,mean_sum_complement,"
         "mean_diff_complement,mstd_frequency\n";
  out.setf(std::ios::fixed);
  out.precision(6);
  for (const PhaseRow& r : rows) {
    out << r.N << ',' << r.moments.mean_sum << ',' << r.moments.mean_diff << ','
        << r.moments.mean_diff_over_sum << ',' << r.moments.mean_sum_complement << ','
        << r.moments.mean_diff_complement << ',' << r.moments.mstd_frequency << '\n';
  }
  return out.str();
}

}  // namespace mstd
