#include "mstd/rho.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mstd {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must be in [0,1], got " + std::to_string(v));
  }
}

}  // namespace

void RhoVector::validate() const {
  check_unit(p, "p");
  check_unit(rho1, "rho1");
  check_unit(rho2, "rho2");
}

ElementLaw ElementLaw::from(const RhoVector& rho) {
  rho.validate();
  ElementLaw law;
  law.q_both = rho.p * rho.rho1;
  law.q_a_only = rho.p * (1.0 - rho.rho1);
  law.q_b_only = (1.0 - rho.p) * rho.rho2;
  law.q_neither = (1.0 - rho.p) * (1.0 - rho.rho2);
  return law;
}

bool in_zero_region(const RhoVector& rho) {
  rho.validate();
  const double s = rho.rho1 + rho.rho2;
  return rho.p == 0.0 || rho.p == 1.0 || s == 0.0 || s == 2.0;
}

double rho3(const RhoVector& rho) {
  rho.validate();
  const double p = rho.p, r1 = rho.rho1, r2 = rho.rho2;
  return (1 - r1) * (1 - r1) * p * p + 2 * (1 - r2) * p * (1 - p) + (1 - p) * (1 - p);
}

double rho4(const RhoVector& rho) {
  rho.validate();
  return (1 - rho.rho1) * rho.p + (1 - rho.p);
}

double p_hat(const RhoVector& rho) {
  rho.validate();
  const double p = rho.p, r1 = rho.rho1, r2 = rho.rho2;
  return p * p * (2 * r1 - r1 * r1) + 2 * p * (1 - p) * r2;
}

double prob_sum_missing(int k, int n, const RhoVector& rho) {
  if (n < 0 || k < 0 || k > 2 * n) throw std::invalid_argument("prob_sum_missing: need 0 <= k <= 2n");
  // m = #{ {a,b} : a != b, a+b = k, a,b ∈ [0,n] }, computed in integer arithmetic.
  const long long m = k % 2 ? std::min((k + 1) / 2, (2 * n - k + 1) / 2)
                            : std::min(k / 2, (2 * n - k) / 2);
  const double base = std::pow(rho3(rho), double(m));
  return k % 2 ? base : rho4(rho) * base;
}

double prob_diff_missing_bound(int k, int n, const RhoVector& rho) {
  const int a = std::abs(k);
  if (n <= 0 || a < 1 || a > n) throw std::invalid_argument("prob_diff_missing_bound: need 1 <= |k| <= n");
  const double r3 = rho3(rho);
  if (2 * a <= n) return std::pow(r3, double(n) / 3.0);
  return std::pow(r3, double(n - a));
}

double prob_diff_zero_missing(int n, const RhoVector& rho) {
  if (n < 0) throw std::invalid_argument("prob_diff_zero_missing: need n >= 0");
  rho.validate();
  return std::pow(1.0 - rho.p * rho.rho1, double(n + 1));
}

double prob_joint_event_e(const RhoVector& rho) {
  rho.validate();
  const double p = rho.p, r1 = rho.rho1, r2 = rho.rho2;
  return p * (1 - p) * (1 - p) * r2 * r2 + 2 * p * p * (1 - p) * r1 * r2 * (2 - r1) +
         p * p * p * r1 * (1 + r1 - r1 * r1) + p * p * (1 - p) * r2;
}

double pair_probability(const IntSet& a, const IntSet& b, int n, const RhoVector& rho) {
  if (a.max_element() > n || b.max_element() > n) {
    throw std::invalid_argument("pair_probability: sets exceed [0, n]");
  }
  const ElementLaw law = ElementLaw::from(rho);
  double prob = 1.0;
  for (int e = 0; e <= n; ++e) {
    const bool in_a = a.contains(e), in_b = b.contains(e);
    prob *= in_a ? (in_b ? law.q_both : law.q_a_only) : (in_b ? law.q_b_only : law.q_neither);
  }
  return prob;
}

}  // namespace mstd
