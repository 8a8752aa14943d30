#pragma once

#include "mstd/int_set.hpp"

namespace mstd {

// Correlated-pair law: P(k ∈ A) = p, P(k ∈ B | k ∈ A) = rho1,
// P(k ∈ B | k ∉ A) = rho2, independently across elements k of [0, n].
struct RhoVector {
  double p = 0;
  double rho1 = 0;
  double rho2 = 0;

  void validate() const;
};

// Per-element joint membership probabilities induced by a RhoVector.
struct ElementLaw {
  double q_both = 0;     // in A and in B:   p * rho1
  double q_a_only = 0;   // in A only:       p * (1 - rho1)
  double q_b_only = 0;   // in B only:       (1 - p) * rho2
  double q_neither = 0;  // in neither:      (1 - p) * (1 - rho2)

  static ElementLaw from(const RhoVector& rho);
};

// Degenerate corner: p ∈ {0,1} or rho1 + rho2 ∈ {0,2}; the limiting MSTD
// probability vanishes there.
bool in_zero_region(const RhoVector& rho);

// P(neither (a,b) nor (b,a) lands in A×B) for two distinct elements a, b.
double rho3(const RhoVector& rho);

// Same event for a single element pair (a,a); equals 1 - p*rho1.
double rho4(const RhoVector& rho);

// P(the membership event holds for a fixed pair of distinct elements);
// satisfies 1 - rho3 = p_hat identically.
double p_hat(const RhoVector& rho);

// Exact P(k ∉ A+B) for A, B ⊆ [0, n]: rho4^[k even] * rho3^m with m the number
// of distinct-element pairs {a,b}, a+b = k. Requires 0 <= k <= 2n.
double prob_sum_missing(int k, int n, const RhoVector& rho);

// Upper bound on P(k ∉ ±(A-B)) for 1 <= |k| <= n: rho3^(n/3) for |k| <= n/2
// (real exponent), rho3^(n-|k|) otherwise. k = 0 is a separate event, see below.
double prob_diff_missing_bound(int k, int n, const RhoVector& rho);

// P(0 ∉ ±(A-B)) = P(A ∩ B = ∅) = (1 - p*rho1)^(n+1).
double prob_diff_zero_missing(int n, const RhoVector& rho);

// P(the membership events of (a,b) and (a,c) both hold) for distinct a, b, c.
double prob_joint_event_e(const RhoVector& rho);

// Probability that the sampler over [0, n] draws exactly the pair (A, B).
double pair_probability(const IntSet& a, const IntSet& b, int n, const RhoVector& rho);

}  // namespace mstd
