#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstd/int_set.hpp"
#include "mstd/rho.hpp"
#include "mstd/sampler.hpp"

namespace mstd {

// Boundary data of a pair at order k: L = A ∩ [0,k], Lp = B ∩ [0,k] on the low
// side and R = (n-A) ∩ [0,k], Rp = (n-B) ∩ [0,k] on the high side, detached
// from any particular n. All four sets live in the universe [0, k].
struct FringeTuple {
  IntSet L, Lp, R, Rp;
  int k = 0;

  static FringeTuple make(IntSet L, IntSet Lp, IntSet R, IntSet Rp, int k);
};

// Clipped fringe counts: sum_side = |(L+Lp) ∩ [0,k]| + |(R+Rp) ∩ [0,k]|,
// diff_side = 2 * |((L+Rp) ∪ (Lp+R)) ∩ [0,k]|.
struct FringeSides {
  int sum_side = 0;
  int diff_side = 0;
};
FringeSides fringe_sides(const FringeTuple& t);

// sum_side > diff_side: every rich pair with this fringe is MSTD.
bool is_mstd_fringe(const FringeTuple& t);
// sum_side >= diff_side: enough when additionally A ∩ B = ∅ (difference 0 missing).
bool is_weak_mstd_fringe(const FringeTuple& t);

// Requires k < n/2 so the two fringes cannot overlap.
FringeTuple fringe_profile(const IntSet& a, const IntSet& b, int n, int k);

// [k+1, 2n-k-1] ⊆ A + B.
bool is_rich_pair(const IntSet& a, const IntSet& b, int n, int k);

// Smallest k <= k_max whose profile is a strict MSTD fringe with richness, if any.
std::optional<int> minimal_fringe_order(const IntSet& a, const IntSet& b, int n, int k_max);

// Strict partial order: `smaller` (order j) precedes `bigger` (order k) iff
// j < k, each of bigger's four sets restricts to smaller's on [0, j], and
// [j, k] ⊆ L+Lp and [j, k] ⊆ R+Rp taken in `bigger`. Equal orders compare false.
bool fringe_partial_leq(const FringeTuple& smaller, const FringeTuple& bigger);

// Exact probability that a sampled pair over [0, n] (n > 2k) shows this profile:
// a product of 2(k+1) element-law factors. Independent of n.
double fringe_profile_probability(const FringeTuple& t, const RhoVector& rho);

// Limiting contribution of one fringe tuple: exact profile probability times a
// Monte-Carlo estimate of richness given the profile.
struct FringeEstimate {
  RhoVector rho;
  int n_used = 0;
  double profile_prob = 0;
  EstimateWithCI richness_given_profile;
  double product = 0;
};

// n == 0 picks the default working size below.
int default_fringe_estimation_n(int k);  // max(20k + 100, 200)
FringeEstimate estimate_fringe_limit(const FringeTuple& t, const RhoVector& rho, int n,
                                     uint64_t trials, uint64_t seed, int threads = 1);

struct CuratedFringe {
  std::string name;
  bool weak = false;  // weak tuples certify MSTD only together with A ∩ B = ∅
  FringeTuple tuple;
};

// Built-in fringe tuples backing lower_bound_p; mirrored in data/fringe_tuples.json.
const std::vector<CuratedFringe>& curated_fringe_tuples();

// Lower bound on the limiting MSTD probability. Tuples are grouped by order;
// same-order profiles are disjoint events, so each group's sum is a valid bound
// and the best group wins. rho1 > 0 uses strict tuples; rho1 == 0 uses weak
// tuples, where disjointness of the sampled pair is automatic.
struct LowerBoundReport {
  RhoVector rho;
  double bound = 0;
  std::string route;  // "zero", "strict", or "weak-disjoint"
  std::vector<FringeEstimate> parts;
};
LowerBoundReport lower_bound_p(const RhoVector& rho, int k_cap, uint64_t trials, uint64_t seed,
                               int threads = 1,
                               const std::vector<CuratedFringe>* tuples = nullptr);

// JSON: {"k": 11, "L": "0,2,3", "Lp": "...", "R": "...", "Rp": "..."}.
std::string fringe_tuple_to_json(const FringeTuple& t);
FringeTuple fringe_tuple_from_json(const std::string& text);
std::vector<CuratedFringe> curated_from_json(const std::string& text);

}  // namespace mstd
