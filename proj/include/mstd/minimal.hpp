#pragma once

#include <cstdint>
#include <vector>

#include "mstd/enumerate.hpp"
#include "mstd/int_set.hpp"

namespace mstd {

struct SizeClass {
  int size_a = 1;
  int size_b = 1;
};

// Affine-reduced representative of a pair: translate so min(A ∪ B) = 0, divide
// out gcd(A ∪ B), then keep the lexicographically smaller of the pair and its
// joint reflection (A, B) -> (m - A, m - B) with m = max(A ∪ B). Encodings
// compare as (elements of A, elements of B).
struct CanonicalPair {
  IntSet a, b;
  IntSet original_a, original_b;
  long long shift = 0;     // translation subtracted from every element
  long long divisor = 1;   // gcd divided out after translation
  bool reflected = false;  // reflection gave the smaller encoding
};

// Requires A ∪ B nonempty. Idempotent; a pair and its reflection canonicalize
// identically. MSTD-ness survives (it is affine invariant).
CanonicalPair canonicalize(const IntSet& a, const IntSet& b);

inline constexpr uint64_t kDefaultSearchBudget = 200'000'000;

// Every MSTD pair with |A| = size_a, |B| = size_b, A, B ⊆ [0, n_max],
// deduplicated by canonical form and sorted by canonical encoding. The two
// roles are distinct classes: MSTD-ness is role-blind, but the sampling model
// is not, so (3,5) and (5,3) are searched separately. A cost estimate
// C(n_max+1, size_a) * C(n_max+1, size_b) above `budget` raises BudgetError
// before any work is done. n_max is capped at 31 (single-word kernels).
std::vector<CanonicalPair> search_size(SizeClass size, int n_max,
                                       uint64_t budget = kDefaultSearchBudget, int threads = 1);

// True iff some sum has three or more representations (a,b) ∈ A×B.
// Representations of one sum carry pairwise distinct a and pairwise distinct
// b, so this is exactly the three-term pattern a1 < a2 < a3, b3 > b2 > b1 with
// a1 + b3 = a2 + b2 = a3 + b1. Necessary for MSTD, not sufficient.
bool verify_triple_lemma(const IntSet& a, const IntSet& b);

// Ingredients of the size identities. With X_s the representations of sum s
// and Y_d the representations of signed difference d:
//   sum_size         = m_value + sum_excess
//   signed_diff_size = m_value + diff_excess
//   m_value          = pair_product - collapsed_sums
// and collapsed_sums = collapsed_diffs always: a two-element representation
// class {(a,b),(c,d)} of one sum maps to {(a,d),(c,b)} of one difference.
struct StructureReport {
  long long pair_product = 0;     // |A| * |B|
  long long collapsed_sums = 0;   // sum over s of C(|X_s|, 2)
  long long collapsed_diffs = 0;  // sum over d of C(|Y_d|, 2), d = 0 included
  long long m_value = 0;
  long long sum_excess = 0;   // sum over s of (|X_s|-1)(|X_s|-2)/2
  long long diff_excess = 0;  // sum over d of (|Y_d|-1)(|Y_d|-2)/2
  int sum_size = 0;           // |A+B|
  int signed_diff_size = 0;   // |A-B| over signed values
  int pm_diff_size = 0;       // |±(A-B)|
};

StructureReport structure_report(const IntSet& a, const IntSet& b);

}  // namespace mstd
