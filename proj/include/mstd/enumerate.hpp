#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mstd/int_set.hpp"
#include "mstd/rho.hpp"

namespace mstd {

// Thrown when a request exceeds a configured work budget; carries a cost estimate.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultEnumerationCap = 10;

// All MSTD pairs (A, B) with A, B ⊆ [0, n], duplicate-free, sorted by the
// (A-bits, B-bits) encoding. Sets are stored as masks; n <= 31.
class MstdCatalog {
 public:
  MstdCatalog() = default;
  MstdCatalog(int n, std::vector<std::pair<uint32_t, uint32_t>> pairs)
      : n_(n), pairs_(std::move(pairs)) {}

  int n() const { return n_; }
  std::size_t size() const { return pairs_.size(); }
  std::pair<IntSet, IntSet> pair_at(std::size_t i) const;
  const std::vector<std::pair<uint32_t, uint32_t>>& raw() const { return pairs_; }

 private:
  int n_ = 0;
  std::vector<std::pair<uint32_t, uint32_t>> pairs_;
};

// Walks all 4^(n+1) membership assignments. Throws BudgetError with a cost
// estimate when n exceeds the cap.
MstdCatalog enumerate_mstd_pairs(int n, int cap = kDefaultEnumerationCap, int threads = 1);

// Exact MSTD probability as a function of (p, rho1, rho2): pairs grouped by the
// sufficient signature (|A|, |A∩B|, |B\A|).
struct MstdPolynomial {
  int n = 0;
  std::map<std::array<int, 3>, long long> terms;

  long long total() const;
};

MstdPolynomial build_polynomial(const MstdCatalog& catalog);
double evaluate_polynomial(const MstdPolynomial& poly, const RhoVector& rho);

// Grid maximum over [0,1]^3 with the given step (must divide 1 evenly).
// Ties resolve to the lexicographically smallest (p, rho1, rho2).
struct GridMax {
  RhoVector argmax;
  double value = 0;
};
GridMax grid_search_max(const MstdPolynomial& poly, double step);

// Catalog text format: '#'-prefixed header lines, then one "A | B" pair per line
// in set-literal notation.
std::string catalog_to_text(const MstdCatalog& catalog);
MstdCatalog catalog_from_text(const std::string& text);

std::string polynomial_to_json(const MstdPolynomial& poly);
MstdPolynomial polynomial_from_json(const std::string& text);

}  // namespace mstd
