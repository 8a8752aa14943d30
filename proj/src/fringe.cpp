#include "mstd/fringe.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "mstd/kernels.hpp"
#include "mstd/parallel.hpp"
#include "mstd/rng.hpp"

namespace mstd {

namespace {

void require_universe(const IntSet& s, int k, const char* name) {
  if (s.universe_size() != k + 1) {
    throw std::invalid_argument(std::string("fringe tuple: ") + name +
                                " must live in the universe [0, k]");
  }
}

// |(X + Y) ∩ [0, k]| for X, Y ⊆ [0, k].
int clipped_sum_count(const IntSet& x, const IntSet& y, int k) {
  const IntSet s = sumset(x, y);
  int c = 0;
  s.for_each([&](int e) { c += e <= k; });
  return c;
}

IntSet clipped_union_sum(const IntSet& x, const IntSet& y, const IntSet& u, const IntSet& v,
                         int k) {
  const IntSet s1 = sumset(x, y);
  const IntSet s2 = sumset(u, v);
  IntSet out(k + 1);
  for (int e = 0; e <= k; ++e) {
    if (s1.contains(e) || s2.contains(e)) out.add(e);
  }
  return out;
}

}  // namespace

FringeTuple FringeTuple::make(IntSet L, IntSet Lp, IntSet R, IntSet Rp, int k) {
  if (k < 0) throw std::invalid_argument("fringe tuple: need k >= 0");
  require_universe(L, k, "L");
  require_universe(Lp, k, "Lp");
  require_universe(R, k, "R");
  require_universe(Rp, k, "Rp");
  return FringeTuple{std::move(L), std::move(Lp), std::move(R), std::move(Rp), k};
}

FringeSides fringe_sides(const FringeTuple& t) {
  FringeSides sides;
  sides.sum_side = clipped_sum_count(t.L, t.Lp, t.k) + clipped_sum_count(t.R, t.Rp, t.k);
  sides.diff_side = 2 * clipped_union_sum(t.L, t.Rp, t.Lp, t.R, t.k).count();
  return sides;
}

bool is_mstd_fringe(const FringeTuple& t) {
  const FringeSides s = fringe_sides(t);
  return s.sum_side > s.diff_side;
}

bool is_weak_mstd_fringe(const FringeTuple& t) {
  const FringeSides s = fringe_sides(t);
  return s.sum_side >= s.diff_side;
}

namespace {

IntSet clip_prefix(const IntSet& s, int k) {
  IntSet out(k + 1);
  s.for_each([&](int e) {
    if (e <= k) out.add(e);
  });
  return out;
}

}  // namespace

FringeTuple fringe_profile(const IntSet& a, const IntSet& b, int n, int k) {
  if (n < 0 || k < 0 || 2 * k >= n) throw std::invalid_argument("fringe_profile: need 0 <= k < n/2");
  if (a.max_element() > n || b.max_element() > n) {
    throw std::invalid_argument("fringe_profile: sets exceed [0, n]");
  }
  return FringeTuple{clip_prefix(a, k), clip_prefix(b, k), clip_prefix(reflect(a, n), k),
                     clip_prefix(reflect(b, n), k), k};
}

bool is_rich_pair(const IntSet& a, const IntSet& b, int n, int k) {
  if (n < 0 || k < 0 || 2 * k >= n) throw std::invalid_argument("is_rich_pair: need 0 <= k < n/2");
  const IntSet aa = a.universe_size() == n + 1 ? a : a.resized(n + 1);
  const IntSet bb = b.universe_size() == n + 1 ? b : b.resized(n + 1);
  const IntSet s = sumset(aa, bb);
  return bits::contains_range(s.words(), k + 1, 2 * n - k - 1);
}

std::optional<int> minimal_fringe_order(const IntSet& a, const IntSet& b, int n, int k_max) {
  if (k_max < 0 || 2 * k_max >= n) {
    throw std::invalid_argument("minimal_fringe_order: need 0 <= k_max < n/2");
  }
  const IntSet aa = a.universe_size() == n + 1 ? a : a.resized(n + 1);
  const IntSet bb = b.universe_size() == n + 1 ? b : b.resized(n + 1);
  const IntSet s = sumset(aa, bb);
  const IntSet ra = reflect(aa, n), rb = reflect(bb, n);
  for (int k = 0; k <= k_max; ++k) {
    if (!bits::contains_range(s.words(), k + 1, 2 * n - k - 1)) continue;
    const FringeTuple t{clip_prefix(aa, k), clip_prefix(bb, k), clip_prefix(ra, k),
                        clip_prefix(rb, k), k};
    if (is_mstd_fringe(t)) return k;
  }
  return std::nullopt;
}

bool fringe_partial_leq(const FringeTuple& smaller, const FringeTuple& bigger) {
  const int j = smaller.k, k = bigger.k;
  if (j >= k) return false;
  if (clip_prefix(bigger.L, j) != smaller.L || clip_prefix(bigger.Lp, j) != smaller.Lp ||
      clip_prefix(bigger.R, j) != smaller.R || clip_prefix(bigger.Rp, j) != smaller.Rp) {
    return false;
  }
  const IntSet ll = sumset(bigger.L, bigger.Lp);
  const IntSet rr = sumset(bigger.R, bigger.Rp);
  return bits::contains_range(ll.words(), j, k) && bits::contains_range(rr.words(), j, k);
}

double fringe_profile_probability(const FringeTuple& t, const RhoVector& rho) {
  const ElementLaw law = ElementLaw::from(rho);
  auto factor = [&](bool in_a, bool in_b) {
    return in_a ? (in_b ? law.q_both : law.q_a_only) : (in_b ? law.q_b_only : law.q_neither);
  };
  double prob = 1.0;
  for (int e = 0; e <= t.k; ++e) {
    prob *= factor(t.L.contains(e), t.Lp.contains(e));
    prob *= factor(t.R.contains(e), t.Rp.contains(e));
  }
  return prob;
}

int default_fringe_estimation_n(int k) { return std::max(20 * k + 100, 200); }

namespace {

// Per-worker state for richness-given-profile sampling: fringe elements are
// pinned by the tuple, middle elements are drawn from the element law.
struct RichnessRunner {
  int n = 0, k = 0;
  ElementLaw law;
  uint64_t seed = 0;
  IntSet a, b;
  std::vector<uint64_t> sum;

  RichnessRunner(const FringeTuple& t, const RhoVector& rho, int n_, uint64_t seed_)
      : n(n_), k(t.k), law(ElementLaw::from(rho)), seed(seed_), a(n_ + 1), b(n_ + 1),
        sum(std::size_t(bits::words_for(2 * n_ + 1))) {
    t.L.for_each([&](int e) { a.add(e); });
    t.Lp.for_each([&](int e) { b.add(e); });
    t.R.for_each([&](int e) { a.add(n - e); });
    t.Rp.for_each([&](int e) { b.add(n - e); });
  }

  bool operator()(uint64_t trial) {
    SplitMix64 stream = substream(seed, trial);
    auto aw = a.mutable_words();
    auto bw = b.mutable_words();
    // clear middle only; fringe bits stay pinned
    const double t_both = law.q_both;
    const double t_a = t_both + law.q_a_only;
    const double t_b = t_a + law.q_b_only;
    for (int e = k + 1; e <= n - k - 1; ++e) {
      const std::size_t w = std::size_t(e) / bits::kWordBits;
      const uint64_t bit = uint64_t(1) << (e % bits::kWordBits);
      aw[w] &= ~bit;
      bw[w] &= ~bit;
      const double u = stream.next_unit();
      if (u >= t_b) continue;
      if (u < t_both) {
        aw[w] |= bit;
        bw[w] |= bit;
      } else if (u < t_a) {
        aw[w] |= bit;
      } else {
        bw[w] |= bit;
      }
    }
    std::fill(sum.begin(), sum.end(), 0);
    const IntSet& small_op = a.count() <= b.count() ? a : b;
    const IntSet& big_op = a.count() <= b.count() ? b : a;
    small_op.for_each(
        [&](int e) { bits::or_shifted(std::span<uint64_t>(sum), big_op.words(), e); });
    return bits::contains_range(sum, k + 1, 2 * n - k - 1);
  }
};

struct CountAccum {
  uint64_t successes = 0;
  CountAccum& operator+=(const CountAccum& o) {
    successes += o.successes;
    return *this;
  }
};

}  // namespace

FringeEstimate estimate_fringe_limit(const FringeTuple& t, const RhoVector& rho, int n,
                                     uint64_t trials, uint64_t seed, int threads) {
  if (n == 0) n = default_fringe_estimation_n(t.k);
  if (n < 20 * t.k + 100) {
    throw std::invalid_argument("estimate_fringe_limit: n too small, need n >= 20k + 100");
  }
  FringeEstimate est;
  est.rho = rho;
  est.n_used = n;
  est.profile_prob = fringe_profile_probability(t, rho);

  struct PerTrial {
    RichnessRunner runner;
    void operator()(CountAccum& acc, uint64_t trial) { acc.successes += runner(trial); }
  };
  const CountAccum total =
      run_trials<CountAccum>(trials, threads, PerTrial{RichnessRunner(t, rho, n, seed)});
  EstimateWithCI rich;
  rich.trials = trials;
  rich.successes = total.successes;
  rich.point = trials ? double(total.successes) / double(trials) : 0.0;
  const ConfidenceInterval ci = wilson_interval(total.successes, trials);
  rich.ci_low = ci.low;
  rich.ci_high = ci.high;
  rich.seed = seed;
  rich.n = n;
  rich.rho = rho;
  est.richness_given_profile = rich;
  est.product = est.profile_prob * rich.point;
  return est;
}

const std::vector<CuratedFringe>& curated_fringe_tuples() {
  static const std::vector<CuratedFringe> tuples = [] {
    std::vector<CuratedFringe> out;
    {
      // strict tuple of order 11; clipped counts 11 + 10 > 2 * 10
      const IntSet L = parse_set("0,2,3,7,8,9,10", 12);
      const IntSet R = parse_set("1,2,3,6,8,9,10,11", 12);
      out.push_back({"strict-k11", false, FringeTuple::make(L, L, R, R, 11)});
    }
    {
      // weak tuple of order 8 (equality holds); pairs carrying it with
      // disjoint A, B are MSTD
      const IntSet L = parse_set("1,2,3,5,7,8", 9);
      const IntSet Lc = parse_set("0,4,6", 9);
      out.push_back({"weak-complement-k8", true, FringeTuple::make(L, Lc, L, Lc, 8)});
    }
    return out;
  }();
  return tuples;
}

LowerBoundReport lower_bound_p(const RhoVector& rho, int k_cap, uint64_t trials, uint64_t seed,
                               int threads, const std::vector<CuratedFringe>* tuples) {
  rho.validate();
  LowerBoundReport report;
  report.rho = rho;
  if (in_zero_region(rho)) {
    report.route = "zero";
    return report;
  }
  const bool weak_route = rho.rho1 == 0.0;
  report.route = weak_route ? "weak-disjoint" : "strict";
  const std::vector<CuratedFringe>& list = tuples ? *tuples : curated_fringe_tuples();

  // group sums by order; any one group is a valid bound, report the best
  std::map<int, std::vector<FringeEstimate>> groups;
  uint64_t tuple_index = 0;
  for (const CuratedFringe& cf : list) {
    ++tuple_index;
    if (cf.tuple.k > k_cap) continue;
    if (cf.weak != weak_route) continue;
    const bool kind_ok = cf.weak ? is_weak_mstd_fringe(cf.tuple) : is_mstd_fringe(cf.tuple);
    if (!kind_ok) throw std::invalid_argument("lower_bound_p: tuple '" + cf.name +
                                              "' fails its fringe predicate");
    groups[cf.tuple.k].push_back(
        estimate_fringe_limit(cf.tuple, rho, 0, trials, mix64(seed) + tuple_index, threads));
  }
  for (auto& [k, parts] : groups) {
    double sum = 0;
    for (const FringeEstimate& e : parts) sum += e.product;
    if (sum > report.bound) {
      report.bound = sum;
      report.parts = parts;
    }
  }
  return report;
}

std::string fringe_tuple_to_json(const FringeTuple& t) {
  const nlohmann::json doc{{"k", t.k},
                           {"L", format_set(t.L)},
                           {"Lp", format_set(t.Lp)},
                           {"R", format_set(t.R)},
                           {"Rp", format_set(t.Rp)}};
  return doc.dump(2) + "\n";
}

namespace {

FringeTuple tuple_from_json_obj(const nlohmann::json& doc) {
  const int k = doc.at("k").get<int>();
  if (k < 0) throw std::invalid_argument("fringe tuple: need k >= 0");
  return FringeTuple::make(parse_set(doc.at("L").get<std::string>(), k + 1),
                           parse_set(doc.at("Lp").get<std::string>(), k + 1),
                           parse_set(doc.at("R").get<std::string>(), k + 1),
                           parse_set(doc.at("Rp").get<std::string>(), k + 1), k);
}

}  // namespace

FringeTuple fringe_tuple_from_json(const std::string& text) {
  return tuple_from_json_obj(nlohmann::json::parse(text));
}

std::vector<CuratedFringe> curated_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<CuratedFringe> out;
  for (const auto& item : doc.at("tuples")) {
    CuratedFringe cf;
    cf.name = item.at("name").get<std::string>();
    cf.weak = item.at("kind").get<std::string>() == "weak";
    cf.tuple = tuple_from_json_obj(item);
    out.push_back(std::move(cf));
  }
  return out;
}

}  // namespace mstd
