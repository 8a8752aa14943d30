#include "mstd/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mstd/kernels.hpp"
#include "mstd/parallel.hpp"

namespace mstd {

std::pair<IntSet, IntSet> MstdCatalog::pair_at(std::size_t i) const {
  const auto [am, bm] = pairs_.at(i);
  IntSet a(n_ + 1), b(n_ + 1);
  for (int e = 0; e <= n_; ++e) {
    if (am >> e & 1) a.add(e);
    if (bm >> e & 1) b.add(e);
  }
  return {std::move(a), std::move(b)};
}

namespace {

// Membership assignment -> (A, B) masks: digit j of the base-4 counter holds
// bit 0 = j ∈ A, bit 1 = j ∈ B.
void decode_assignment(uint64_t code, int n, uint32_t& a, uint32_t& b) {
  a = 0;
  b = 0;
  for (int j = 0; j <= n; ++j) {
    const auto digit = unsigned(code >> (2 * j)) & 3u;
    a |= (digit & 1u) << j;
    b |= (digit >> 1) << j;
  }
}

std::vector<std::pair<uint32_t, uint32_t>> scan_range(int n, uint64_t lo, uint64_t hi) {
  std::vector<std::pair<uint32_t, uint32_t>> hits;
  uint32_t a = 0, b = 0;
  for (uint64_t code = lo; code < hi; ++code) {
    decode_assignment(code, n, a, b);
    if (small::is_mstd_mask(a, b, n)) hits.emplace_back(a, b);
  }
  return hits;
}

}  // namespace

MstdCatalog enumerate_mstd_pairs(int n, int cap, int threads) {
  if (n < 0 || n > 31) throw std::invalid_argument("enumerate_mstd_pairs: need 0 <= n <= 31");
  if (cap < 0) throw std::invalid_argument("enumerate_mstd_pairs: bad cap");
  if (n > cap) {
    std::ostringstream msg;
    msg << "enumeration at n=" << n << " walks 4^" << (n + 1) << " ≈ " << std::scientific
        << std::pow(4.0, n + 1) << " assignments; cap is n <= " << cap;
    throw BudgetError(msg.str());
  }
  const uint64_t total = uint64_t(1) << (2 * (n + 1));
  const int nt = std::min<int>(resolve_threads(threads), 64);
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  if (nt <= 1 || total < 1u << 16) {
    pairs = scan_range(n, 0, total);
  } else {
    // static contiguous ranges; merge preserves nothing, the final sort decides order
    const std::size_t nparts = std::size_t(nt);
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> parts(nparts);
    std::vector<std::thread> pool;
    const uint64_t step = total / uint64_t(nt) + 1;
    for (int i = 0; i < nt; ++i) {
      const uint64_t lo = std::min(total, uint64_t(i) * step);
      const uint64_t hi = std::min(total, lo + step);
      pool.emplace_back([&parts, i, n, lo, hi] { parts[std::size_t(i)] = scan_range(n, lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (auto& part : parts) pairs.insert(pairs.end(), part.begin(), part.end());
  }
  std::sort(pairs.begin(), pairs.end());
  return MstdCatalog(n, std::move(pairs));
}

long long MstdPolynomial::total() const {
  long long t = 0;
  for (const auto& [sig, count] : terms) t += count;
  return t;
}

MstdPolynomial build_polynomial(const MstdCatalog& catalog) {
  MstdPolynomial poly;
  poly.n = catalog.n();
  for (const auto& [am, bm] : catalog.raw()) {
    const int a = std::popcount(am);
    const int i = std::popcount(am & bm);
    const int j = std::popcount(bm & ~am);
    ++poly.terms[{a, i, j}];
  }
  return poly;
}

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (; e > 0; --e) r *= x;
  return r;
}

}  // namespace

double evaluate_polynomial(const MstdPolynomial& poly, const RhoVector& rho) {
  rho.validate();
  const int slots = poly.n + 1;
  double value = 0.0;
  for (const auto& [sig, count] : poly.terms) {
    const auto [a, i, j] = sig;
    value += double(count) * ipow(rho.p, a) * ipow(1 - rho.p, slots - a) * ipow(rho.rho1, i) *
             ipow(1 - rho.rho1, a - i) * ipow(rho.rho2, j) * ipow(1 - rho.rho2, slots - a - j);
  }
  return value;
}

GridMax grid_search_max(const MstdPolynomial& poly, double step) {
  if (!(step > 0 && step <= 1)) throw std::invalid_argument("grid_search_max: bad step");
  const int m = int(std::lround(1.0 / step));
  if (std::abs(m * step - 1.0) > 1e-9) {
    throw std::invalid_argument("grid_search_max: step must divide [0,1] evenly");
  }
  GridMax best;
  best.value = -1.0;
  for (int ip = 0; ip <= m; ++ip) {
    for (int i1 = 0; i1 <= m; ++i1) {
      for (int i2 = 0; i2 <= m; ++i2) {
        const RhoVector rho{double(ip) / m, double(i1) / m, double(i2) / m};
        const double v = evaluate_polynomial(poly, rho);
        if (v > best.value) {
          best.value = v;
          best.argmax = rho;
        }
      }
    }
  }
  return best;
}

std::string catalog_to_text(const MstdCatalog& catalog) {
  std::ostringstream out;
  out << "# mstd pair catalog\n";
  out << "# n " << catalog.n() << "\n";
  out << "# pairs " << catalog.size() << "\n";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto [a, b] = catalog.pair_at(i);
    out << format_set(a) << " | " << format_set(b) << "\n";
  }
  return out.str();
}

MstdCatalog catalog_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string key;
      if (h >> key && key == "n") h >> n;
      continue;
    }
    const std::size_t bar = line.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("catalog: missing '|' in line");
    const IntSet a = parse_set(line.substr(0, bar));
    const IntSet b = parse_set(line.substr(bar + 1));
    if (n < 0) throw std::invalid_argument("catalog: missing '# n' header");
    if (a.max_element() > n || b.max_element() > n) {
      throw std::invalid_argument("catalog: pair exceeds declared n");
    }
    uint32_t am = 0, bm = 0;
    a.for_each([&](int e) { am |= uint32_t(1) << e; });
    b.for_each([&](int e) { bm |= uint32_t(1) << e; });
    pairs.emplace_back(am, bm);
  }
  if (n < 0) throw std::invalid_argument("catalog: missing '# n' header");
  return MstdCatalog(n, std::move(pairs));
}

std::string polynomial_to_json(const MstdPolynomial& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [sig, count] : poly.terms) {
    terms.push_back({{"a", sig[0]}, {"i", sig[1]}, {"j", sig[2]}, {"count", count}});
  }
  const nlohmann::json doc{{"n", poly.n}, {"total_pairs", poly.total()}, {"terms", terms}};
  return doc.dump(2) + "\n";
}

MstdPolynomial polynomial_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  MstdPolynomial poly;
  poly.n = doc.at("n").get<int>();
  for (const auto& term : doc.at("terms")) {
    const std::array<int, 3> sig{term.at("a").get<int>(), term.at("i").get<int>(),
                                 term.at("j").get<int>()};
    poly.terms[sig] += term.at("count").get<long long>();
  }
  return poly;
}

}  // namespace mstd
