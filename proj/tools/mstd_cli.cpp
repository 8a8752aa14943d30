// mstd: command-line front end over the library. Every successful run writes
// its primary output (stdout or --out) plus a JSON manifest recording the full
// parameter set and an FNV-1a digest of the output bytes, so any run can be
// reproduced and checked byte for byte.
//
// Exit codes: 0 success, 1 budget refusal or internal failure, 2 usage.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mstd/enumerate.hpp"
#include "mstd/fringe.hpp"
#include "mstd/kernels.hpp"
#include "mstd/minimal.hpp"
#include "mstd/phase.hpp"
#include "mstd/rho.hpp"
#include "mstd/rng.hpp"
#include "mstd/sampler.hpp"
#include "mstd/version.hpp"

using namespace mstd;
using ordered_json = nlohmann::ordered_json;

namespace {

// Outputs are gathered here during parsing; main() writes them, digests them,
// and drops the manifest next to the first file destination.
struct RunContext {
  std::string subcommand;
  ordered_json parameters = ordered_json::object();
  uint64_t seed = 0;
  std::string manifest_override;
  std::vector<std::pair<std::string, std::string>> outputs;  // destination ("-" = stdout), bytes

  void emit(const std::string& destination, std::string bytes) {
    outputs.emplace_back(destination, std::move(bytes));
  }
};

constexpr uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr uint64_t kFnvPrime = 1099511628211ULL;

uint64_t fnv1a64(const std::string& bytes, uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

std::string hex64(uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << v;
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed6(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

// Both sets rebased into one universe sized by the larger maximum; the pair
// kernels refuse mismatched universes.
std::pair<IntSet, IntSet> parse_pair_joint(const std::string& a_text, const std::string& b_text) {
  IntSet a = parse_set(a_text);
  IntSet b = parse_set(b_text);
  const int u = std::max(a.universe_size(), b.universe_size());
  return {a.resized(u), b.resized(u)};
}

ordered_json rho_json(const RhoVector& r) {
  return {{"p", r.p}, {"rho1", r.rho1}, {"rho2", r.rho2}};
}

ordered_json estimate_json(const EstimateWithCI& e) {
  return {{"point", e.point},   {"trials", e.trials}, {"successes", e.successes},
          {"ci_low", e.ci_low}, {"ci_high", e.ci_high}, {"seed", e.seed},
          {"n", e.n},           {"rho", rho_json(e.rho)}};
}

ordered_json moments_json(const SumDiffMoments& m) {
  return {{"n", m.n},
          {"rho", rho_json(m.rho)},
          {"trials", m.trials},
          {"seed", m.seed},
          {"mean_sum", m.mean_sum},
          {"sd_sum", m.sd_sum},
          {"mean_diff", m.mean_diff},
          {"sd_diff", m.sd_diff},
          {"mean_sum_complement", m.mean_sum_complement},
          {"sd_sum_complement", m.sd_sum_complement},
          {"mean_diff_complement", m.mean_diff_complement},
          {"sd_diff_complement", m.sd_diff_complement},
          {"mean_diff_over_sum", m.mean_diff_over_sum},
          {"ratio_trials", m.ratio_trials},
          {"mstd_count", m.mstd_count},
          {"mstd_frequency", m.mstd_frequency}};
}

ordered_json tuple_json(const FringeTuple& t) {
  return {{"k", t.k},
          {"L", format_set(t.L)},
          {"Lp", format_set(t.Lp)},
          {"R", format_set(t.R)},
          {"Rp", format_set(t.Rp)}};
}

ordered_json fringe_estimate_json(const FringeEstimate& e) {
  return {{"rho", rho_json(e.rho)},
          {"n_used", e.n_used},
          {"profile_prob", e.profile_prob},
          {"richness_given_profile", estimate_json(e.richness_given_profile)},
          {"product", e.product}};
}

ordered_json structure_json(const StructureReport& s) {
  return {{"pair_product", s.pair_product},
          {"collapsed_sums", s.collapsed_sums},
          {"collapsed_diffs", s.collapsed_diffs},
          {"m_value", s.m_value},
          {"sum_excess", s.sum_excess},
          {"diff_excess", s.diff_excess},
          {"sum_size", s.sum_size},
          {"signed_diff_size", s.signed_diff_size},
          {"pm_diff_size", s.pm_diff_size}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// The five-point spot-check grid used by verify-formulas: an interior point,
// two asymmetric points, and the two fully correlated corners.
const std::vector<RhoVector>& spot_check_grid() {
  static const std::vector<RhoVector> grid = {{0.5, 0.5, 0.5},
                                              {0.3, 0.8, 0.1},
                                              {0.7, 0.2, 0.9},
                                              {0.5, 1.0, 0.0},
                                              {0.5, 0.0, 1.0}};
  return grid;
}

struct CommonOpts {
  uint64_t seed = 1729;
  int threads = default_threads();
  std::string out = "-";
};

// --seed falls back to the MSTD_SEED environment variable, then to the
// built-in default. --threads never changes results, only wall clock.
void add_common(CLI::App* sub, CommonOpts& c, bool with_seed = true) {
  if (with_seed) {
    sub->add_option("--seed", c.seed, "RNG seed (env MSTD_SEED when the flag is absent)")
        ->envname("MSTD_SEED")
        ->capture_default_str();
  }
  sub->add_option("--threads", c.threads, "worker cap; results are independent of it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--out", c.out, "primary output path, - for stdout")->capture_default_str();
}

void add_manifest_opt(CLI::App* sub, RunContext& ctx) {
  sub->add_option("--manifest", ctx.manifest_override,
                  "manifest path (default: alongside --out, else ./mstd-manifest.json)");
}

CLI::Option* add_prob(CLI::App* sub, const std::string& name, double& target,
                      const std::string& help) {
  return sub->add_option(name, target, help)->check(CLI::Range(0.0, 1.0));
}

// ---------------------------------------------------------------- mc

struct McOpts {
  int n = 0;
  double p = 0, rho1 = 0, rho2 = 0;
  uint64_t trials = 100000;
  std::string format = "json";
  CommonOpts common;
};

void add_mc(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<McOpts>();
  CLI::App* sub = app.add_subcommand("mc", "Monte-Carlo estimate of the MSTD probability");
  sub->add_option("--n", o->n, "universe is [0, n]")->required()->check(CLI::Range(0, 1 << 20));
  add_prob(sub, "--p", o->p, "P(element in A)")->required();
  add_prob(sub, "--rho1", o->rho1, "P(in B | in A)")->required();
  add_prob(sub, "--rho2", o->rho2, "P(in B | not in A)")->required();
  sub->add_option("--trials", o->trials, "Monte-Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--format", o->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  add_common(sub, o->common);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    const RhoVector rho{o->p, o->rho1, o->rho2};
    const EstimateWithCI est =
        estimate_p_n(o->n, rho, o->trials, o->common.seed, o->common.threads);
    ctx.subcommand = "mc";
    ctx.seed = o->common.seed;
    ctx.parameters = {{"n", o->n},         {"p", o->p},
                      {"rho1", o->rho1},   {"rho2", o->rho2},
                      {"trials", o->trials}, {"seed", o->common.seed},
                      {"threads", o->common.threads}, {"format", o->format},
                      {"out", o->common.out}};
    if (o->format == "json") {
      ctx.emit(o->common.out, dump(estimate_json(est)));
    } else {
      std::string csv = "n,p,rho1,rho2,trials,successes,point,ci_low,ci_high,seed\n";
      csv += std::to_string(est.n) + "," + fixed6(rho.p) + "," + fixed6(rho.rho1) + "," +
             fixed6(rho.rho2) + "," + std::to_string(est.trials) + "," +
             std::to_string(est.successes) + "," + fixed6(est.point) + "," +
             fixed6(est.ci_low) + "," + fixed6(est.ci_high) + "," + std::to_string(est.seed) +
             "\n";
      ctx.emit(o->common.out, std::move(csv));
    }
  });
}

// ---------------------------------------------------------------- stats

struct StatsOpts {
  std::string a_text, b_text;
  int n = -1;
  double p = 0, rho1 = 0, rho2 = 0;
  uint64_t trials = 100000;
  std::string format = "json";
  CommonOpts common;
  CLI::Option* p_opt = nullptr;
};

void add_stats(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<StatsOpts>();
  CLI::App* sub = app.add_subcommand(
      "stats", "sum/difference statistics: exact for --A/--B, sampled moments otherwise");
  CLI::Option* a_opt = sub->add_option("--A", o->a_text, "first set, e.g. 0,2,3,4,7,11,12,14");
  CLI::Option* b_opt = sub->add_option("--B", o->b_text, "second set");
  a_opt->needs(b_opt);
  b_opt->needs(a_opt);
  sub->add_option("--n", o->n, "universe is [0, n] (sampled mode)")->check(CLI::Range(0, 1 << 20));
  o->p_opt = add_prob(sub, "--p", o->p, "P(element in A) (sampled mode)");
  add_prob(sub, "--rho1", o->rho1, "P(in B | in A)");
  add_prob(sub, "--rho2", o->rho2, "P(in B | not in A)");
  sub->add_option("--trials", o->trials, "trials (sampled mode)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--format", o->format, "json or csv (csv in sampled mode only)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  add_common(sub, o->common);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    ctx.subcommand = "stats";
    ctx.seed = o->common.seed;
    if (!o->a_text.empty() || !o->b_text.empty()) {
      if (o->format == "csv") {
        throw CLI::ValidationError("stats", "--format csv applies to the sampled mode only");
      }
      auto [a, b] = parse_pair_joint(o->a_text, o->b_text);
      const SumDiffStats st = pair_stats(a, b);
      ctx.parameters = {{"A", o->a_text}, {"B", o->b_text}, {"out", o->common.out}};
      ordered_json rep{{"A", format_set(a)},
                       {"B", format_set(b)},
                       {"n", a.universe_size() - 1},
                       {"sum_size", st.sum_size},
                       {"diff_size", st.diff_size},
                       {"sum_complement", st.sum_complement},
                       {"diff_complement", st.diff_complement},
                       {"is_mstd", is_mstd_pair(a, b)},
                       {"structure", structure_json(structure_report(a, b))}};
      ctx.emit(o->common.out, dump(rep));
      return;
    }
    if (o->n < 0 || !*o->p_opt) {
      throw CLI::ValidationError("stats", "sampled mode needs --n and --p/--rho1/--rho2");
    }
    const RhoVector rho{o->p, o->rho1, o->rho2};
    const SumDiffMoments m =
        estimate_sum_diff_stats(o->n, rho, o->trials, o->common.seed, o->common.threads);
    ctx.parameters = {{"n", o->n},         {"p", o->p},
                      {"rho1", o->rho1},   {"rho2", o->rho2},
                      {"trials", o->trials}, {"seed", o->common.seed},
                      {"threads", o->common.threads}, {"format", o->format},
                      {"out", o->common.out}};
    if (o->format == "json") {
      ctx.emit(o->common.out, dump(moments_json(m)));
      return;
    }
    std::string csv =
        "n,trials,mean_sum,sd_sum,mean_diff,sd_diff,mean_sum_complement,sd_sum_complement,"
        "mean_diff_complement,sd_diff_complement,mean_diff_over_sum,ratio_trials,mstd_count,"
        "mstd_frequency\n";
    csv += std::to_string(m.n) + "," + std::to_string(m.trials) + "," + fixed6(m.mean_sum) + "," +
           fixed6(m.sd_sum) + "," + fixed6(m.mean_diff) + "," + fixed6(m.sd_diff) + "," +
           fixed6(m.mean_sum_complement) + "," + fixed6(m.sd_sum_complement) + "," +
           fixed6(m.mean_diff_complement) + "," + fixed6(m.sd_diff_complement) + "," +
           fixed6(m.mean_diff_over_sum) + "," + std::to_string(m.ratio_trials) + "," +
           std::to_string(m.mstd_count) + "," + fixed6(m.mstd_frequency) + "\n";
    ctx.emit(o->common.out, std::move(csv));
  });
}

// ---------------------------------------------------------------- enumerate

struct EnumerateOpts {
  int n = 0;
  int cap = kDefaultEnumerationCap;
  std::string poly;
  CommonOpts common;
};

void add_enumerate(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<EnumerateOpts>();
  CLI::App* sub =
      app.add_subcommand("enumerate", "walk every pair over [0, n] and list the MSTD ones");
  sub->add_option("--n", o->n, "universe is [0, n]")->required()->check(CLI::Range(0, 31));
  sub->add_option("--cap", o->cap, "refuse above this n (cost grows as 4^(n+1))")
      ->capture_default_str();
  sub->add_option("--poly", o->poly, "also write the exact probability polynomial here (JSON)");
  add_common(sub, o->common, /*with_seed=*/false);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    const MstdCatalog cat = enumerate_mstd_pairs(o->n, o->cap, o->common.threads);
    ctx.subcommand = "enumerate";
    ctx.parameters = {{"n", o->n},
                      {"cap", o->cap},
                      {"threads", o->common.threads},
                      {"out", o->common.out},
                      {"poly", o->poly}};
    ctx.emit(o->common.out, catalog_to_text(cat));
    if (!o->poly.empty()) ctx.emit(o->poly, polynomial_to_json(build_polynomial(cat)));
  });
}

// ---------------------------------------------------------------- eval-poly / grid-max

struct EvalPolyOpts {
  std::string poly;
  double p = 0, rho1 = 0, rho2 = 0;
  CommonOpts common;
};

void add_eval_poly(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<EvalPolyOpts>();
  CLI::App* sub = app.add_subcommand("eval-poly", "evaluate a stored probability polynomial");
  sub->add_option("--poly", o->poly, "polynomial JSON from enumerate")
      ->required()
      ->check(CLI::ExistingFile);
  add_prob(sub, "--p", o->p, "P(element in A)")->required();
  add_prob(sub, "--rho1", o->rho1, "P(in B | in A)")->required();
  add_prob(sub, "--rho2", o->rho2, "P(in B | not in A)")->required();
  add_common(sub, o->common, /*with_seed=*/false);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    MstdPolynomial poly;
    try {
      poly = polynomial_from_json(read_file(o->poly));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument(o->poly + ": " + e.what());
    }
    const RhoVector rho{o->p, o->rho1, o->rho2};
    ctx.subcommand = "eval-poly";
    ctx.parameters = {{"poly", o->poly}, {"p", o->p},          {"rho1", o->rho1},
                      {"rho2", o->rho2}, {"out", o->common.out}};
    ordered_json rep{{"poly_file", o->poly},
                     {"n", poly.n},
                     {"rho", rho_json(rho)},
                     {"value", evaluate_polynomial(poly, rho)}};
    ctx.emit(o->common.out, dump(rep));
  });
}

struct GridMaxOpts {
  std::string poly;
  double step = 0.05;
  CommonOpts common;
};

void add_grid_max(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<GridMaxOpts>();
  CLI::App* sub =
      app.add_subcommand("grid-max", "exhaustive grid maximum of a stored polynomial");
  sub->add_option("--poly", o->poly, "polynomial JSON from enumerate")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--step", o->step, "grid step; must divide 1 evenly")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  add_common(sub, o->common, /*with_seed=*/false);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    MstdPolynomial poly;
    try {
      poly = polynomial_from_json(read_file(o->poly));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument(o->poly + ": " + e.what());
    }
    const GridMax gm = grid_search_max(poly, o->step);
    ctx.subcommand = "grid-max";
    ctx.parameters = {{"poly", o->poly}, {"step", o->step}, {"out", o->common.out}};
    ordered_json rep{{"poly_file", o->poly},
                     {"n", poly.n},
                     {"step", o->step},
                     {"argmax", rho_json(gm.argmax)},
                     {"value", gm.value}};
    ctx.emit(o->common.out, dump(rep));
  });
}

// ---------------------------------------------------------------- fringe

struct FringeCheckOpts {
  std::string L, Lp, R, Rp;
  int k = 0;
  bool weak = false;
  CommonOpts common;
};

struct FringeEstimateOpts {
  std::string tuple_file;
  double p = 0, rho1 = 0, rho2 = 0;
  int n = 0;
  uint64_t trials = 100000;
  CommonOpts common;
};

struct FringeLowerOpts {
  double p = 0, rho1 = 0, rho2 = 0;
  int k_cap = 12;
  uint64_t trials = 100000;
  std::string tuple_file;
  CommonOpts common;
};

void add_fringe(CLI::App& app, RunContext& ctx) {
  CLI::App* fringe = app.add_subcommand("fringe", "fringe-tuple predicates, limits and bounds");
  fringe->require_subcommand(1);

  auto co = std::make_shared<FringeCheckOpts>();
  CLI::App* check = fringe->add_subcommand("check", "evaluate the fringe inequality for a tuple");
  check->add_option("--L", co->L, "A fringe on the low side, subset of [0, k]")->required();
  check->add_option("--Lp", co->Lp, "B fringe on the low side")->required();
  check->add_option("--R", co->R, "reflected A fringe on the high side")->required();
  check->add_option("--Rp", co->Rp, "reflected B fringe on the high side")->required();
  check->add_option("--k", co->k, "fringe order")->required()->check(CLI::Range(0, 30));
  check->add_flag("--weak", co->weak, "report the >= form (pairs must also be disjoint)");
  add_common(check, co->common, /*with_seed=*/false);
  add_manifest_opt(check, ctx);
  check->callback([co, &ctx] {
    const auto fringe_set = [&](const std::string& flag, const std::string& text) {
      try {
        return parse_set(text, co->k + 1);
      } catch (const std::logic_error& e) {
        throw std::invalid_argument(flag + ": " + e.what() + " (sets live in [0, k])");
      }
    };
    const FringeTuple t =
        FringeTuple::make(fringe_set("--L", co->L), fringe_set("--Lp", co->Lp),
                          fringe_set("--R", co->R), fringe_set("--Rp", co->Rp), co->k);
    const FringeSides sides = fringe_sides(t);
    ctx.subcommand = "fringe check";
    ctx.parameters = {{"L", co->L}, {"Lp", co->Lp},     {"R", co->R},
                      {"Rp", co->Rp}, {"k", co->k},     {"weak", co->weak},
                      {"out", co->common.out}};
    ordered_json rep = tuple_json(t);
    rep["sum_side"] = sides.sum_side;
    rep["diff_side"] = sides.diff_side;
    rep["strict"] = is_mstd_fringe(t);
    rep["weak"] = is_weak_mstd_fringe(t);
    rep["certifies"] = co->weak ? is_weak_mstd_fringe(t) : is_mstd_fringe(t);
    ctx.emit(co->common.out, dump(rep));
  });

  auto eo = std::make_shared<FringeEstimateOpts>();
  CLI::App* estimate =
      fringe->add_subcommand("estimate", "limiting contribution of the tuples in a file");
  estimate->add_option("--tuple-file", eo->tuple_file,
                       "single tuple JSON, or a curated list under a \"tuples\" key")
      ->required()
      ->check(CLI::ExistingFile);
  add_prob(estimate, "--p", eo->p, "P(element in A)")->required();
  add_prob(estimate, "--rho1", eo->rho1, "P(in B | in A)")->required();
  add_prob(estimate, "--rho2", eo->rho2, "P(in B | not in A)")->required();
  estimate->add_option("--n", eo->n, "working universe size, 0 picks max(20k+100, 200)")
      ->check(CLI::Range(0, 1 << 20))
      ->capture_default_str();
  estimate->add_option("--trials", eo->trials, "richness trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(estimate, eo->common);
  add_manifest_opt(estimate, ctx);
  estimate->callback([eo, &ctx] {
    const RhoVector rho{eo->p, eo->rho1, eo->rho2};
    const std::string text = read_file(eo->tuple_file);
    std::vector<std::pair<std::string, FringeTuple>> tuples;
    try {
      const auto parsed = nlohmann::json::parse(text);
      if (parsed.contains("tuples")) {
        for (const CuratedFringe& c : curated_from_json(text)) {
          tuples.emplace_back(c.name, c.tuple);
        }
      } else {
        tuples.emplace_back("", fringe_tuple_from_json(text));
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument(eo->tuple_file + ": " + e.what());
    }
    ctx.subcommand = "fringe estimate";
    ctx.seed = eo->common.seed;
    ctx.parameters = {{"tuple_file", eo->tuple_file}, {"p", eo->p},
                      {"rho1", eo->rho1},             {"rho2", eo->rho2},
                      {"n", eo->n},                   {"trials", eo->trials},
                      {"seed", eo->common.seed},      {"threads", eo->common.threads},
                      {"out", eo->common.out}};
    ordered_json items = ordered_json::array();
    for (const auto& [name, t] : tuples) {
      const FringeEstimate est =
          estimate_fringe_limit(t, rho, eo->n, eo->trials, eo->common.seed, eo->common.threads);
      ordered_json item = fringe_estimate_json(est);
      item["tuple"] = tuple_json(t);
      if (!name.empty()) item["name"] = name;
      items.push_back(std::move(item));
    }
    ctx.emit(eo->common.out, dump(tuples.size() == 1 && tuples[0].first.empty()
                                      ? items[0]
                                      : ordered_json{{"estimates", items}}));
  });

  auto lo = std::make_shared<FringeLowerOpts>();
  CLI::App* lower =
      fringe->add_subcommand("lower-bound", "lower bound on the limiting MSTD probability");
  add_prob(lower, "--p", lo->p, "P(element in A)")->required();
  add_prob(lower, "--rho1", lo->rho1, "P(in B | in A)")->required();
  add_prob(lower, "--rho2", lo->rho2, "P(in B | not in A)")->required();
  lower->add_option("--k-cap", lo->k_cap, "ignore curated tuples above this order")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  lower->add_option("--trials", lo->trials, "richness trials per tuple")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lower->add_option("--tuple-file", lo->tuple_file,
                    "curated tuple list (default: the built-in list)")
      ->check(CLI::ExistingFile);
  add_common(lower, lo->common);
  add_manifest_opt(lower, ctx);
  lower->callback([lo, &ctx] {
    const RhoVector rho{lo->p, lo->rho1, lo->rho2};
    std::vector<CuratedFringe> curated;
    const std::vector<CuratedFringe>* tuples = nullptr;
    if (!lo->tuple_file.empty()) {
      try {
        curated = curated_from_json(read_file(lo->tuple_file));
      } catch (const std::invalid_argument&) {
        throw;
      } catch (const std::exception& e) {
        throw std::invalid_argument(lo->tuple_file + ": " + e.what());
      }
      tuples = &curated;
    }
    const LowerBoundReport rep =
        lower_bound_p(rho, lo->k_cap, lo->trials, lo->common.seed, lo->common.threads, tuples);
    ctx.subcommand = "fringe lower-bound";
    ctx.seed = lo->common.seed;
    ctx.parameters = {{"p", lo->p},
                      {"rho1", lo->rho1},
                      {"rho2", lo->rho2},
                      {"k_cap", lo->k_cap},
                      {"trials", lo->trials},
                      {"seed", lo->common.seed},
                      {"threads", lo->common.threads},
                      {"tuple_file", lo->tuple_file},
                      {"out", lo->common.out}};
    ordered_json parts = ordered_json::array();
    for (const FringeEstimate& part : rep.parts) parts.push_back(fringe_estimate_json(part));
    ordered_json out{{"rho", rho_json(rep.rho)},
                     {"route", rep.route},
                     {"k_cap", lo->k_cap},
                     {"bound", rep.bound},
                     {"parts", parts}};
    ctx.emit(lo->common.out, dump(out));
  });
}

// ---------------------------------------------------------------- phase

struct PhaseOpts {
  std::string regime;
  double rho1 = 0, rho2 = 0;
  std::string n_text;
  uint64_t trials = 200;
  std::string format = "csv";
  CommonOpts common;
};

std::vector<int64_t> parse_n_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.empty() || !(v >= 2) || v > 1e15 || v != std::floor(v)) {
      throw CLI::ValidationError("--N", "'" + tok + "' is not a whole number >= 2");
    }
    out.push_back(int64_t(v));
  }
  if (out.empty()) throw CLI::ValidationError("--N", "needs at least one value");
  return out;
}

DecaySpec parse_decay(const std::string& regime, double rho1, double rho2) {
  const std::size_t colon = regime.find(':');
  if (colon == std::string::npos || colon + 1 == regime.size()) {
    throw CLI::ValidationError("--regime", "expected kind:value, e.g. chat:1.0 or power:1.5");
  }
  DecaySpec spec;
  spec.regime = parse_regime(regime.substr(0, colon));
  std::size_t pos = 0;
  const std::string value = regime.substr(colon + 1);
  try {
    spec.param = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size()) {
    throw CLI::ValidationError("--regime", "'" + value + "' is not a number");
  }
  spec.rho1 = rho1;
  spec.rho2 = rho2;
  return spec;
}

void add_phase(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<PhaseOpts>();
  CLI::App* sub =
      app.add_subcommand("phase", "sum/difference statistics along a decaying-density scan");
  sub->add_option("--regime", o->regime,
                  "fixed:<p>, power:<alpha> (p_hat = N^-alpha), or chat:<c> (p_hat = c/N)")
      ->required();
  add_prob(sub, "--rho1", o->rho1, "P(in B | in A), held fixed")->required();
  add_prob(sub, "--rho2", o->rho2, "P(in B | not in A), held fixed")->required();
  sub->add_option("--N", o->n_text, "comma list of universe sizes, e.g. 1e3,1e4,1e5")->required();
  sub->add_option("--trials", o->trials, "trials per N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--format", o->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_common(sub, o->common);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    const DecaySpec spec = parse_decay(o->regime, o->rho1, o->rho2);
    const std::vector<int64_t> n_list = parse_n_list(o->n_text);
    const std::vector<PhaseRow> rows =
        phase_scan(spec, n_list, o->trials, o->common.seed, o->common.threads);
    ctx.subcommand = "phase";
    ctx.seed = o->common.seed;
    ctx.parameters = {{"regime", o->regime}, {"rho1", o->rho1},
                      {"rho2", o->rho2},     {"N", o->n_text},
                      {"trials", o->trials}, {"seed", o->common.seed},
                      {"threads", o->common.threads}, {"format", o->format},
                      {"out", o->common.out}};
    if (o->format == "csv") {
      ctx.emit(o->common.out, phase_rows_to_csv(rows));
      return;
    }
    ordered_json arr = ordered_json::array();
    for (const PhaseRow& row : rows) {
      ordered_json item{{"N", row.N}, {"p", row.p}, {"p_hat", row.p_hat}};
      item["moments"] = moments_json(row.moments);
      arr.push_back(std::move(item));
    }
    ctx.emit(o->common.out, dump(ordered_json{{"rows", arr}}));
  });
}

// ---------------------------------------------------------------- minimal

struct MinimalOpts {
  std::string size;
  int n_max = 0;
  uint64_t budget = kDefaultSearchBudget;
  std::string format = "json";
  CommonOpts common;
};

SizeClass parse_size(const std::string& text) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) {
    throw CLI::ValidationError("--size", "expected AxB, e.g. 3x4");
  }
  SizeClass size;
  try {
    std::size_t pa = 0, pb = 0;
    const std::string left = text.substr(0, x), right = text.substr(x + 1);
    size.size_a = std::stoi(left, &pa);
    size.size_b = std::stoi(right, &pb);
    if (pa != left.size() || pb != right.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--size", "'" + text + "' is not of the form AxB");
  }
  return size;
}

void add_minimal(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<MinimalOpts>();
  CLI::App* sub = app.add_subcommand(
      "minimal", "exhaustive MSTD search in one size class, canonical forms only");
  sub->add_option("--size", o->size, "set sizes as AxB, e.g. 3x5")->required();
  sub->add_option("--nmax", o->n_max, "search A, B inside [0, nmax]")
      ->required()
      ->check(CLI::Range(0, 31));
  sub->add_option("--budget", o->budget, "refuse when C(n+1,a)*C(n+1,b) exceeds this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--format", o->format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  add_common(sub, o->common, /*with_seed=*/false);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    const SizeClass size = parse_size(o->size);
    const std::vector<CanonicalPair> found =
        search_size(size, o->n_max, o->budget, o->common.threads);
    ctx.subcommand = "minimal";
    ctx.parameters = {{"size", o->size},     {"nmax", o->n_max},
                      {"budget", o->budget}, {"threads", o->common.threads},
                      {"format", o->format}, {"out", o->common.out}};
    if (o->format == "text") {
      std::string text = "# size " + o->size + " nmax " + std::to_string(o->n_max) + " count " +
                         std::to_string(found.size()) + "\n";
      for (const CanonicalPair& c : found) {
        text += format_set(c.a) + " | " + format_set(c.b) + "\n";
      }
      ctx.emit(o->common.out, std::move(text));
      return;
    }
    ordered_json pairs = ordered_json::array();
    for (const CanonicalPair& c : found) {
      pairs.push_back(ordered_json{{"a", format_set(c.a)},
                                   {"b", format_set(c.b)},
                                   {"original_a", format_set(c.original_a)},
                                   {"original_b", format_set(c.original_b)},
                                   {"shift", c.shift},
                                   {"divisor", c.divisor},
                                   {"reflected", c.reflected},
                                   {"triple_lemma", verify_triple_lemma(c.a, c.b)}});
    }
    ordered_json rep{{"size_a", size.size_a}, {"size_b", size.size_b},
                     {"n_max", o->n_max},     {"budget", o->budget},
                     {"count", found.size()}, {"pairs", pairs}};
    ctx.emit(o->common.out, dump(rep));
  });
}

// ---------------------------------------------------------------- verify-formulas

struct VerifyFormulasOpts {
  int n = 50;
  uint64_t trials = 100000;
  CommonOpts common;
};

void add_verify_formulas(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<VerifyFormulasOpts>();
  CLI::App* sub = app.add_subcommand(
      "verify-formulas", "closed forms against simulation on the five-point spot-check grid");
  sub->add_option("--n", o->n, "universe is [0, n]")
      ->check(CLI::Range(3, 4096))
      ->capture_default_str();
  sub->add_option("--trials", o->trials, "trials per grid point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(sub, o->common);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    const int n = o->n;
    const uint64_t trials = o->trials;
    ordered_json checks = ordered_json::array();

    double identity_worst = 0;
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        for (int k = 0; k <= 20; ++k) {
          const RhoVector rho{i / 20.0, j / 20.0, k / 20.0};
          identity_worst = std::max(identity_worst, std::abs(1 - rho3(rho) - p_hat(rho)));
        }
      }
    }
    checks.push_back(ordered_json{{"formula", "identity_one_minus_rho3_is_p_hat"},
                                  {"grid", "21x21x21"},
                                  {"max_residual", identity_worst}});

    // z is null when the analytic value is degenerate and the frequency moved
    const auto z_score = [&](double analytic, double empirical) -> ordered_json {
      const double se = std::sqrt(analytic * (1 - analytic) / double(trials));
      const double err = empirical - analytic;
      if (se == 0) return err == 0 ? ordered_json(0.0) : ordered_json(nullptr);
      return ordered_json(err / se);
    };

    for (std::size_t gi = 0; gi < spot_check_grid().size(); ++gi) {
      const RhoVector& rho = spot_check_grid()[gi];
      const ElementLaw law = ElementLaw::from(rho);
      std::vector<uint64_t> missing_sum(std::size_t(2 * n + 1), 0);
      std::vector<uint64_t> missing_diff(std::size_t(n + 1), 0);
      uint64_t zero_missing = 0, joint_hits = 0;
      IntSet a(n + 1), b(n + 1);
      SplitMix64 base = substream(o->common.seed, 7000 + gi);
      for (uint64_t t = 0; t < trials; ++t) {
        SplitMix64 stream = substream(base.next(), t);
        sample_pair_into(a, b, law, stream);
        const IntSet s = sumset(a, b);
        const SignedIntSet d = signed_difference_set(a, b);
        for (int k = 0; k <= 2 * n; ++k) {
          if (!s.contains(k)) ++missing_sum[std::size_t(k)];
        }
        for (int k = 1; k <= n; ++k) {
          if (!d.contains(k)) ++missing_diff[std::size_t(k)];
        }
        zero_missing += !d.contains(0);
        const bool e1 = (a.contains(0) && b.contains(1)) || (b.contains(0) && a.contains(1));
        const bool e2 = (a.contains(2) && b.contains(1)) || (b.contains(2) && a.contains(1));
        joint_hits += e1 && e2;
      }
      for (int k = 0; k <= 2 * n; ++k) {
        const double analytic = prob_sum_missing(k, n, rho);
        const double empirical = double(missing_sum[std::size_t(k)]) / double(trials);
        checks.push_back(ordered_json{{"formula", "prob_sum_missing"},
                                      {"rho", rho_json(rho)},
                                      {"k", k},
                                      {"analytic", analytic},
                                      {"empirical", empirical},
                                      {"z", z_score(analytic, empirical)}});
      }
      // the difference formula is an upper bound; z is one-sided and negative
      // z means comfortable domination
      for (int k = 1; k <= n; ++k) {
        const double bound = prob_diff_missing_bound(k, n, rho);
        const double empirical = double(missing_diff[std::size_t(k)]) / double(trials);
        const double se = std::sqrt(std::max(empirical * (1 - empirical), 1e-12) / double(trials));
        checks.push_back(ordered_json{{"formula", "prob_diff_missing_bound"},
                                      {"rho", rho_json(rho)},
                                      {"k", k},
                                      {"analytic", bound},
                                      {"empirical", empirical},
                                      {"z", (empirical - bound) / se},
                                      {"one_sided", true}});
      }
      {
        const double analytic = prob_diff_zero_missing(n, rho);
        const double empirical = double(zero_missing) / double(trials);
        checks.push_back(ordered_json{{"formula", "prob_diff_zero_missing"},
                                      {"rho", rho_json(rho)},
                                      {"analytic", analytic},
                                      {"empirical", empirical},
                                      {"z", z_score(analytic, empirical)}});
      }
      {
        const double analytic = prob_joint_event_e(rho);
        const double empirical = double(joint_hits) / double(trials);
        checks.push_back(ordered_json{{"formula", "prob_joint_event_e"},
                                      {"rho", rho_json(rho)},
                                      {"analytic", analytic},
                                      {"empirical", empirical},
                                      {"z", z_score(analytic, empirical)}});
      }
    }

    ctx.subcommand = "verify-formulas";
    ctx.seed = o->common.seed;
    ctx.parameters = {{"n", o->n},
                      {"trials", o->trials},
                      {"seed", o->common.seed},
                      {"threads", o->common.threads},
                      {"out", o->common.out}};
    ordered_json grid = ordered_json::array();
    for (const RhoVector& rho : spot_check_grid()) grid.push_back(rho_json(rho));
    ordered_json rep{{"n", o->n},
                     {"trials", o->trials},
                     {"seed", o->common.seed},
                     {"rho_grid", grid},
                     {"checks", checks}};
    ctx.emit(o->common.out, dump(rep));
  });
}

// ---------------------------------------------------------------- verify-triple

struct VerifyTripleOpts {
  std::string a_text, b_text;
  CommonOpts common;
};

void add_verify_triple(CLI::App& app, RunContext& ctx) {
  auto o = std::make_shared<VerifyTripleOpts>();
  CLI::App* sub = app.add_subcommand(
      "verify-triple", "three-representation necessary condition and size identities for a pair");
  sub->add_option("--A", o->a_text, "first set")->required();
  sub->add_option("--B", o->b_text, "second set")->required();
  add_common(sub, o->common, /*with_seed=*/false);
  add_manifest_opt(sub, ctx);
  sub->callback([o, &ctx] {
    auto [a, b] = parse_pair_joint(o->a_text, o->b_text);
    const CanonicalPair canon = canonicalize(a, b);
    ctx.subcommand = "verify-triple";
    ctx.parameters = {{"A", o->a_text}, {"B", o->b_text}, {"out", o->common.out}};
    ordered_json rep{{"A", format_set(a)},
                     {"B", format_set(b)},
                     {"is_mstd", is_mstd_pair(a, b)},
                     {"has_triple", verify_triple_lemma(a, b)},
                     {"canonical_a", format_set(canon.a)},
                     {"canonical_b", format_set(canon.b)},
                     {"structure", structure_json(structure_report(a, b))}};
    ctx.emit(o->common.out, dump(rep));
  });
}

void write_output_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  RunContext ctx;
  CLI::App app{"exact, sampled, and exhaustive computations on sum-dominant pairs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "read option defaults from an INI file");
  app.require_subcommand(1);

  add_mc(app, ctx);
  add_stats(app, ctx);
  add_enumerate(app, ctx);
  add_eval_poly(app, ctx);
  add_grid_max(app, ctx);
  add_fringe(app, ctx);
  add_phase(app, ctx);
  add_minimal(app, ctx);
  add_verify_formulas(app, ctx);
  add_verify_triple(app, ctx);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    // invalid_argument and out_of_range from the library are precondition
    // violations, which on the command line means the flags were wrong
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  try {
    uint64_t digest = kFnvOffset;
    std::vector<std::string> destinations;
    for (const auto& [dest, bytes] : ctx.outputs) {
      digest = fnv1a64(bytes, digest);
      destinations.push_back(dest);
      if (dest == "-") {
        std::cout << bytes;
      } else {
        write_output_file(dest, bytes);
      }
    }
    std::string manifest_path = ctx.manifest_override;
    if (manifest_path.empty()) {
      for (const std::string& dest : destinations) {
        if (dest != "-") {
          manifest_path = dest + ".manifest.json";
          break;
        }
      }
    }
    if (manifest_path.empty()) manifest_path = "mstd-manifest.json";
    ordered_json manifest{{"subcommand", ctx.subcommand},
                          {"parameters", ctx.parameters},
                          {"seed", ctx.seed},
                          {"version", kVersion},
                          {"timestamp_utc", utc_timestamp()},
                          {"wall_clock_seconds", elapsed},
                          {"outputs", destinations},
                          {"output_digest_fnv1a64", hex64(digest)}};
    write_output_file(manifest_path, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
