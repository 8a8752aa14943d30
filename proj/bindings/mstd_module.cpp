// mstdpairs: python bindings over the C++ core.
//
// Set-valued entry points accept IntSet, a "0,2,3" literal, or a list of
// ints; pair kernels align the two operands to a shared universe first, so
// callers never deal with bit-vector sizing. count_xi1 returns an exact
// python int (the C++ side computes in 128 bits).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mstd/enumerate.hpp"
#include "mstd/fringe.hpp"
#include "mstd/int_set.hpp"
#include "mstd/kernels.hpp"
#include "mstd/minimal.hpp"
#include "mstd/phase.hpp"
#include "mstd/rho.hpp"
#include "mstd/sampler.hpp"
#include "mstd/version.hpp"

namespace py = pybind11;
using namespace mstd;

namespace {

std::pair<IntSet, IntSet> aligned(const IntSet& a, const IntSet& b) {
  const int u = std::max(a.universe_size(), b.universe_size());
  return {a.resized(u), b.resized(u)};
}

std::string set_repr(const IntSet& s) { return "IntSet('" + format_set(s) + "')"; }

py::int_ exact_int(unsigned __int128 v) {
  return py::cast<py::int_>(py::module_::import("builtins").attr("int")(u128_to_string(v)));
}

std::string rho_repr(const RhoVector& r) {
  return "RhoVector(p=" + std::to_string(r.p) + ", rho1=" + std::to_string(r.rho1) +
         ", rho2=" + std::to_string(r.rho2) + ")";
}

}  // namespace

PYBIND11_MODULE(mstdpairs, m) {
  m.doc() = "exact, sampled, and exhaustive computations on sum-dominant pairs";
  m.attr("__version__") = kVersion;

  py::register_exception<BudgetError>(m, "BudgetError");

  py::class_<IntSet>(m, "IntSet")
      .def(py::init([](const std::string& literal) { return parse_set(literal); }),
           py::arg("literal"))
      .def(py::init([](const std::vector<int>& elems, int universe) {
             return IntSet::from_elements(elems, universe);
           }),
           py::arg("elements"), py::arg("universe") = 0)
      .def_property_readonly("universe_size", &IntSet::universe_size)
      .def("elements", &IntSet::elements)
      .def("resized", &IntSet::resized, py::arg("universe"))
      .def("__len__", &IntSet::count)
      .def("__contains__", &IntSet::contains)
      .def("__eq__", [](const IntSet& a, const IntSet& b) { return a == b; })
      .def("__str__", [](const IntSet& s) { return format_set(s); })
      .def("__repr__", &set_repr);
  py::implicitly_convertible<py::str, IntSet>();
  py::implicitly_convertible<py::list, IntSet>();

  py::class_<SignedIntSet>(m, "SignedIntSet")
      .def_property_readonly("bound", &SignedIntSet::bound)
      .def("elements", &SignedIntSet::elements)
      .def("__len__", &SignedIntSet::count)
      .def("__contains__", &SignedIntSet::contains)
      .def("__repr__", [](const SignedIntSet& s) {
        std::string out = "SignedIntSet([";
        bool first = true;
        for (int e : s.elements()) {
          if (!first) out += ", ";
          out += std::to_string(e);
          first = false;
        }
        return out + "])";
      });

  py::class_<SumDiffStats>(m, "SumDiffStats")
      .def_readonly("sum_size", &SumDiffStats::sum_size)
      .def_readonly("diff_size", &SumDiffStats::diff_size)
      .def_readonly("sum_complement", &SumDiffStats::sum_complement)
      .def_readonly("diff_complement", &SumDiffStats::diff_complement)
      .def("__repr__", [](const SumDiffStats& s) {
        return "SumDiffStats(sum_size=" + std::to_string(s.sum_size) +
               ", diff_size=" + std::to_string(s.diff_size) + ")";
      });

  m.def(
      "sumset",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return sumset(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "signed_difference_set",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return signed_difference_set(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "difference_set",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return difference_set(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "is_mstd_pair",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return is_mstd_pair(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "pair_stats",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return pair_stats(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def("reflect", &reflect, py::arg("s"), py::arg("n"));
  m.def("affine_image", &affine_image, py::arg("s"), py::arg("alpha"), py::arg("beta"));
  m.def("parse_set", &parse_set, py::arg("text"), py::arg("universe") = 0);
  m.def("format_set", &format_set, py::arg("s"));

  py::class_<RhoVector>(m, "RhoVector")
      .def(py::init([](double p, double rho1, double rho2) {
             RhoVector r{p, rho1, rho2};
             r.validate();
             return r;
           }),
           py::arg("p"), py::arg("rho1"), py::arg("rho2"))
      .def_readonly("p", &RhoVector::p)
      .def_readonly("rho1", &RhoVector::rho1)
      .def_readonly("rho2", &RhoVector::rho2)
      .def("__repr__", &rho_repr);

  m.def("rho3", &rho3, py::arg("rho"));
  m.def("rho4", &rho4, py::arg("rho"));
  m.def("p_hat", &p_hat, py::arg("rho"));
  m.def("in_zero_region", &in_zero_region, py::arg("rho"));
  m.def("prob_sum_missing", &prob_sum_missing, py::arg("k"), py::arg("n"), py::arg("rho"));
  m.def("prob_diff_missing_bound", &prob_diff_missing_bound, py::arg("k"), py::arg("n"),
        py::arg("rho"));
  m.def("prob_diff_zero_missing", &prob_diff_zero_missing, py::arg("n"), py::arg("rho"));
  m.def("prob_joint_event_e", &prob_joint_event_e, py::arg("rho"));
  m.def(
      "pair_probability",
      [](const IntSet& a, const IntSet& b, int n, const RhoVector& rho) {
        return pair_probability(a.resized(n + 1), b.resized(n + 1), n, rho);
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("rho"));

  py::class_<EstimateWithCI>(m, "EstimateWithCI")
      .def_readonly("point", &EstimateWithCI::point)
      .def_readonly("trials", &EstimateWithCI::trials)
      .def_readonly("successes", &EstimateWithCI::successes)
      .def_readonly("ci_low", &EstimateWithCI::ci_low)
      .def_readonly("ci_high", &EstimateWithCI::ci_high)
      .def_readonly("seed", &EstimateWithCI::seed)
      .def_readonly("n", &EstimateWithCI::n)
      .def_readonly("rho", &EstimateWithCI::rho)
      .def("__repr__", [](const EstimateWithCI& e) {
        return "EstimateWithCI(point=" + std::to_string(e.point) + ", ci=[" +
               std::to_string(e.ci_low) + ", " + std::to_string(e.ci_high) + "])";
      });

  py::class_<SumDiffMoments>(m, "SumDiffMoments")
      .def_readonly("n", &SumDiffMoments::n)
      .def_readonly("rho", &SumDiffMoments::rho)
      .def_readonly("trials", &SumDiffMoments::trials)
      .def_readonly("seed", &SumDiffMoments::seed)
      .def_readonly("mean_sum", &SumDiffMoments::mean_sum)
      .def_readonly("sd_sum", &SumDiffMoments::sd_sum)
      .def_readonly("mean_diff", &SumDiffMoments::mean_diff)
      .def_readonly("sd_diff", &SumDiffMoments::sd_diff)
      .def_readonly("mean_sum_complement", &SumDiffMoments::mean_sum_complement)
      .def_readonly("sd_sum_complement", &SumDiffMoments::sd_sum_complement)
      .def_readonly("mean_diff_complement", &SumDiffMoments::mean_diff_complement)
      .def_readonly("sd_diff_complement", &SumDiffMoments::sd_diff_complement)
      .def_readonly("mean_diff_over_sum", &SumDiffMoments::mean_diff_over_sum)
      .def_readonly("ratio_trials", &SumDiffMoments::ratio_trials)
      .def_readonly("mstd_count", &SumDiffMoments::mstd_count)
      .def_readonly("mstd_frequency", &SumDiffMoments::mstd_frequency);

  m.def("sample_pair", &sample_pair, py::arg("n"), py::arg("rho"), py::arg("seed"),
        py::arg("trial") = 0);
  m.def("estimate_p_n", &estimate_p_n, py::arg("n"), py::arg("rho"), py::arg("trials"),
        py::arg("seed"), py::arg("threads") = 1);
  m.def("estimate_sum_diff_stats", &estimate_sum_diff_stats, py::arg("n"), py::arg("rho"),
        py::arg("trials"), py::arg("seed"), py::arg("threads") = 1);

  py::class_<MstdCatalog>(m, "MstdCatalog")
      .def_property_readonly("n", &MstdCatalog::n)
      .def("__len__", &MstdCatalog::size)
      .def(
          "__getitem__",
          [](const MstdCatalog& c, size_t i) {
            if (i >= c.size()) throw py::index_error();
            return c.pair_at(i);
          },
          py::arg("index"))
      .def("__repr__", [](const MstdCatalog& c) {
        return "MstdCatalog(n=" + std::to_string(c.n()) + ", pairs=" + std::to_string(c.size()) +
               ")";
      });

  py::class_<MstdPolynomial>(m, "MstdPolynomial")
      .def_readonly("n", &MstdPolynomial::n)
      .def_readonly("terms", &MstdPolynomial::terms)
      .def("total", &MstdPolynomial::total);

  py::class_<GridMax>(m, "GridMax")
      .def_readonly("argmax", &GridMax::argmax)
      .def_readonly("value", &GridMax::value);

  m.def("enumerate_mstd_pairs", &enumerate_mstd_pairs, py::arg("n"),
        py::arg("cap") = kDefaultEnumerationCap, py::arg("threads") = 1);
  m.def("build_polynomial", &build_polynomial, py::arg("catalog"));
  m.def("evaluate_polynomial", &evaluate_polynomial, py::arg("poly"), py::arg("rho"));
  m.def("grid_search_max", &grid_search_max, py::arg("poly"), py::arg("step"));
  m.def("catalog_to_text", &catalog_to_text, py::arg("catalog"));
  m.def("catalog_from_text", &catalog_from_text, py::arg("text"));
  m.def("polynomial_to_json", &polynomial_to_json, py::arg("poly"));
  m.def("polynomial_from_json", &polynomial_from_json, py::arg("text"));

  py::class_<FringeTuple>(m, "FringeTuple")
      .def_readonly("L", &FringeTuple::L)
      .def_readonly("Lp", &FringeTuple::Lp)
      .def_readonly("R", &FringeTuple::R)
      .def_readonly("Rp", &FringeTuple::Rp)
      .def_readonly("k", &FringeTuple::k)
      .def("__repr__", [](const FringeTuple& t) {
        return "FringeTuple(k=" + std::to_string(t.k) + ", L='" + format_set(t.L) + "', Lp='" +
               format_set(t.Lp) + "', R='" + format_set(t.R) + "', Rp='" + format_set(t.Rp) +
               "')";
      });

  // Fringe sets are interpreted inside [0, k]; operands are resized to that
  // universe so literals and lists can be passed directly.
  m.def(
      "fringe_tuple",
      [](const IntSet& L, const IntSet& Lp, const IntSet& R, const IntSet& Rp, int k) {
        return FringeTuple::make(L.resized(k + 1), Lp.resized(k + 1), R.resized(k + 1),
                                 Rp.resized(k + 1), k);
      },
      py::arg("L"), py::arg("Lp"), py::arg("R"), py::arg("Rp"), py::arg("k"));
  m.def("fringe_sides", [](const FringeTuple& t) {
    const FringeSides s = fringe_sides(t);
    return std::make_pair(s.sum_side, s.diff_side);
  });
  m.def("is_mstd_fringe", &is_mstd_fringe, py::arg("t"));
  m.def("is_weak_mstd_fringe", &is_weak_mstd_fringe, py::arg("t"));
  m.def(
      "fringe_profile",
      [](const IntSet& a, const IntSet& b, int n, int k) {
        return fringe_profile(a.resized(n + 1), b.resized(n + 1), n, k);
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("k"));
  m.def(
      "is_rich_pair",
      [](const IntSet& a, const IntSet& b, int n, int k) {
        return is_rich_pair(a.resized(n + 1), b.resized(n + 1), n, k);
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("k"));
  m.def(
      "minimal_fringe_order",
      [](const IntSet& a, const IntSet& b, int n, int k_max) {
        return minimal_fringe_order(a.resized(n + 1), b.resized(n + 1), n, k_max);
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("k_max"));
  m.def("fringe_partial_leq", &fringe_partial_leq, py::arg("smaller"), py::arg("bigger"));
  m.def("fringe_profile_probability", &fringe_profile_probability, py::arg("t"), py::arg("rho"));

  py::class_<FringeEstimate>(m, "FringeEstimate")
      .def_readonly("rho", &FringeEstimate::rho)
      .def_readonly("n_used", &FringeEstimate::n_used)
      .def_readonly("profile_prob", &FringeEstimate::profile_prob)
      .def_readonly("richness_given_profile", &FringeEstimate::richness_given_profile)
      .def_readonly("product", &FringeEstimate::product);

  py::class_<CuratedFringe>(m, "CuratedFringe")
      .def_readonly("name", &CuratedFringe::name)
      .def_readonly("weak", &CuratedFringe::weak)
      .def_readonly("tuple", &CuratedFringe::tuple);

  py::class_<LowerBoundReport>(m, "LowerBoundReport")
      .def_readonly("rho", &LowerBoundReport::rho)
      .def_readonly("bound", &LowerBoundReport::bound)
      .def_readonly("route", &LowerBoundReport::route)
      .def_readonly("parts", &LowerBoundReport::parts);

  m.def("default_fringe_estimation_n", &default_fringe_estimation_n, py::arg("k"));
  m.def("estimate_fringe_limit", &estimate_fringe_limit, py::arg("t"), py::arg("rho"),
        py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1);
  m.def("curated_fringe_tuples", &curated_fringe_tuples,
        py::return_value_policy::reference);
  m.def(
      "lower_bound_p",
      [](const RhoVector& rho, int k_cap, uint64_t trials, uint64_t seed, int threads) {
        return lower_bound_p(rho, k_cap, trials, seed, threads);
      },
      py::arg("rho"), py::arg("k_cap"), py::arg("trials"), py::arg("seed"),
      py::arg("threads") = 1);
  m.def("fringe_tuple_to_json", &fringe_tuple_to_json, py::arg("t"));
  m.def("fringe_tuple_from_json", &fringe_tuple_from_json, py::arg("text"));

  m.def("g_function", &g_function, py::arg("x"));
  m.def(
      "count_xi1", [](int64_t N, int k) { return exact_int(count_xi1(N, k)); }, py::arg("N"),
      py::arg("k"));
  m.def("count_xi1_approx", &count_xi1_approx, py::arg("N"), py::arg("k"));
  m.def("expected_x1", &expected_x1, py::arg("N"), py::arg("rho"));
  m.def("solve_p_for_p_hat", &solve_p_for_p_hat, py::arg("target"), py::arg("rho1"),
        py::arg("rho2"));

  py::class_<CollisionProfile>(m, "CollisionProfile")
      .def_readonly("sum_pairs", &CollisionProfile::sum_pairs)
      .def_readonly("diff_pairs", &CollisionProfile::diff_pairs)
      .def("x_k", &CollisionProfile::x_k, py::arg("k"))
      .def("x_prime_k", &CollisionProfile::x_prime_k, py::arg("k"));
  m.def(
      "collision_profile",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return collision_profile(x, y);
      },
      py::arg("a"), py::arg("b"));

  py::enum_<DecayRegime>(m, "DecayRegime")
      .value("fixed_p", DecayRegime::fixed_p)
      .value("p_hat_power", DecayRegime::p_hat_power)
      .value("p_hat_over_n", DecayRegime::p_hat_over_n);
  m.def("parse_regime", &parse_regime, py::arg("name"));

  py::class_<DecaySpec>(m, "DecaySpec")
      .def(py::init([](DecayRegime regime, double param, double rho1, double rho2) {
             return DecaySpec{regime, param, rho1, rho2};
           }),
           py::arg("regime"), py::arg("param"), py::arg("rho1"), py::arg("rho2"))
      .def_readonly("regime", &DecaySpec::regime)
      .def_readonly("param", &DecaySpec::param)
      .def_readonly("rho1", &DecaySpec::rho1)
      .def_readonly("rho2", &DecaySpec::rho2)
      .def("p_at", &DecaySpec::p_at, py::arg("N"))
      .def("p_hat_at", &DecaySpec::p_hat_at, py::arg("N"))
      .def("rho_at", &DecaySpec::rho_at, py::arg("N"));

  py::class_<PhaseRow>(m, "PhaseRow")
      .def_readonly("N", &PhaseRow::N)
      .def_readonly("p", &PhaseRow::p)
      .def_readonly("p_hat", &PhaseRow::p_hat)
      .def_readonly("moments", &PhaseRow::moments);
  m.def("phase_scan", &phase_scan, py::arg("spec"), py::arg("n_list"), py::arg("trials"),
        py::arg("seed"), py::arg("threads") = 1);
  m.def("phase_rows_to_csv", &phase_rows_to_csv, py::arg("rows"));

  py::class_<SizeClass>(m, "SizeClass")
      .def(py::init([](int size_a, int size_b) { return SizeClass{size_a, size_b}; }),
           py::arg("size_a"), py::arg("size_b"))
      .def_readonly("size_a", &SizeClass::size_a)
      .def_readonly("size_b", &SizeClass::size_b);

  py::class_<CanonicalPair>(m, "CanonicalPair")
      .def_readonly("a", &CanonicalPair::a)
      .def_readonly("b", &CanonicalPair::b)
      .def_readonly("original_a", &CanonicalPair::original_a)
      .def_readonly("original_b", &CanonicalPair::original_b)
      .def_readonly("shift", &CanonicalPair::shift)
      .def_readonly("divisor", &CanonicalPair::divisor)
      .def_readonly("reflected", &CanonicalPair::reflected)
      .def("__repr__", [](const CanonicalPair& c) {
        return "CanonicalPair(a='" + format_set(c.a) + "', b='" + format_set(c.b) + "')";
      });

  py::class_<StructureReport>(m, "StructureReport")
      .def_readonly("pair_product", &StructureReport::pair_product)
      .def_readonly("collapsed_sums", &StructureReport::collapsed_sums)
      .def_readonly("collapsed_diffs", &StructureReport::collapsed_diffs)
      .def_readonly("m_value", &StructureReport::m_value)
      .def_readonly("sum_excess", &StructureReport::sum_excess)
      .def_readonly("diff_excess", &StructureReport::diff_excess)
      .def_readonly("sum_size", &StructureReport::sum_size)
      .def_readonly("signed_diff_size", &StructureReport::signed_diff_size)
      .def_readonly("pm_diff_size", &StructureReport::pm_diff_size);

  m.def(
      "canonicalize",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return canonicalize(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def("search_size", &search_size, py::arg("size"), py::arg("n_max"),
        py::arg("budget") = kDefaultSearchBudget, py::arg("threads") = 1);
  m.def(
      "verify_triple_lemma",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return verify_triple_lemma(x, y);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "structure_report",
      [](const IntSet& a, const IntSet& b) {
        auto [x, y] = aligned(a, b);
        return structure_report(x, y);
      },
      py::arg("a"), py::arg("b"));
}
