#pragma once

// Named identity checks driven by JSON parameters. Each check maps a
// parameter object to a residual; the runner attaches the tolerance and
// timing and produces one CheckReport per entry.

#include "duality_lab/mcsim.hpp"
#include "duality_lab/symmetries.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace duality_lab {

using json = nlohmann::json;

struct CheckReport {
    std::string check_name;
    json params = json::object();
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::int64_t runtime_ms = 0;
};

// Non-finite residuals are written as null and read back as +inf.
inline void to_json(json& j, const CheckReport& r) {
    j = json{{"check_name", r.check_name},
             {"params", r.params},
             {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
             {"tolerance", r.tolerance},
             {"passed", r.passed},
             {"runtime_ms", r.runtime_ms}};
}

inline void from_json(const json& j, CheckReport& r) {
    static const char* keys[] = {"check_name", "params", "residual", "tolerance", "passed", "runtime_ms"};
    if (!j.is_object() || j.size() != 6) throw domain_error("report: expected exactly six fields");
    for (const char* k : keys)
        if (!j.contains(k)) throw domain_error(std::string("report: missing field ") + k);
    r.check_name = j.at("check_name").get<std::string>();
    r.params = j.at("params");
    r.residual = j.at("residual").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<bool>();
    r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
}

struct RunOptions {
    double tolerance_scale = 1.0;
    std::optional<std::uint64_t> seed;  // overrides "seed" in stochastic checks
    int jobs = 1;
};

inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kTruncatedTolerance = 1e-8;
inline constexpr double kZScoreTolerance = 3.0;

namespace detail {

inline const json& require(const json& p, const char* key) {
    if (!p.is_object() || !p.contains(key))
        throw domain_error(std::string("missing parameter '") + key + "'");
    return p.at(key);
}

template <class T>
T get(const json& p, const char* key) {
    try {
        return require(p, key).get<T>();
    } catch (const json::exception& e) {
        throw domain_error(std::string("parameter '") + key + "': " + e.what());
    }
}

template <class T>
T get_or(const json& p, const char* key, T fallback) {
    return p.contains(key) ? get<T>(p, key) : fallback;
}

inline SiteRep rep_from(const json& p) {
    const auto process = get<std::string>(p, "process");
    const double pv = get<double>(p, "p");
    if (process == "SIP") return SiteRep::su11(get<double>(p, "k"), pv);
    if (process == "SEP") return SiteRep::su2(get<int>(p, "two_j"), pv);
    if (process == "IRW") return SiteRep::heisenberg(pv);
    throw domain_error("unknown process '" + process + "'");
}

/// "path-3", {"n_vertices": 3, "edges": [[0,1],[1,2]]} or
/// {"edge_list_file": "graph.txt"}.
inline Graph graph_from(const json& p) {
    const json& g = require(p, "graph");
    if (g.is_string()) return graph_from_name(g.get<std::string>());
    if (g.is_object() && g.contains("edge_list_file")) {
        const auto path = get<std::string>(g, "edge_list_file");
        std::ifstream in(path);
        if (!in) throw domain_error("cannot open edge list '" + path + "'");
        return parse_edge_list(in, get_or<int>(g, "n_vertices", -1));
    }
    if (g.is_object()) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : require(g, "edges")) {
            if (!e.is_array() || e.size() != 2) throw domain_error("graph: edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return Graph(get<int>(g, "n_vertices"), edges);
    }
    throw domain_error("graph: expected a name or an object");
}

// A number, or "hat" (the default) for the orthogonal-polynomial choice.
inline double angle_from(const json& p, const char* key, double hat) {
    if (!p.contains(key)) return hat;
    const json& v = p.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "hat") return hat;
        throw domain_error(std::string("parameter '") + key + "': expected a number or \"hat\"");
    }
    return get<double>(p, key);
}

inline double default_by_process(const json& p, double bounded, double unbounded) {
    return get_or<std::string>(p, "process", "") == "SEP" ? bounded : unbounded;
}

// Non-finite residuals must never pass.
inline double finite_or_inf(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

struct Outcome {
    double residual = 0.0;
    json details = json::object();
};

using CheckFn = std::function<Outcome(const json&, const RunOptions&)>;
using ToleranceFn = std::function<double(const json&)>;

struct CheckSpec {
    ToleranceFn tolerance;
    CheckFn run;
    bool stochastic = false;
};

// ---------------------------------------------------------------- generators

inline std::shared_ptr<const SectorSpace> range_space(const json& p, const SiteRep& r, const Graph& g) {
    if (p.contains("total")) {
        const int t = get<int>(p, "total");
        return std::make_shared<const SectorSpace>(enumerate_sector(g, r, t));
    }
    int hi = get_or<int>(p, "max_total", 3);
    if (r.bounded()) hi = std::min(hi, r.two_j * g.n_vertices);
    return std::make_shared<const SectorSpace>(enumerate_range(g, r, 0, hi));
}

inline Outcome run_detailed_balance(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const auto L = build_generator(range_space(p, r, graph_from(p)));
    return {detailed_balance_defect(L), {{"states", L.space->size()}}};
}

inline Outcome run_row_sum(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const auto L = build_generator(range_space(p, r, graph_from(p)));
    return {row_sum_defect(L), {{"states", L.space->size()}}};
}

inline Outcome run_algebraic_consistency(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const auto space = range_space(p, r, graph_from(p));
    const auto L = build_generator(space);
    const int truncation = get_or<int>(p, "truncation", space->max_occupancy() + 1);
    return {algebraic_consistency_defect(L, truncation), {{"states", space->size()}}};
}

// ---------------------------------------------------------------- dualities

inline Outcome run_duality_defect(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const Graph g = graph_from(p);
    const Family f = family_from_name(get<std::string>(p, "family"));
    const SingleSiteDuality d = make_duality(r, f, get_or<double>(p, "lambda", 0.0));
    const double perturb = get_or<double>(p, "perturb", 1.0);
    const double c = get_or<double>(p, "rescale_c", 1.0);
    const double b = get_or<double>(p, "rescale_b", 1.0);

    std::vector<std::pair<int, int>> pairs;
    if (p.contains("totals")) {
        const auto t = get<std::vector<int>>(p, "totals");
        if (t.size() != 2) throw domain_error("totals: expected [x_total, y_total]");
        pairs.emplace_back(t[0], t[1]);
    } else {
        int hi = get_or<int>(p, "max_total", 4);
        if (r.bounded()) hi = std::min(hi, r.two_j * g.n_vertices);
        for (int tx = 0; tx <= hi; ++tx)
            for (int ty = 0; ty <= hi; ++ty) pairs.emplace_back(tx, ty);
    }
    std::map<int, std::shared_ptr<const SectorSpace>> spaces;
    std::map<int, RateMatrix> gens;
    auto sector = [&](int t) {
        if (!spaces.count(t)) {
            spaces[t] = std::make_shared<const SectorSpace>(enumerate_sector(g, r, t));
            RateMatrix L = build_generator(spaces[t]);
            gens.emplace(t, perturb != 1.0 ? perturb_rate(L, perturb) : L);
        }
        return spaces[t];
    };
    double scaled = 0.0, absolute = 0.0;
    for (auto [tx, ty] : pairs) {
        const auto sx = sector(tx), sy = sector(ty);
        Eigen::MatrixXcd D = duality_matrix(d, *sx, *sy);
        if (c != 1.0 || b != 1.0) D = equivalence_rescale(D, *sx, *sy, c, b);
        scaled = std::max(scaled, duality_defect_scaled(gens.at(tx), D, gens.at(ty)));
        absolute = std::max(absolute, duality_defect(gens.at(tx), D, gens.at(ty)));
    }
    return {scaled, {{"abs_defect", absolute}, {"sector_pairs", pairs.size()}}};
}

// e^{lowering} on the cheap function in the x-variable against the
// closed-form classical function.
inline Outcome run_exp_ladder(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const SiteSpace space(r, get_or<int>(p, "x_max", 20) + 1);
    const DenseOp E = exp_ladder(1.0, Ladder::Lower, space);
    const SingleSiteDuality cl = classical(r);
    double worst = 0.0;
    for (int x = 0; x < space.dim; ++x)
        for (int y = 0; y < space.dim; ++y)
            worst = std::max(worst, mixed_relative(E(x, y) * cheap_diagonal(r, y), cl(x, y)));
    return {worst, {{"dim", space.dim}}};
}

inline Outcome run_orthogonality(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const auto rep = orthogonality_defect(r, get_or<int>(p, "y_max", 5), get_or<int>(p, "truncation", 200));
    return {std::max(rep.defect, rep.change),
            {{"defect", rep.defect}, {"change", rep.change}, {"truncation", rep.truncation}}};
}

// Scalar products of classical functions against closed forms:
//   classical  <d(x,.), d(y,.)>_{mu_p}, d the classical SIP function;
//              target meixner_one_minus_p = M(x,y;1-p) or
//              hyp2f1_inverse_p = 2F1(-x,-y;2k;1/p)
//   reflected  <d'(x,.), d'(y,.)>_{mu_{p/(p-1)}}, d' with p^-y replaced by
//              ((1-p)/p)^y; target M(x,y;p)
//   laguerre   <d2(x,.), d(y,.)>_{mu_p}, d2(x,z) = (-x)^z / (2k)_z with real
//              x; target 1F1(-y;2k;x)
inline Outcome run_scalar_product(const json& p, const RunOptions&) {
    const auto construction = get<std::string>(p, "construction");
    const double k = get<double>(p, "k");
    const double pv = get<double>(p, "p");
    const SiteRep r = SiteRep::su11(k, pv);
    const double series_tol = get_or<double>(p, "series_tolerance", 1e-14);
    double worst = 0.0, tail = 0.0;
    int max_terms = 0;
    auto fold = [&](const ScalarProduct& s, cplx target) {
        if (!s.converged) tail = std::numeric_limits<double>::infinity();
        tail = std::max(tail, s.tail_bound);
        max_terms = std::max(max_terms, s.terms);
        worst = std::max(worst, mixed_relative(s.value, target));
    };
    if (construction == "laguerre") {
        const int y_max = get_or<int>(p, "y_max", 6);
        const auto xs = get_or<std::vector<double>>(p, "x_values", {0.5, 1.0, 2.0});
        const SingleSiteDuality d1 = classical(r);
        for (double x : xs)
            for (int y = 0; y <= y_max; ++y) {
                auto d2 = [&](int z) {
                    double v = 1.0;
                    for (int i = 0; i < z; ++i) v *= -x / (2.0 * k + i);
                    return v;
                };
                const auto s = scalar_product(d2, [&](int z) { return d1(y, z); },
                                              [&](int z) { return mu_unnormalized(k, pv, z); }, -1,
                                              series_tol);
                fold(s, laguerre_1f1<double>(y, k, x));
            }
    } else if (construction == "classical" || construction == "reflected") {
        const int x_max = get_or<int>(p, "x_max", 8);
        const bool reflected = construction == "reflected";
        const SingleSiteDuality d =
            reflected ? classical_lambda(r, (1.0 - pv) / pv) : classical(r);
        const double mu_p = reflected ? pv / (pv - 1.0) : pv;
        const auto target_name =
            get_or<std::string>(p, "target", reflected ? "meixner_p" : "meixner_one_minus_p");
        auto target = [&](int x, int y) -> double {
            if (target_name == "meixner_one_minus_p") return meixner<double>(x, y, 1.0 - pv, k);
            if (target_name == "meixner_p") return meixner<double>(x, y, pv, k);
            if (target_name == "hyp2f1_inverse_p") return hyp2f1_term<double>(x, y, 2.0 * k, 1.0 / pv);
            throw domain_error("unknown target '" + target_name + "'");
        };
        const auto D = scalar_product_duality(d, d, [&](int z) { return mu_unnormalized(k, mu_p, z); },
                                              true, series_tol);
        for (int x = 0; x <= x_max; ++x)
            for (int y = 0; y <= x_max; ++y) fold(D(x, y), target(x, y));
    } else {
        throw domain_error("unknown construction '" + construction + "'");
    }
    return {std::max(worst, tail), {{"tail_bound", tail}, {"terms", max_terms}}};
}

inline Outcome run_biorthogonality(const json& p, const RunOptions&) {
    return {biorthogonality_defect(get<double>(p, "p"), get<double>(p, "q"), get<double>(p, "k"),
                                   get_or<int>(p, "x_max", 8)),
            json::object()};
}

inline Outcome run_biorthogonal_pair(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const auto measure = get_or<std::string>(p, "measure", "biorthogonality");
    const auto rep = biorthogonal_pair_defect(r, get<double>(p, "q"), get_or<int>(p, "x_max", 8),
                                              get_or<int>(p, "truncation", 300));
    json details{{"biorthogonality", rep.biorthogonality},
                 {"reduction", rep.reduction},
                 {"change", rep.change},
                 {"truncation", rep.truncation}};
    if (measure == "reduction") return {rep.reduction, details};
    if (measure == "biorthogonality") return {std::max(rep.biorthogonality, rep.change), details};
    throw domain_error("unknown measure '" + measure + "'");
}

// ---------------------------------------------------------------- symmetries

inline Outcome run_unitary_symmetry(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const double a = angle_from(p, "alpha", alpha_hat);
    const double b = angle_from(p, "beta", beta_hat(r));
    if (r.bounded()) {
        const Symmetry S = unitary_symmetry(r, a, b, 0);
        return {weighted_unitarity_defect(S), {{"dim", S.dim}}};
    }
    const int N = get_or<int>(p, "truncation", 120);
    const int block = get_or<int>(p, "block", N / 6);
    const auto rep = unitarity_under_doubling(r, a, b, N, block);
    return {rep.defect,
            {{"defect_doubled", rep.defect_doubled}, {"decreasing", rep.decreasing}}};
}

inline Outcome run_apply_to_cheap(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const int N = get_or<int>(p, "truncation", 240);
    const int block = r.bounded() ? r.two_j : get_or<int>(p, "block", 40);
    const Symmetry S = unitary_symmetry(r, alpha_hat, beta_hat(r), N + 1);
    return {orthogonal_identification_residual(apply_to_cheap(S, block), r, block), json::object()};
}

inline Outcome run_factorized_symmetry(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const int block = r.bounded() ? r.two_j : get_or<int>(p, "block", 40);
    const bool with_diagonal = get_or<bool>(p, "with_diagonal", true);
    const auto compare = get_or<std::string>(p, "compare", "unitary");
    const FactorizedSymmetry F = factorized_symmetry(r, block, with_diagonal);
    if (compare == "cheap") return {factorized_on_cheap_residual(F, block), json::object()};
    if (compare != "unitary") throw domain_error("unknown comparison '" + compare + "'");
    if (r.bounded())
        return {factorized_vs_unitary(F, unitary_symmetry(r, alpha_hat, beta_hat(r), 0), block),
                json::object()};
    const int N = get_or<int>(p, "truncation", 240);
    const double d1 = factorized_vs_unitary(F, unitary_symmetry(r, alpha_hat, beta_hat(r), N + 1), block);
    const double d2 =
        factorized_vs_unitary(F, unitary_symmetry(r, alpha_hat, beta_hat(r), 2 * N + 1), block);
    return {std::max(d1, d2), {{"defect_doubled", d2}, {"change", std::abs(d1 - d2)}}};
}

// Certified partial sum of the Meixner generating function.
inline Outcome run_meixner_gf(const json& p, const RunOptions&) {
    const int x = get<int>(p, "x");
    const double t = get<double>(p, "t"), pv = get<double>(p, "p"), k = get<double>(p, "k");
    const auto s = meixner_gf_certified(x, t, pv, k, get_or<double>(p, "series_tolerance", 1e-14));
    const double closed = meixner_gf_closed(x, t, pv, k);
    const double tail = s.converged ? s.tail_bound : std::numeric_limits<double>::infinity();
    return {std::max(mixed_relative(s.value, closed), tail),
            {{"terms", s.terms}, {"tail_bound", tail}}};
}

// Truncated identities are certified by doubling: the block must move by
// less than a tenth of the defect budget, hence the factor 10.
inline Outcome run_bch(const json& p, const RunOptions&) {
    const auto rep = bch_defect(get<double>(p, "p"), get<double>(p, "k"), get_or<int>(p, "truncation", 320),
                                get_or<int>(p, "block", 16), get_or<bool>(p, "literal", false));
    return {std::max(rep.defect, 10.0 * rep.change),
            {{"defect", rep.defect}, {"change", rep.change}, {"truncation_doubled", rep.truncation}}};
}

inline Outcome run_s1_s2(const json& p, const RunOptions&) {
    const auto rep = s1_s2_equivalence_defect(get<double>(p, "p"), get<double>(p, "k"),
                                              get_or<int>(p, "truncation", 320), get_or<int>(p, "block", 16));
    return {std::max({rep.s1_vs_orthogonal, rep.s1_vs_s2.defect, 10.0 * rep.s1_vs_s2.change}),
            {{"s1_vs_orthogonal", rep.s1_vs_orthogonal},
             {"defect", rep.s1_vs_s2.defect},
             {"change", rep.s1_vs_s2.change}}};
}

inline Outcome run_commutation_remark(const json& p, const RunOptions&) {
    return {commutation_remark_defect(get<double>(p, "p"), get<double>(p, "k"), get_or<int>(p, "size", 40)),
            json::object()};
}

inline Outcome run_corollary(const json& p, const RunOptions&) {
    return {corollary_relation_defect(get<double>(p, "alpha"), get<double>(p, "lambda"), get<double>(p, "k"),
                                      get_or<int>(p, "x_max", 30)),
            json::object()};
}

// [S (x) ... (x) S, L] on configurations of total <= max_total, relative to
// max|S|^n max|L|.
inline Outcome run_generator_commutation(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const Graph g = graph_from(p);
    int hi = get_or<int>(p, "max_total", 3);
    if (r.bounded()) hi = std::min(hi, r.two_j * g.n_vertices);
    const auto space = std::make_shared<const SectorSpace>(enumerate_range(g, r, 0, hi));
    const auto L = build_generator(space);
    const SiteSpace site(r, space->max_occupancy() + 1);
    const auto which = get<std::string>(p, "symmetry");
    DenseOp S;
    if (which == "exp_lower") {
        S = exp_ladder(get_or<double>(p, "c", 1.0), Ladder::Lower, site);
    } else if (which == "exp_raise") {
        S = exp_ladder(get_or<double>(p, "c", 1.0), Ladder::Raise, site);
    } else if (which == "unitary") {
        const int N = get_or<int>(p, "truncation", 120);
        S = unitary_symmetry(r, angle_from(p, "alpha", alpha_hat), angle_from(p, "beta", beta_hat(r)), N + 1)
                .block(site.dim - 1);
    } else {
        throw domain_error("unknown symmetry '" + which + "'");
    }
    const Eigen::MatrixXcd A = lift_product(S, *space);
    const double scale =
        std::max(1.0, A.cwiseAbs().maxCoeff() * L.dense().cwiseAbs().maxCoeff());
    return {commutation_defect(A, L, hi) / scale, {{"states", space->size()}}};
}

// ---------------------------------------------------------------- mcsim

inline Config config_from(const json& p, const char* key) { return get<std::vector<int>>(p, key); }

inline json cplx_json(cplx v) {
    if (v.imag() == 0.0) return v.real();
    return json::array({v.real(), v.imag()});
}

// Largest of the gap z-score and the z-scores of each side against the
// matrix-exponential value.
inline Outcome run_mc_gap(const json& p, const RunOptions& opt) {
    const SiteRep r = rep_from(p);
    const Graph g = graph_from(p);
    const Config x = config_from(p, "x"), y = config_from(p, "y");
    const SingleSiteDuality d =
        make_duality(r, family_from_name(get<std::string>(p, "family")), get_or<double>(p, "lambda", 0.0));
    const double t = get<double>(p, "t");
    const auto est = mc_duality_gap(r, g, x, y, d, t, get<long>(p, "n_samples"),
                                    get<std::uint64_t>(p, "seed"), opt.jobs);
    json details{{"lhs_mean", cplx_json(est.lhs_mean)},
                 {"rhs_mean", cplx_json(est.rhs_mean)},
                 {"lhs_stderr", cplx_json(est.lhs_stderr)},
                 {"rhs_stderr", cplx_json(est.rhs_stderr)},
                 {"z_gap", est.z_score()}};
    double residual = est.z_score();
    if (get_or<bool>(p, "exact", true)) {
        const auto ex = exact_duality_sides(r, g, x, y, d, t);
        auto z = [](cplx mean, cplx exact, cplx se) {
            DualityEstimate one{mean, exact, se, cplx(0.0), 2, 0.0};
            return one.z_score();
        };
        const double zl = z(est.lhs_mean, ex.lhs, est.lhs_stderr);
        const double zr = z(est.rhs_mean, ex.rhs, est.rhs_stderr);
        details["exact_lhs"] = cplx_json(ex.lhs);
        details["exact_rhs"] = cplx_json(ex.rhs);
        details["z_lhs_exact"] = zl;
        details["z_rhs_exact"] = zr;
        residual = std::max({residual, zl, zr});
    }
    return {residual, details};
}

// chi^2 / (99% quantile): at most 1 when the visit counts are compatible
// with the product measure on the sector.
inline Outcome run_occupation(const json& p, const RunOptions&) {
    const SiteRep r = rep_from(p);
    const auto o = occupation_chi_square(r, graph_from(p), config_from(p, "start"), get_or<double>(p, "dt", 5.0),
                                         get_or<long>(p, "min_events", 200000), get<std::uint64_t>(p, "seed"));
    return {o.chi_square / o.critical,
            {{"chi_square", o.chi_square}, {"critical", o.critical}, {"samples", o.samples}}};
}

inline const std::map<std::string, CheckSpec>& registry() {
    auto fixed = [](double v) { return ToleranceFn([v](const json&) { return v; }); };
    auto by_process = ToleranceFn(
        [](const json& p) { return default_by_process(p, kExactTolerance, kTruncatedTolerance); });
    static const std::map<std::string, CheckSpec> table{
        {"algebraic_consistency_defect", {fixed(kExactTolerance), run_algebraic_consistency}},
        {"apply_to_cheap", {by_process, run_apply_to_cheap}},
        {"bch_defect", {fixed(1e-10), run_bch}},
        {"biorthogonal_pair_defect",
         {[](const json& p) {
              return get_or<std::string>(p, "measure", "biorthogonality") == "reduction" ? 1e-10
                                                                                         : kExactTolerance;
          },
          run_biorthogonal_pair}},
        {"biorthogonality_defect", {fixed(kExactTolerance), run_biorthogonality}},
        {"commutation_remark_defect", {fixed(kExactTolerance), run_commutation_remark}},
        {"corollary_relation_defect", {fixed(kExactTolerance), run_corollary}},
        {"detailed_balance_defect", {fixed(kExactTolerance), run_detailed_balance}},
        {"duality_defect", {fixed(kExactTolerance), run_duality_defect}},
        {"exp_ladder", {fixed(kExactTolerance), run_exp_ladder}},
        {"factorized_symmetry", {by_process, run_factorized_symmetry}},
        {"generator_commutation_defect",
         {[](const json& p) {
              return get_or<std::string>(p, "symmetry", "") == "unitary" ? 1e-10 : kExactTolerance;
          },
          run_generator_commutation}},
        {"mc_duality_gap", {fixed(kZScoreTolerance), run_mc_gap, true}},
        {"meixner_gf_partial", {fixed(1e-10), run_meixner_gf}},
        {"occupation_chi_square", {fixed(1.0), run_occupation, true}},
        {"orthogonality_defect", {by_process, run_orthogonality}},
        {"row_sum_defect", {fixed(kExactTolerance), run_row_sum}},
        {"s1_s2_equivalence_defect", {fixed(1e-10), run_s1_s2}},
        {"scalar_product_duality",
         {[](const json& p) {
              return get_or<std::string>(p, "construction", "") == "laguerre" ? 1e-10 : kExactTolerance;
          },
          run_scalar_product}},
        {"unitary_symmetry", {by_process, run_unitary_symmetry}},
    };
    return table;
}

}  // namespace detail

inline std::vector<std::string> check_names() {
    std::vector<std::string> out;
    for (const auto& [name, spec] : detail::registry()) out.push_back(name);
    return out;
}

/// One config entry: {"check": name, "tolerance": optional, ...params}.
inline CheckReport run_check(const json& entry, const RunOptions& opt = {}) {
    if (!entry.is_object()) throw domain_error("check entry must be an object");
    const auto name = detail::get<std::string>(entry, "check");
    const auto it = detail::registry().find(name);
    if (it == detail::registry().end()) throw domain_error("unknown check '" + name + "'");
    const detail::CheckSpec& spec = it->second;

    json params = entry;
    params.erase("check");
    params.erase("tolerance");
    if (spec.stochastic && opt.seed) params["seed"] = *opt.seed;
    const double tol =
        (entry.contains("tolerance") ? detail::get<double>(entry, "tolerance") : spec.tolerance(params)) *
        opt.tolerance_scale;

    const auto start = std::chrono::steady_clock::now();
    const detail::Outcome out = spec.run(params, opt);
    const auto stop = std::chrono::steady_clock::now();

    CheckReport rep;
    rep.check_name = name;
    rep.params = params;
    for (const auto& [k, v] : out.details.items()) rep.params[k] = v;
    rep.residual = detail::finite_or_inf(out.residual);
    rep.tolerance = tol;
    rep.passed = rep.residual <= tol;
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return rep;
}

/// Accepts {"checks": [...]} or a bare array. Runs up to opt.jobs entries at
/// once; the result is sorted by check name, then by the serialized params.
inline std::vector<CheckReport> run_checks(const json& config, const RunOptions& opt = {}) {
    const json* list = &config;
    if (config.is_object()) list = &detail::require(config, "checks");
    if (!list->is_array()) throw domain_error("config: expected an array of checks");
    const std::size_t n = list->size();
    std::vector<CheckReport> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = run_check((*list)[i], opt);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int workers = std::max(1, std::min<int>(opt.jobs, static_cast<int>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) {
        if (a.check_name != b.check_name) return a.check_name < b.check_name;
        return a.params.dump() < b.params.dump();
    });
    return out;
}

inline json reports_to_json(const std::vector<CheckReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r);
    return arr;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

}  // namespace duality_lab
