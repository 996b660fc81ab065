#pragma once

// The standard verification suite, grouped into numbered sections. Sections
// 1-11 are expected to pass; section 12 holds negative controls that are
// expected to fail.

#include "duality_lab/checks.hpp"

#include <string>
#include <utility>
#include <vector>

namespace duality_lab {

namespace detail {

inline json sip(double k, double p) { return {{"process", "SIP"}, {"k", k}, {"p", p}}; }
inline json sep(int two_j, double p) { return {{"process", "SEP"}, {"two_j", two_j}, {"p", p}}; }
inline json irw(double p) { return {{"process", "IRW"}, {"p", p}}; }

inline json with(json base, const json& extra) {
    for (const auto& [k, v] : extra.items()) base[k] = v;
    return base;
}

inline json entry(const char* check, const json& rep, const json& extra = json::object()) {
    return with(with(json{{"check", check}}, rep), extra);
}

// SIP 2k in {1,2}, SEP 2j in {1,2}, each at the two p values.
inline std::vector<json> two_by_two(double p0, double p1) {
    std::vector<json> out;
    for (double p : {p0, p1}) {
        out.push_back(sip(0.5, p));
        out.push_back(sip(1.0, p));
        out.push_back(sep(1, p));
        out.push_back(sep(2, p));
    }
    return out;
}

// Processes used by the single-site symmetry sections; IRW at p in {0.5, 1}.
inline std::vector<json> symmetry_reps() {
    auto out = two_by_two(0.3, 0.5);
    out.push_back(irw(0.5));
    out.push_back(irw(1.0));
    return out;
}

}  // namespace detail

inline constexpr int kSuiteSections = 12;

/// Entries of one section as a JSON array of check objects.
inline json suite_section(int section) {
    using namespace detail;
    json out = json::array();
    switch (section) {
        case 1:  // matrix self-duality on small graphs
            for (double p : {0.3, 0.5})
                for (const json& rep : {sip(0.5, p), sip(1.0, p), sep(1, p), sep(2, p), irw(p)})
                    for (const char* fam : {"cheap", "classical", "orthogonal"})
                        for (const char* g : {"path-2", "path-3", "triangle"})
                            out.push_back(entry("duality_defect", rep,
                                                {{"family", fam}, {"graph", g}, {"max_total", 4}}));
            break;
        case 2:  // classical from cheap
            for (const json& rep : {sip(0.5, 0.3), sip(1.0, 0.5), sep(2, 0.3), sep(20, 0.5), irw(0.3), irw(1.0)})
                out.push_back(entry("exp_ladder", rep, {{"x_max", 20}}));
            break;
        case 3:  // unitarity
            for (const json& rep : {sep(1, 0.3), sep(1, 0.5), sep(2, 0.3), sep(2, 0.5)})
                for (int a = 0; a < 5; ++a)
                    for (int b = 0; b < 5; ++b)
                        out.push_back(entry("unitary_symmetry", rep,
                                            {{"alpha", -3.141592653589793 + a * 1.5707963267948966},
                                             {"beta", -2.0 + b}}));
            for (const json& rep : {sip(0.5, 0.3), sip(0.5, 0.5), sip(1.0, 0.3), sip(1.0, 0.5), irw(0.3),
                                    irw(0.5), irw(1.0)})
                out.push_back(entry("unitary_symmetry", rep,
                                    {{"alpha", "hat"}, {"beta", "hat"}, {"truncation", 120}, {"block", 20}}));
            break;
        case 4:  // orthogonal polynomials from the unitary symmetry
            for (const json& rep : symmetry_reps())
                out.push_back(entry("apply_to_cheap", rep, {{"truncation", 240}, {"block", 40}}));
            break;
        case 5:  // factorisation
            for (const json& rep : symmetry_reps())
                out.push_back(entry("factorized_symmetry", rep,
                                    {{"compare", "unitary"}, {"truncation", 240}, {"block", 40}}));
            for (const json& rep : {sip(0.5, 0.3), sip(0.5, 0.5), sip(1.0, 0.3), sip(1.0, 0.5)})
                out.push_back(entry("factorized_symmetry", rep, {{"compare", "cheap"}, {"block", 40}}));
            break;
        case 6:  // Meixner generating function
            for (int x = 0; x <= 5; ++x)
                for (double t : {0.1, 0.25, 0.5})
                    for (double p : {0.3, 0.5})
                        for (double k : {0.5, 1.0})
                            out.push_back(json{{"check", "meixner_gf_partial"}, {"x", x}, {"t", t}, {"p", p}, {"k", k}});
            break;
        case 7:  // orthogonality relations
            for (const json& rep : symmetry_reps())
                out.push_back(entry("orthogonality_defect", rep, {{"y_max", 5}}));
            break;
        case 8:  // scalar-product constructions
            for (double k : {0.5, 1.0})
                for (double p : {0.3, 0.5}) {
                    out.push_back(entry("scalar_product_duality", sip(k, p),
                                        {{"construction", "classical"}, {"target", "meixner_one_minus_p"}, {"x_max", 8}}));
                    out.push_back(entry("scalar_product_duality", sip(k, p),
                                        {{"construction", "classical"}, {"target", "hyp2f1_inverse_p"}, {"x_max", 8}}));
                    out.push_back(entry("scalar_product_duality", sip(k, p),
                                        {{"construction", "reflected"}, {"target", "meixner_p"}, {"x_max", 8}}));
                }
            for (double k : {0.5, 1.0})
                for (double x : {0.5, 1.0, 2.0})
                    out.push_back(entry("scalar_product_duality", sip(k, 0.5),
                                        {{"construction", "laguerre"}, {"x_values", {x}}, {"y_max", 6}}));
            break;
        case 9:  // biorthogonality
            for (auto [p, q] : {std::pair{0.5, 0.25}, std::pair{0.3, 0.7}})
                for (double k : {0.5, 1.0})
                    out.push_back(json{{"check", "biorthogonality_defect"}, {"p", p}, {"q", q}, {"k", k}, {"x_max", 8}});
            for (double k : {0.5, 1.0})
                for (double p : {0.3, 0.5})
                    out.push_back(entry("biorthogonal_pair_defect", sip(k, p),
                                        {{"q", 0.25}, {"x_max", 8}, {"measure", "reduction"}}));
            for (const json& rep : {sep(1, 0.3), sep(2, 0.5)})
                out.push_back(entry("biorthogonal_pair_defect", rep, {{"q", 0.6}, {"x_max", 8}, {"measure", "reduction"}}));
            for (const json& rep : {irw(0.5), irw(1.0)})
                out.push_back(entry("biorthogonal_pair_defect", rep, {{"q", 0.4}, {"x_max", 8}, {"measure", "reduction"}}));
            for (double q : {0.25, -0.5})
                out.push_back(entry("biorthogonal_pair_defect", sip(0.5, 0.5),
                                    {{"q", q}, {"x_max", 8}, {"measure", "biorthogonality"}}));
            break;
        case 10:  // BCH and commutation identities
            for (double k : {0.5, 1.0}) {
                out.push_back(json{{"check", "bch_defect"}, {"p", 0.5}, {"k", k}, {"truncation", 320}, {"block", 16}});
                out.push_back(json{{"check", "bch_defect"}, {"p", 0.3}, {"k", k}, {"truncation", 320}, {"block", 16},
                                   {"literal", true}});
                out.push_back(json{{"check", "s1_s2_equivalence_defect"}, {"p", 0.5}, {"k", k},
                                   {"truncation", 320}, {"block", 16}});
                out.push_back(json{{"check", "commutation_remark_defect"}, {"p", 0.5}, {"k", k}, {"size", 40}});
                for (auto [a, l] : {std::pair{0.7, -2.0}, std::pair{1.3, 0.5}})
                    out.push_back(json{{"check", "corollary_relation_defect"}, {"alpha", a}, {"lambda", l}, {"k", k},
                                       {"x_max", 30}});
            }
            break;
        case 11:  // process-level duality by simulation
            out.push_back(entry("mc_duality_gap", sip(0.5, 0.5),
                                {{"graph", "path-3"}, {"x", {2, 0, 0}}, {"y", {1, 0, 0}}, {"family", "classical"},
                                 {"t", 0.5}, {"n_samples", 100000}, {"seed", 20240601}}));
            out.push_back(entry("mc_duality_gap", sep(1, 0.5),
                                {{"graph", "path-3"}, {"x", {1, 1, 0}}, {"y", {1, 0, 0}}, {"family", "classical"},
                                 {"t", 0.5}, {"n_samples", 100000}, {"seed", 20240601}}));
            break;
        case 12:  // negative controls, each expected to fail
            for (const json& rep : {sip(0.5, 0.5), sep(1, 0.3), irw(0.5)})
                out.push_back(entry("duality_defect", rep,
                                    {{"family", "classical"}, {"graph", "path-3"}, {"max_total", 4}, {"perturb", 1.01}}));
            for (const json& rep : {sip(0.5, 0.5), sep(2, 0.3), irw(0.5)})
                out.push_back(entry("factorized_symmetry", rep,
                                    {{"compare", "cheap"}, {"block", 40}, {"with_diagonal", false}}));
            break;
        default: throw domain_error("suite: no section " + std::to_string(section));
    }
    return out;
}

/// Sections 1-11.
inline json default_suite() {
    json out = json::array();
    for (int s = 1; s <= 11; ++s)
        for (auto& e : suite_section(s)) out.push_back(e);
    return out;
}

}  // namespace duality_lab
