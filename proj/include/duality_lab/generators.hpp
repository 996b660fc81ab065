#pragma once

// Graphs, conserved-particle sectors and the SIP/SEP/IRW rate matrices.

#include "duality_lab/algebra.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace duality_lab {

struct Graph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> e) : n_vertices(n), edges(std::move(e)) {
        validate();
    }

    void validate() const {
        if (n_vertices < 1) throw domain_error("graph: need at least one vertex");
        std::set<std::pair<int, int>> seen;
        for (auto [i, l] : edges) {
            if (i < 0 || l < 0 || i >= n_vertices || l >= n_vertices)
                throw domain_error("graph: edge endpoint out of range");
            if (i == l) throw domain_error("graph: self-loop");
            if (!seen.insert({std::min(i, l), std::max(i, l)}).second)
                throw domain_error("graph: duplicate edge");
        }
    }
};

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int l = i + 1; l < n; ++l) e.emplace_back(i, l);
    return Graph(n, e);
}

inline Graph triangle_graph() { return complete_graph(3); }

/// "path-3", "complete-4", "triangle", "empty-2".
inline Graph graph_from_name(const std::string& name) {
    if (name == "triangle") return triangle_graph();
    const auto dash = name.find('-');
    if (dash == std::string::npos) throw domain_error("graph: unknown name '" + name + "'");
    const std::string kind = name.substr(0, dash);
    int n = 0;
    try {
        n = std::stoi(name.substr(dash + 1));
    } catch (const std::exception&) {
        throw domain_error("graph: bad vertex count in '" + name + "'");
    }
    if (kind == "path") return path_graph(n);
    if (kind == "complete") return complete_graph(n);
    if (kind == "empty") return Graph(n, {});
    throw domain_error("graph: unknown name '" + name + "'");
}

/// One "i l" pair per line; '#' starts a comment. The vertex count is the
/// largest index + 1 unless given.
inline Graph parse_edge_list(std::istream& in, int n_vertices = -1) {
    std::vector<std::pair<int, int>> e;
    std::string line;
    int max_index = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int i = 0, l = 0;
        if (!(ls >> i)) continue;
        std::string rest;
        if (!(ls >> l) || (ls >> rest))
            throw domain_error("edge list: malformed line " + std::to_string(lineno));
        e.emplace_back(i, l);
        max_index = std::max({max_index, i, l});
    }
    if (n_vertices < 0) n_vertices = max_index + 1;
    return Graph(n_vertices, e);
}

inline std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    for (auto [i, l] : g.edges) out << i << ' ' << l << '\n';
    return out.str();
}

using Config = std::vector<int>;

inline int config_total(const Config& c) {
    int s = 0;
    for (int v : c) s += v;
    return s;
}

/// All admissible configurations with total in [min_total, max_total],
/// ordered by total and then descending lexicographically.
struct SectorSpace {
    Graph graph;
    SiteRep rep;
    int min_total = 0;
    int max_total = 0;
    std::vector<Config> configs;
    std::map<Config, int> index;

    int size() const { return static_cast<int>(configs.size()); }
    int total() const { return max_total; }
    int find(const Config& c) const {
        auto it = index.find(c);
        return it == index.end() ? -1 : it->second;
    }
    int max_occupancy() const {
        int m = 0;
        for (const auto& c : configs)
            for (int v : c) m = std::max(m, v);
        return m;
    }
};

namespace detail {
inline void compositions(int sites_left, int remaining, int cap, Config& cur,
                         std::vector<Config>& out) {
    if (sites_left == 1) {
        if (remaining <= cap) {
            cur.push_back(remaining);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int v = std::min(remaining, cap); v >= 0; --v) {
        cur.push_back(v);
        compositions(sites_left - 1, remaining - v, cap, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

inline SectorSpace enumerate_range(const Graph& g, const SiteRep& rep, int min_total,
                                   int max_total) {
    g.validate();
    if (min_total < 0 || max_total < min_total) throw domain_error("sector: bad total range");
    const int cap = rep.bounded() ? rep.two_j : max_total;
    SectorSpace s{g, rep, min_total, max_total, {}, {}};
    for (int t = min_total; t <= max_total; ++t) {
        if (rep.bounded() && t > cap * g.n_vertices) break;
        Config cur;
        detail::compositions(g.n_vertices, t, cap, cur, s.configs);
    }
    if (s.configs.empty()) throw domain_error("sector: empty (total exceeds exclusion capacity)");
    for (int i = 0; i < s.size(); ++i) s.index.emplace(s.configs[i], i);
    return s;
}

inline SectorSpace enumerate_sector(const Graph& g, const SiteRep& rep, int total) {
    if (rep.bounded() && total > rep.two_j * g.n_vertices)
        throw domain_error("sector: total exceeds exclusion capacity");
    return enumerate_range(g, rep, total, total);
}

/// Rate of one particle jumping from a site with xi particles to one with xl.
inline double jump_rate(const SiteRep& r, int xi, int xl) {
    switch (r.kind) {
        case Algebra::SU11: return xi * (2.0 * r.k + xl);
        case Algebra::SU2: return xi * double(r.two_j - xl);
        case Algebra::HEIS: return double(xi);
    }
    return 0.0;
}

struct RateMatrix {
    Eigen::SparseMatrix<double, Eigen::RowMajor> L;
    std::shared_ptr<const SectorSpace> space;

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(L); }
};

inline RateMatrix build_generator(std::shared_ptr<const SectorSpace> space) {
    const SectorSpace& s = *space;
    std::vector<Eigen::Triplet<double>> trip;
    for (int a = 0; a < s.size(); ++a) {
        const Config& x = s.configs[a];
        double exit = 0.0;
        auto move = [&](int i, int l) {
            if (x[i] == 0) return;
            const double rate = jump_rate(s.rep, x[i], x[l]);
            if (rate == 0.0) return;
            Config y = x;
            --y[i];
            ++y[l];
            const int b = s.find(y);
            if (b < 0 || config_total(y) != config_total(x))
                throw domain_error("build_generator: jump leaves the sector");
            trip.emplace_back(a, b, rate);
            exit += rate;
        };
        for (auto [i, l] : s.graph.edges) {
            move(i, l);
            move(l, i);
        }
        trip.emplace_back(a, a, -exit);
    }
    RateMatrix out;
    out.L.resize(s.size(), s.size());
    out.L.setFromTriplets(trip.begin(), trip.end());
    out.L.makeCompressed();
    out.space = std::move(space);
    return out;
}

inline RateMatrix build_generator(const SectorSpace& space) {
    return build_generator(std::make_shared<const SectorSpace>(space));
}

/// Scale one off-diagonal rate by `factor` and re-close the row; used as a
/// negative control.
inline RateMatrix perturb_rate(const RateMatrix& L, double factor) {
    RateMatrix out = L;
    for (int r = 0; r < out.L.outerSize(); ++r) {
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(out.L, r); it; ++it) {
            if (it.col() != r && it.value() > 0.0) {
                const double delta = it.value() * (factor - 1.0);
                it.valueRef() += delta;
                out.L.coeffRef(r, r) -= delta;
                return out;
            }
        }
    }
    return out;
}

inline double row_sum_defect(const RateMatrix& L) {
    double worst = 0.0;
    for (int r = 0; r < L.L.outerSize(); ++r) {
        double acc = 0.0;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(L.L, r); it; ++it)
            acc += it.value();
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

inline double product_log_weight(const SiteRep& r, const Config& c) {
    double acc = 0.0;
    for (int v : c) acc += log_weight(r, v);
    return acc;
}

/// max |pi(x) L[x,x'] - pi(x') L[x',x]| with pi the product measure
/// renormalised on the sector.
inline double detailed_balance_defect(const RateMatrix& L) {
    const SectorSpace& s = *L.space;
    std::vector<double> lw(s.size());
    double top = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < s.size(); ++a) {
        lw[a] = product_log_weight(s.rep, s.configs[a]);
        top = std::max(top, lw[a]);
    }
    std::vector<double> pi(s.size());
    double z = 0.0;
    for (int a = 0; a < s.size(); ++a) z += (pi[a] = std::exp(lw[a] - top));
    for (double& v : pi) v /= z;
    const Eigen::MatrixXd D = L.dense();
    double worst = 0.0;
    for (int a = 0; a < s.size(); ++a)
        for (int b = a + 1; b < s.size(); ++b)
            worst = std::max(worst, std::abs(pi[a] * D(a, b) - pi[b] * D(b, a)));
    return worst;
}

/// Position of a configuration in the tensor basis with site 0 slowest.
inline long long tensor_index(const Config& c, int dim) {
    long long idx = 0;
    for (int v : c) idx = idx * dim + v;
    return idx;
}

/// Rate-built generator against the ladder expression
/// sum_edges K+_i K-_l + K-_i K+_l - 2 K0_i K0_l + 2k^2 (SIP) or
/// J+_i J-_l + J-_i J+_l + 2 J0_i J0_l - 2j^2 (SEP), both restricted to the
/// sector inside a tensor space with `truncation` states per site.
inline double algebraic_consistency_defect(const RateMatrix& L, int truncation) {
    const SectorSpace& s = *L.space;
    if (s.rep.kind == Algebra::HEIS)
        throw domain_error("algebraic_consistency_defect: no ladder form for IRW");
    const SiteSpace site(s.rep, truncation);
    if (site.dim < s.max_occupancy() + 1)
        throw domain_error("algebraic_consistency_defect: truncation below sector occupancy");
    const int n = s.graph.n_vertices;
    const DenseOp up = ladder(site, Ladder::Raise);
    const DenseOp dn = ladder(site, Ladder::Lower);
    const DenseOp h = ladder(site, Ladder::Diag);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= site.dim;
    DenseOp H = DenseOp::Zero(total, total);
    for (auto [i, l] : s.graph.edges) {
        if (s.rep.kind == Algebra::SU11) {
            H += embed(up, i, n) * embed(dn, l, n) + embed(dn, i, n) * embed(up, l, n) -
                 2.0 * embed(h, i, n) * embed(h, l, n);
            H += 2.0 * s.rep.k * s.rep.k * DenseOp::Identity(total, total);
        } else {
            H += embed(up, i, n) * embed(dn, l, n) + embed(dn, i, n) * embed(up, l, n) +
                 2.0 * embed(h, i, n) * embed(h, l, n);
            H -= 2.0 * s.rep.j() * s.rep.j() * DenseOp::Identity(total, total);
        }
    }
    const Eigen::MatrixXd Ld = L.dense();
    double worst = 0.0;
    for (int a = 0; a < s.size(); ++a) {
        const long long ia = tensor_index(s.configs[a], site.dim);
        for (int b = 0; b < s.size(); ++b) {
            const long long ib = tensor_index(s.configs[b], site.dim);
            worst = std::max(worst, std::abs(H(ia, ib) - Ld(a, b)));
        }
    }
    return worst;
}

/// Lifts single-site matrices to configuration space.
///
/// product: (S (x) ... (x) S)[x,y] = prod_i S[x_i,y_i]
/// coproduct: sum_i X[x_i,y_i] prod_{j != i} delta(x_j,y_j)
inline Eigen::MatrixXcd lift_product(const DenseOp& S, const SectorSpace& s) {
    Eigen::MatrixXcd out(s.size(), s.size());
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) {
            cplx v = 1.0;
            for (int i = 0; i < s.graph.n_vertices && v != 0.0; ++i)
                v *= S(s.configs[a][i], s.configs[b][i]);
            out(a, b) = v;
        }
    return out;
}

inline Eigen::MatrixXcd lift_coproduct(const DenseOp& X, const SectorSpace& s) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(s.size(), s.size());
    const int n = s.graph.n_vertices;
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b) {
            int differing = -1, count = 0;
            for (int i = 0; i < n; ++i)
                if (s.configs[a][i] != s.configs[b][i]) {
                    differing = i;
                    ++count;
                }
            if (count > 1) continue;
            if (count == 1) {
                out(a, b) = X(s.configs[a][differing], s.configs[b][differing]);
            } else {
                cplx acc = 0.0;
                for (int i = 0; i < n; ++i) acc += X(s.configs[a][i], s.configs[a][i]);
                out(a, b) = acc;
            }
        }
    return out;
}

/// max |[A, L]| over rows and columns whose total is <= interior_total.
inline double commutation_defect(const Eigen::MatrixXcd& A, const RateMatrix& L,
                                 int interior_total) {
    const Eigen::MatrixXcd Lc = L.dense().cast<cplx>();
    const Eigen::MatrixXcd C = A * Lc - Lc * A;
    const SectorSpace& s = *L.space;
    double worst = 0.0;
    for (int a = 0; a < s.size(); ++a) {
        if (config_total(s.configs[a]) > interior_total) continue;
        for (int b = 0; b < s.size(); ++b) {
            if (config_total(s.configs[b]) > interior_total) continue;
            worst = std::max(worst, std::abs(C(a, b)));
        }
    }
    return worst;
}

}  // namespace duality_lab
