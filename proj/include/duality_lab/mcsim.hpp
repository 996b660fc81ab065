#pragma once

// Exact-jump (Gillespie) simulation and the Monte-Carlo duality estimator.

#include "duality_lab/dualities.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <thread>
#include <vector>

namespace duality_lab {

struct JumpEvent {
    double time;
    int from_site;
    int to_site;
};

struct Trajectory {
    Config initial;
    std::vector<JumpEvent> events;
    double final_time = 0.0;
    Config final_state;
};

/// Independent engine for trajectory `index` under `seed`; the stream does
/// not depend on which worker runs it.
inline std::mt19937_64 trajectory_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x5eedu};
    return std::mt19937_64(seq);
}

inline void require_admissible(const SiteRep& r, const Graph& g, const Config& c) {
    if (static_cast<int>(c.size()) != g.n_vertices)
        throw domain_error("configuration length does not match the graph");
    for (int v : c)
        if (!r.admissible(v)) throw domain_error("configuration violates the site capacity");
}

/// Runs the chain to time t. When `record` is set every jump is appended to
/// the returned trajectory.
template <class Engine>
Trajectory simulate_path(const SiteRep& r, const Graph& g, const Config& initial, double t,
                         Engine& eng, bool record = false) {
    if (!(t >= 0.0)) throw domain_error("simulate: t must be nonnegative");
    require_admissible(r, g, initial);
    Trajectory out{initial, {}, t, initial};
    Config& x = out.final_state;
    const int total = config_total(x);
    std::vector<double> rates;
    std::vector<std::pair<int, int>> moves;
    rates.reserve(2 * g.edges.size());
    moves.reserve(2 * g.edges.size());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double now = 0.0;
    while (true) {
        rates.clear();
        moves.clear();
        double exit = 0.0;
        for (auto [i, l] : g.edges) {
            for (auto [a, b] : {std::pair{i, l}, std::pair{l, i}}) {
                if (x[a] == 0) continue;
                const double rate = jump_rate(r, x[a], x[b]);
                if (rate <= 0.0) continue;
                rates.push_back(rate);
                moves.emplace_back(a, b);
                exit += rate;
            }
        }
        if (exit <= 0.0) break;  // absorbing
        now += -std::log1p(-unif(eng)) / exit;
        if (now > t) break;
        double u = unif(eng) * exit;
        std::size_t pick = 0;
        while (pick + 1 < rates.size() && u >= rates[pick]) u -= rates[pick++];
        const auto [from, to] = moves[pick];
        --x[from];
        ++x[to];
        if (config_total(x) != total || !r.admissible(x[to]))
            throw std::logic_error("simulate: jump broke conservation or capacity");
        if (record) out.events.push_back({now, from, to});
    }
    return out;
}

inline Config simulate(const SiteRep& r, const Graph& g, const Config& initial, double t,
                       std::uint64_t seed) {
    auto eng = trajectory_engine(seed, 0);
    return simulate_path(r, g, initial, t, eng).final_state;
}

struct DualityEstimate {
    cplx lhs_mean, rhs_mean;
    cplx lhs_stderr, rhs_stderr;  // real and imaginary parts separately
    long n_samples = 0;
    double t = 0.0;

    cplx gap() const { return lhs_mean - rhs_mean; }
    /// |gap| / combined standard error, the larger of the real and imaginary parts.
    double z_score() const {
        auto part = [](double g, double s) {
            if (s == 0.0) return g == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            return std::abs(g) / s;
        };
        return std::max(part(gap().real(), lhs_stderr.real() + rhs_stderr.real()),
                        part(gap().imag(), lhs_stderr.imag() + rhs_stderr.imag()));
    }
};

inline cplx product_duality(const SingleSiteDuality& d, const Config& x, const Config& y) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < x.size() && v != 0.0; ++i) v *= d(x[i], y[i]);
    return v;
}

namespace detail {
struct Moments {
    cplx mean, stderr_;
};

inline Moments moments(const std::vector<cplx>& v) {
    const double n = static_cast<double>(v.size());
    double sr = 0, si = 0;
    for (const cplx& z : v) {
        sr += z.real();
        si += z.imag();
    }
    const double mr = sr / n, mi = si / n;
    double vr = 0, vi = 0;
    for (const cplx& z : v) {
        vr += (z.real() - mr) * (z.real() - mr);
        vi += (z.imag() - mi) * (z.imag() - mi);
    }
    const double denom = n > 1 ? n - 1 : 1;
    return {{mr, mi}, {std::sqrt(vr / denom / n), std::sqrt(vi / denom / n)}};
}

// Fills out[i] = f(i) for i in [0, n) on up to `jobs` threads.
template <class F>
void parallel_fill(std::vector<cplx>& out, long n, int jobs, F f) {
    out.assign(n, cplx(0.0));
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max(1L, n))));
    if (jobs == 1) {
        for (long i = 0; i < n; ++i) out[i] = f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += jobs) out[i] = f(i);
        });
    for (auto& th : pool) th.join();
}
}  // namespace detail

/// E_x[D(X_t, y)] from trajectories 0..n-1 and E_y[D(x, Y_t)] from the
/// independent trajectories n..2n-1 of the same seed.
inline DualityEstimate mc_duality_gap(const SiteRep& r, const Graph& g, const Config& x,
                                      const Config& y, const SingleSiteDuality& d, double t,
                                      long n_samples, std::uint64_t seed, int jobs = 1) {
    if (n_samples < 2) throw domain_error("mc_duality_gap: need at least two samples");
    require_admissible(r, g, x);
    require_admissible(r, g, y);
    std::vector<cplx> lhs, rhs;
    detail::parallel_fill(lhs, n_samples, jobs, [&](long i) {
        auto eng = trajectory_engine(seed, static_cast<std::uint64_t>(i));
        return product_duality(d, simulate_path(r, g, x, t, eng).final_state, y);
    });
    detail::parallel_fill(rhs, n_samples, jobs, [&](long i) {
        auto eng = trajectory_engine(seed, static_cast<std::uint64_t>(n_samples + i));
        return product_duality(d, x, simulate_path(r, g, y, t, eng).final_state);
    });
    const auto a = detail::moments(lhs), b = detail::moments(rhs);
    return {a.mean, b.mean, a.stderr_, b.stderr_, n_samples, t};
}

struct ExactSemigroup {
    cplx lhs, rhs;
};

/// (e^{tL} D)(x,y) and (e^{tL} D^T)(y,x) from the sector generators.
inline ExactSemigroup exact_duality_sides(const SiteRep& r, const Graph& g, const Config& x,
                                          const Config& y, const SingleSiteDuality& d, double t) {
    const auto sx = std::make_shared<const SectorSpace>(enumerate_sector(g, r, config_total(x)));
    const auto sy = std::make_shared<const SectorSpace>(enumerate_sector(g, r, config_total(y)));
    const Eigen::MatrixXd Px = (t * build_generator(sx).dense()).exp();
    const Eigen::MatrixXd Py = (t * build_generator(sy).dense()).exp();
    const Eigen::MatrixXcd D = duality_matrix(d, *sx, *sy);
    const int ix = sx->find(x), iy = sy->find(y);
    const cplx lhs = (Px.row(ix).cast<cplx>() * D.col(iy))(0, 0);
    const cplx rhs = (Py.row(iy).cast<cplx>() * D.row(ix).transpose())(0, 0);
    return {lhs, rhs};
}

/// CSV with header sample_index,event_time,from_site,to_site.
inline void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& paths) {
    out << "sample_index,event_time,from_site,to_site\n";
    out.precision(17);
    for (std::size_t s = 0; s < paths.size(); ++s)
        for (const auto& e : paths[s].events)
            out << s << ',' << e.time << ',' << e.from_site << ',' << e.to_site << '\n';
}

struct OccupationTest {
    double chi_square = 0.0;
    double critical = 0.0;  // 99% quantile
    long samples = 0;
    long events = 0;
};

/// Samples one long trajectory every `dt` time units until `min_events`
/// jumps have happened and compares the visit counts with the product
/// measure restricted to the sector.
inline OccupationTest occupation_chi_square(const SiteRep& r, const Graph& g, const Config& start,
                                            double dt, long min_events, std::uint64_t seed) {
    const SectorSpace s = enumerate_sector(g, r, config_total(start));
    std::vector<double> pi(s.size());
    double z = 0.0;
    for (int a = 0; a < s.size(); ++a) z += (pi[a] = std::exp(product_log_weight(r, s.configs[a])));
    for (double& v : pi) v /= z;
    std::vector<long> counts(s.size(), 0);
    auto eng = trajectory_engine(seed, 0);
    Config x = start;
    OccupationTest out;
    while (out.events < min_events) {
        const Trajectory seg = simulate_path(r, g, x, dt, eng, true);
        out.events += static_cast<long>(seg.events.size());
        x = seg.final_state;
        ++counts[s.find(x)];
        ++out.samples;
    }
    for (int a = 0; a < s.size(); ++a) {
        const double e = pi[a] * out.samples;
        out.chi_square += (counts[a] - e) * (counts[a] - e) / e;
    }
    boost::math::chi_squared dist(s.size() - 1);
    out.critical = boost::math::quantile(dist, 0.99);
    return out;
}

}  // namespace duality_lab
