#pragma once

// Single-site ladder representations of su(1,1), su(2) and the Heisenberg
// algebra on occupation bases, with the convention (A f)(x) = sum_y A[x,y] f(y).

#include "duality_lab/precision.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace duality_lab {

enum class Algebra { SU11, SU2, HEIS };

inline const char* process_name(Algebra a) {
    switch (a) {
        case Algebra::SU11: return "SIP";
        case Algebra::SU2: return "SEP";
        case Algebra::HEIS: return "IRW";
    }
    return "?";
}

struct SiteRep {
    Algebra kind = Algebra::SU11;
    double k = 0.0;  // SU11 only
    int two_j = 0;   // SU2 only
    double p = 0.5;

    static SiteRep su11(double k, double p) {
        if (!(k > 0.0)) throw domain_error("su11: k must be positive");
        if (!(p > 0.0 && p < 1.0)) throw domain_error("su11: p must lie in (0,1)");
        return {Algebra::SU11, k, 0, p};
    }
    static SiteRep su2(int two_j, double p) {
        if (two_j < 1) throw domain_error("su2: 2j must be a positive integer");
        if (!(p > 0.0 && p < 1.0)) throw domain_error("su2: p must lie in (0,1)");
        return {Algebra::SU2, 0.0, two_j, p};
    }
    static SiteRep heisenberg(double p) {
        if (!(p > 0.0)) throw domain_error("heisenberg: p must be positive");
        return {Algebra::HEIS, 0.0, 0, p};
    }

    double j() const { return 0.5 * two_j; }
    bool bounded() const { return kind == Algebra::SU2; }
    int max_occupation() const {
        return bounded() ? two_j : std::numeric_limits<int>::max();
    }
    bool admissible(int x) const { return x >= 0 && x <= max_occupation(); }
    // Coefficient on the diagonal generator: x + shift.
    double diag_shift() const {
        switch (kind) {
            case Algebra::SU11: return k;
            case Algebra::SU2: return -j();
            case Algebra::HEIS: return 0.0;
        }
        return 0.0;
    }
    std::string label() const {
        std::string s = process_name(kind);
        if (kind == Algebra::SU11) s += "(2k=" + std::to_string(2.0 * k) + ")";
        if (kind == Algebra::SU2) s += "(2j=" + std::to_string(two_j) + ")";
        return s;
    }
};

struct SiteSpace {
    SiteRep rep;
    int dim = 1;

    SiteSpace(const SiteRep& r, int requested_dim) : rep(r), dim(requested_dim) {
        if (rep.kind == Algebra::SU2) dim = rep.two_j + 1;
        if (dim < 1) throw domain_error("SiteSpace: dim must be >= 1");
    }
    static SiteSpace truncated(const SiteRep& r, int max_occupation) {
        return SiteSpace(r, max_occupation + 1);
    }
};

using DenseOp = Eigen::MatrixXcd;

enum class Ladder { Raise, Lower, Diag };

/// K^+/K^-/K^0, J^+/J^-/J^0 or a^dagger/a/(a a^dagger).
///
/// With (a f)(x) = x f(x-1) and (a^dagger f)(x) = f(x+1) the product a a^dagger
/// acts as f(x) -> x f(x), so the Heisenberg DIAG is diag(0,1,2,...).
inline DenseOp ladder(const SiteSpace& space, Ladder which) {
    const int n = space.dim;
    const SiteRep& r = space.rep;
    DenseOp A = DenseOp::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        switch (which) {
            case Ladder::Raise:
                if (x + 1 < n) {
                    double c = 1.0;
                    if (r.kind == Algebra::SU11) c = 2.0 * r.k + x;
                    if (r.kind == Algebra::SU2) c = r.two_j - x;
                    A(x, x + 1) = c;
                }
                break;
            case Ladder::Lower:
                if (x >= 1) A(x, x - 1) = double(x);
                break;
            case Ladder::Diag:
                A(x, x) = x + r.diag_shift();
                break;
        }
    }
    return A;
}

/// Normalised reversible single-site weight, in log form.
inline double log_weight(const SiteRep& r, int x) {
    if (x < 0) throw domain_error("weight: negative occupation");
    double acc = 0.0;
    switch (r.kind) {
        case Algebra::SU11:
            for (int i = 0; i < x; ++i) acc += std::log((2.0 * r.k + i) / (i + 1.0));
            return acc + x * std::log(r.p) + 2.0 * r.k * std::log1p(-r.p);
        case Algebra::SU2:
            if (x > r.two_j) throw domain_error("weight: occupation exceeds 2j");
            for (int i = 0; i < x; ++i) acc += std::log(double(r.two_j - i) / (i + 1.0));
            return acc + x * std::log(r.p / (1.0 - r.p)) + r.two_j * std::log1p(-r.p);
        case Algebra::HEIS:
            for (int i = 0; i < x; ++i) acc -= std::log(i + 1.0);
            return acc + x * std::log(r.p) - r.p;
    }
    return acc;
}

inline double weight(const SiteRep& r, int x) { return std::exp(log_weight(r, x)); }

/// Gamma(2k+x)/(Gamma(2k) x!) p^x for any real p.
inline double mu_unnormalized(double k, double p, int x) {
    if (x < 0) throw domain_error("mu_unnormalized: negative occupation");
    double out = 1.0;
    for (int i = 0; i < x; ++i) out *= (2.0 * k + i) / (i + 1.0) * p;
    return out;
}

/// A*[x,y] = conj(A[y,x]) w(y)/w(x), the adjoint in L^2(w).
inline DenseOp adjoint_weighted(const DenseOp& A, const SiteRep& r) {
    const int n = static_cast<int>(A.rows());
    std::vector<double> lw(n);
    for (int x = 0; x < n; ++x) lw[x] = log_weight(r, x);
    DenseOp out(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out(x, y) = std::conj(A(y, x)) * std::exp(lw[y] - lw[x]);
    return out;
}

inline DenseOp commutator(const DenseOp& a, const DenseOp& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw domain_error("commutator: dimension mismatch");
    return a * b - b * a;
}

/// 2(K0)^2 - K+K- - K-K+ (su(1,1)) or 2(J0)^2 + J+J- + J-J+ (su(2)).
inline DenseOp casimir(const SiteSpace& space) {
    const DenseOp up = ladder(space, Ladder::Raise);
    const DenseOp dn = ladder(space, Ladder::Lower);
    const DenseOp h = ladder(space, Ladder::Diag);
    switch (space.rep.kind) {
        case Algebra::SU11: return 2.0 * h * h - up * dn - dn * up;
        case Algebra::SU2: return 2.0 * h * h + up * dn + dn * up;
        case Algebra::HEIS: break;
    }
    throw domain_error("casimir: the Heisenberg algebra has no Casimir element");
}

/// Max |A[x,y]| over the leading block {0..last}^2.
inline double block_max_abs(const DenseOp& A, int last) {
    const int n = std::min<int>(last + 1, static_cast<int>(A.rows()));
    if (n <= 0) return 0.0;
    return A.topLeftCorner(n, n).cwiseAbs().maxCoeff();
}

inline constexpr long long kTensorDimLimit = 2048;

/// I (x) ... (x) op (x) ... (x) I with op at `site`; site 0 is the slowest index.
inline DenseOp embed(const DenseOp& op, int site, int n_sites) {
    if (site < 0 || site >= n_sites) throw domain_error("embed: site out of range");
    const long long d = op.rows();
    long long total = 1;
    for (int i = 0; i < n_sites; ++i) {
        total *= d;
        if (total > kTensorDimLimit) throw domain_error("embed: tensor dimension exceeds limit");
    }
    DenseOp out = DenseOp::Identity(1, 1);
    for (int i = 0; i < n_sites; ++i) {
        const DenseOp factor = (i == site) ? op : DenseOp(DenseOp::Identity(d, d));
        DenseOp next = Eigen::kroneckerProduct(out, factor).eval();
        out.swap(next);
    }
    return out;
}

/// Delta^n(X) = sum_i X_i.
inline DenseOp coproduct(const DenseOp& op, int n_sites) {
    DenseOp out = embed(op, 0, n_sites);
    for (int i = 1; i < n_sites; ++i) out += embed(op, i, n_sites);
    return out;
}

}  // namespace duality_lab
