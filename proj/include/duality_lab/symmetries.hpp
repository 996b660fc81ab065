#pragma once

// Ladder exponentials, the unitary symmetries S_{alpha,beta}, the factorised
// symmetries and the operator identities of the scalar-product section.

#include "duality_lab/dualities.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace duality_lab {

namespace detail {
// Raising exponential entry ratio along a diagonal: e^{cR}[x,x+n] =
// e^{cR}[x,x+n-1] * c * raise_factor(x,n) / n.
template <class Real>
Real raise_factor(const SiteRep& r, int x, int n) {
    switch (r.kind) {
        case Algebra::SU11: return Real(2) * Real(r.k) + Real(x + n - 1);
        case Algebra::SU2: return Real(r.two_j - x - n + 1);
        case Algebra::HEIS: return Real(1);
    }
    return Real(0);
}
}  // namespace detail

/// e^{c R} or e^{c L} from the closed single-path entries:
/// raising c^n (2k+x)_n/n!, c^n C(2j-x,n), c^n/n! (n = y-x); lowering
/// c^{x-y} C(x,y) for all three algebras.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> exp_ladder_t(Scalar c, Ladder which,
                                                                  const SiteRep& r, int dim) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (which == Ladder::Diag) throw domain_error("exp_ladder: use exp_diagonal for DIAG");
    if (r.kind == Algebra::SU2) dim = r.two_j + 1;
    Mat E = Mat::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        E(x, x) = Scalar(1);
        Scalar term = Scalar(1);
        if (which == Ladder::Raise) {
            for (int n = 1; x + n < dim; ++n) {
                term *= c * detail::raise_factor<Scalar>(r, x, n) / Scalar(n);
                E(x, x + n) = term;
            }
        } else {
            // c^{x-y} C(x,y), walking y down from x.
            for (int y = x - 1; y >= 0; --y) {
                term *= c * Scalar(y + 1) / Scalar(x - y);
                E(x, y) = term;
            }
        }
    }
    return E;
}

inline DenseOp exp_ladder(cplx c, Ladder which, const SiteSpace& space) {
    return exp_ladder_t<cplx>(c, which, space.rep, space.dim);
}

inline QuadMatrix exp_ladder_quad(quad c, Ladder which, const SiteRep& r, int dim) {
    return exp_ladder_t<quad>(c, which, r, dim);
}

/// exp(log_base * H) with H the diagonal generator: base^{x+k}, base^{x-j}
/// or base^x, principal branch through the supplied logarithm.
inline DenseOp exp_diagonal(cplx log_base, const SiteSpace& space) {
    DenseOp E = DenseOp::Zero(space.dim, space.dim);
    for (int x = 0; x < space.dim; ++x)
        E(x, x) = std::exp(log_base * (x + space.rep.diag_shift()));
    return E;
}

/// Principal logarithm of (p - 1) for p in (0,1).
inline cplx log_p_minus_one(double p) { return {std::log1p(-p), std::numbers::pi}; }

/// S_{alpha,beta} = exp(beta(-r R + l L)) exp(i alpha H) with (r, l) chosen so
/// that the exponent is skew-adjoint in L^2(w).
struct UnitaryCoefficients {
    double raise, lower;
};

inline UnitaryCoefficients unitary_coefficients(const SiteRep& r) {
    switch (r.kind) {
        case Algebra::SU11: return {1.0, 1.0 / r.p};
        case Algebra::SU2: return {1.0, (1.0 - r.p) / r.p};
        case Algebra::HEIS: return {r.p, 1.0};
    }
    return {0.0, 0.0};
}

inline constexpr double alpha_hat = std::numbers::pi;

inline double beta_hat(const SiteRep& r) {
    switch (r.kind) {
        case Algebra::SU11: return std::sqrt(r.p) * std::atanh(std::sqrt(r.p));
        case Algebra::SU2: {
            const double s = std::sqrt(r.p / (1.0 - r.p));
            return s * std::atan(s);
        }
        case Algebra::HEIS: return 1.0;
    }
    return 0.0;
}

/// A single-site operator stored in weighted-orthonormal coordinates,
/// S[x,y] = U[x,y] sqrt(w(y)/w(x)); this keeps large-occupation entries
/// representable.
struct Symmetry {
    SiteRep rep;
    int dim = 0;
    DenseOp ortho;
    std::vector<double> lw;

    cplx entry(int x, int y) const { return ortho(x, y) * std::exp(0.5 * (lw[y] - lw[x])); }

    DenseOp block(int last) const {
        const int n = std::min(last + 1, dim);
        DenseOp out(n, n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) out(x, y) = entry(x, y);
        return out;
    }
};

inline std::vector<double> log_weights(const SiteRep& r, int dim) {
    std::vector<double> lw(dim);
    for (int x = 0; x < dim; ++x) lw[x] = log_weight(r, x);
    return lw;
}

inline Symmetry unitary_symmetry(const SiteRep& r, double alpha, double beta, int dim) {
    const SiteSpace space(r, dim);
    const int n = space.dim;
    const auto lw = log_weights(r, n);
    const auto uc = unitary_coefficients(r);
    const DenseOp up = ladder(space, Ladder::Raise);
    const DenseOp dn = ladder(space, Ladder::Lower);
    // i * W^{1/2} beta(-r R + l L) W^{-1/2} is Hermitian.
    DenseOp H = DenseOp::Zero(n, n);
    for (int x = 0; x + 1 < n; ++x) {
        const double s = std::exp(0.5 * (lw[x] - lw[x + 1]));
        H(x, x + 1) = cplx(0.0, 1.0) * beta * (-uc.raise) * up(x, x + 1) * s;
        H(x + 1, x) = cplx(0.0, 1.0) * beta * uc.lower * dn(x + 1, x) / s;
    }
    H = 0.5 * (H + H.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<DenseOp> es(H);
    const Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXcd phase(n);
    for (int i = 0; i < n; ++i) phase(i) = std::exp(cplx(0.0, -lam(i)));
    DenseOp U = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    for (int y = 0; y < n; ++y) U.col(y) *= std::exp(cplx(0.0, alpha * (y + r.diag_shift())));
    return {r, n, U, lw};
}

/// max |U^H U - I| on the block {0..last}^2 (in the orthonormal frame, which
/// is S*S - I conjugated by W^{1/2}).
inline double unitarity_residual(const Symmetry& S, int last) {
    const DenseOp G = S.ortho.adjoint() * S.ortho;
    const int n = std::min(last + 1, S.dim);
    return (G.topLeftCorner(n, n) - DenseOp::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// max |S* S - I| with S* the L^2(w) adjoint, in the raw occupation basis.
inline double weighted_unitarity_defect(const Symmetry& S) {
    const DenseOp raw = S.block(S.dim - 1);
    const DenseOp G = adjoint_weighted(raw, S.rep) * raw;
    return (G - DenseOp::Identity(S.dim, S.dim)).cwiseAbs().maxCoeff();
}

/// max |U_N - U_M| on the block, in the orthonormal frame.
inline double leakage(const Symmetry& a, const Symmetry& b, int last) {
    const int n = std::min({last + 1, a.dim, b.dim});
    return (a.ortho.topLeftCorner(n, n) - b.ortho.topLeftCorner(n, n)).cwiseAbs().maxCoeff();
}

struct UnitarityReport {
    double defect = 0.0;          // max(unitarity residual, leakage) at N
    double defect_doubled = 0.0;  // the same at 2N (leakage against 4N)
    bool decreasing = true;
};

/// SIP/IRW: the truncated U is unitary by construction, so the measured
/// defect is the residual plus the change of the block under doubling.
inline UnitarityReport unitarity_under_doubling(const SiteRep& r, double alpha, double beta,
                                                int N, int last) {
    const Symmetry s1 = unitary_symmetry(r, alpha, beta, N + 1);
    const Symmetry s2 = unitary_symmetry(r, alpha, beta, 2 * N + 1);
    const Symmetry s4 = unitary_symmetry(r, alpha, beta, 4 * N + 1);
    UnitarityReport out;
    out.defect = std::max(unitarity_residual(s1, last), leakage(s1, s2, last));
    out.defect_doubled = std::max(unitarity_residual(s2, last), leakage(s2, s4, last));
    out.decreasing = out.defect_doubled <= std::max(out.defect, 1e-12);  // below 1e-12 both are rounding
    return out;
}

enum class Variable { X, Y };

/// D^{or} from S acting on the cheap duality: on y, S(D^ch(x,.))(y) =
/// S[y,x] d(x); on x, S(D^ch(.,y))(x) = S[x,y] d(y).
inline DenseOp apply_to_cheap(const Symmetry& S, int last, Variable var = Variable::Y) {
    const int n = std::min(last + 1, S.dim);
    DenseOp D(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            D(x, y) = (var == Variable::Y) ? S.entry(y, x) * cheap_diagonal(S.rep, x)
                                           : S.entry(x, y) * cheap_diagonal(S.rep, y);
    return D;
}

/// d(y) w(y), constant in y: (1-p)^{2k}, (1-p)^{2j}, e^{-p}.
inline double cheap_weight_constant(const SiteRep& r) {
    return to_double(detail::weight_normalisation(r));
}

/// Entry of a single-site duality in the orthonormal scale
/// sqrt(w(x) w(y)) / (d(y) w(y)), where the orthogonal families are O(1).
inline double orthonormal_scale(const SiteRep& r, int x, int y) {
    return std::exp(0.5 * (log_weight(r, x) + log_weight(r, y))) / cheap_weight_constant(r);
}

/// max over x,y <= last of |D(x,y) - c P(x,y)| in the orthonormal scale,
/// with P the orthogonal polynomial evaluated in quad.
inline double orthogonal_identification_residual(const DenseOp& D, const SiteRep& r, int last) {
    const cplx c = orthogonal_constant(r);
    const quad c0 = detail::weight_normalisation(r);
    double worst = 0.0;
    const int n = std::min<int>(last + 1, static_cast<int>(D.rows()));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const quad s = exp(quad(0.5) * (quad(log_weight(r, x)) + quad(log_weight(r, y)))) / c0;
            const double target = to_double(orthogonal_polynomial<quad>(r, x, y) * s);
            worst = std::max(worst, std::abs(D(x, y) * to_double(s) - c * target));
        }
    return worst;
}

/// Factorised symmetry Lo * Dg * Ra, stored as phase * (real quad matrix).
struct FactorizedSymmetry {
    SiteRep rep;
    cplx phase = 1.0;
    QuadMatrix real;  // block {0..last}^2

    cplx entry(int x, int y) const { return phase * to_double(real(x, y)); }
};

/// SIP: e^{K-} (p-1)^{K0} e^{p K+}; SEP: e^{J-} (1/(p-1))^{J0} e^{(p/(1-p)) J+};
/// IRW: e^{a} e^{-p/2 + i pi a a^dagger} e^{p a^dagger}. Every entry is a
/// finite sum over intermediate states z <= min(x,y), accumulated in quad.
/// `with_diagonal = false` drops the middle factor (negative control).
inline FactorizedSymmetry factorized_symmetry(const SiteRep& r, int last,
                                              bool with_diagonal = true) {
    const int n = r.bounded() ? r.two_j + 1 : last + 1;
    const quad p = r.p;
    quad raise_coef;
    FactorizedSymmetry out{r, 1.0, QuadMatrix::Zero(n, n)};
    std::vector<quad> mag(n, quad(1));
    std::vector<int> sign(n, 1);
    switch (r.kind) {
        case Algebra::SU11:
            raise_coef = p;
            if (with_diagonal) {
                out.phase = std::exp(cplx(0.0, std::numbers::pi * r.k));
                for (int z = 0; z < n; ++z) mag[z] = pow(1 - p, quad(z) + quad(r.k));
            }
            break;
        case Algebra::SU2:
            raise_coef = p / (1 - p);
            if (with_diagonal) {
                out.phase = std::exp(cplx(0.0, -std::numbers::pi * r.j()));
                for (int z = 0; z < n; ++z) mag[z] = pow(1 - p, -(quad(z) - quad(r.j())));
            }
            break;
        case Algebra::HEIS:
            raise_coef = p;
            if (with_diagonal)
                for (int z = 0; z < n; ++z) mag[z] = exp(-p / 2);
            break;
    }
    if (with_diagonal)
        for (int z = 0; z < n; ++z) sign[z] = (z % 2 == 0) ? 1 : -1;
    const QuadMatrix lo = exp_ladder_quad(quad(1), Ladder::Lower, r, n);
    const QuadMatrix ra = exp_ladder_quad(raise_coef, Ladder::Raise, r, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            quad acc = 0;
            for (int z = 0; z <= std::min(x, y); ++z) acc += lo(x, z) * quad(sign[z]) * mag[z] * ra(z, y);
            out.real(x, y) = acc;
        }
    return out;
}

/// max |F[x,y] sqrt(w(x)/w(y)) - U[x,y]| over the block: the factorised and
/// unitary operators compared in the orthonormal frame.
inline double factorized_vs_unitary(const FactorizedSymmetry& F, const Symmetry& S, int last) {
    const int n = std::min<int>({last + 1, static_cast<int>(F.real.rows()), S.dim});
    double worst = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const double s = std::exp(0.5 * (S.lw[x] - S.lw[y]));
            worst = std::max(worst, std::abs(F.entry(x, y) * s - S.ortho(x, y)));
        }
    return worst;
}

/// Factorised symmetry on the cheap duality (y-variable), orthonormal-scale
/// residual against the orthogonal family.
inline double factorized_on_cheap_residual(const FactorizedSymmetry& F, int last) {
    const int n = std::min<int>(last + 1, static_cast<int>(F.real.rows()));
    DenseOp D(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) D(x, y) = F.entry(y, x) * cheap_diagonal(F.rep, x);
    return orthogonal_identification_residual(D, F.rep, last);
}

/// Max |[S (x) ... (x) S, L]| over configurations in the space whose total is
/// at most interior_total.
inline double generator_commutation_defect(const DenseOp& S_single, const RateMatrix& L,
                                           int interior_total) {
    const SectorSpace& s = *L.space;
    if (S_single.rows() < s.max_occupancy() + 1)
        throw domain_error("generator_commutation_defect: single-site operator too small");
    return commutation_defect(lift_product(S_single, s), L, interior_total);
}

struct TruncatedIdentity {
    double defect = 0.0;  // at the larger truncation
    double change = 0.0;  // block change between N and 2N
    int block = 0;
    int truncation = 0;

    /// The block moved by less than a tenth of the tolerance under doubling.
    bool converged(double tol) const { return change < 0.1 * tol; }
};

namespace detail {
inline quad falling_q(int x, int y) {
    quad out = 1;
    for (int i = 0; i < y; ++i) out *= quad(x - i);
    return out;
}
inline quad binom_q(int x, int y) {
    if (y < 0 || y > x) return 0;
    quad out = 1;
    for (int i = 0; i < y; ++i) out = out * quad(x - i) / quad(i + 1);
    return out;
}
inline double max_mixed(const QuadMatrix& a, const QuadMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, mixed_relative(a(i, j), b(i, j)));
    return worst;
}
}  // namespace detail

/// The BCH identity e^{K-} e^{(p/(p-1))K+} = e^{-pK+} e^{K-/(1-p)} (1-p)^{-2K0}
/// multiplied on the left by e^{pK+}:
/// e^{pK+} e^{K-} e^{(p/(p-1))K+} = e^{K-/(1-p)} (1-p)^{-2K0}.
/// Only the first product has an infinite intermediate sum, with geometric
/// ratio p; it is truncated at N and certified by doubling.
/// `literal = true` evaluates e^{K-} e^{(p/(p-1))K+} against
/// e^{-pK+} e^{K-/(1-p)} (1-p)^{-2K0} directly; that intermediate sum has
/// ratio p/(1-p) and diverges for p >= 1/2.
inline TruncatedIdentity bch_defect(double p, double k, int N = 320, int block = 16,
                                    bool literal = false) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("bch_defect: p must lie in (0,1)");
    const SiteRep r = SiteRep::su11(k, p);
    const quad pq = p, q = pq / (pq - 1), c = 1 / (1 - pq);
    auto rhs_exact = [&](int B) {
        // e^{cK-} (1-p)^{-2K0}: C(x,u) c^{x-u} (1-p)^{-2(u+k)}
        QuadMatrix R = QuadMatrix::Zero(B + 1, B + 1);
        for (int x = 0; x <= B; ++x)
            for (int u = 0; u <= x; ++u)
                R(x, u) = detail::binom_q(x, u) * pow(c, x - u) * pow(1 - pq, -2 * (quad(u) + quad(k)));
        return R;
    };
    auto evaluate = [&](int M) {
        const QuadMatrix lo = exp_ladder_quad(quad(1), Ladder::Lower, r, M + 1);
        if (!literal) {
            const QuadMatrix up_p = exp_ladder_quad(pq, Ladder::Raise, r, M + 1);
            const QuadMatrix up_q = exp_ladder_quad(q, Ladder::Raise, r, block + 1);
            const QuadMatrix m1 = up_p.topRows(block + 1) * lo.leftCols(block + 1);
            return QuadMatrix(m1 * up_q);
        }
        // Literal right side e^{-pK+} e^{cK-} (1-p)^{-2K0}.
        const QuadMatrix up = exp_ladder_quad(-pq, Ladder::Raise, r, M + 1);
        const QuadMatrix lo_c = exp_ladder_quad(c, Ladder::Lower, r, M + 1);
        QuadMatrix m1 = up.topRows(block + 1) * lo_c.leftCols(block + 1);
        for (int u = 0; u <= block; ++u) m1.col(u) *= pow(1 - pq, -2 * (quad(u) + quad(k)));
        return m1;
    };
    TruncatedIdentity out;
    out.block = block;
    out.truncation = 2 * N;
    const QuadMatrix a = evaluate(N), b = evaluate(2 * N);
    QuadMatrix target;
    if (!literal) {
        target = rhs_exact(block);
    } else {
        const QuadMatrix lo = exp_ladder_quad(quad(1), Ladder::Lower, r, block + 1);
        const QuadMatrix up_q = exp_ladder_quad(q, Ladder::Raise, r, block + 1);
        target = lo * up_q;  // finite: intermediate z <= min(x,u)
    }
    out.change = detail::max_mixed(a, b);
    out.defect = detail::max_mixed(b, target);
    return out;
}

/// e^{(p/(p-1))K+} (p-1)^{K0} = (p-1)^{K0} e^{pK+}.
/// Raising and diagonal only, so every entry on {0..N-1} is exact.
inline double commutation_remark_defect(double p, double k, int N) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("commutation_remark_defect: p must lie in (0,1)");
    const SiteSpace space(SiteRep::su11(k, p), N);
    const DenseOp Dg = exp_diagonal(log_p_minus_one(p), space);
    const DenseOp lhs = exp_ladder(p / (p - 1.0), Ladder::Raise, space) * Dg;
    const DenseOp rhs = Dg * exp_ladder(p, Ladder::Raise, space);
    double worst = 0.0;
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) worst = std::max(worst, mixed_relative(lhs(x, y), rhs(x, y)));
    return worst;
}

/// (e^{alpha K-} D^ch_{1/lambda}(., y))(x) =
/// (e^{beta K+} D^ch_{1/lambda}(x, .))(y) with beta = alpha/lambda, where
/// D^ch_{1/lambda}(x,y) = x!/(2k)_x lambda^x delta_{x,y}.
inline double corollary_relation_defect(double alpha, double lambda, double k, int x_max) {
    if (lambda == 0.0) throw domain_error("corollary_relation_defect: lambda must be nonzero");
    const double beta = alpha / lambda;
    const SiteSpace space(SiteRep::su11(k, 0.5), x_max + 1);
    DenseOp cheap_l = DenseOp::Zero(space.dim, space.dim);
    double v = 1.0;
    for (int x = 0; x < space.dim; ++x) {
        cheap_l(x, x) = v;
        v *= (x + 1.0) * lambda / (2.0 * k + x);
    }
    const DenseOp lhs = exp_ladder(alpha, Ladder::Lower, space) * cheap_l;
    // Acting on the second variable: sum_z E[y,z] D(x,z) = (D E^T)(x,y).
    const DenseOp rhs = cheap_l * exp_ladder(beta, Ladder::Raise, space).transpose();
    double worst = 0.0;
    for (int x = 0; x < space.dim; ++x)
        for (int y = 0; y < space.dim; ++y) worst = std::max(worst, mixed_relative(lhs(x, y), rhs(x, y)));
    return worst;
}

struct S1S2Report {
    double s1_vs_orthogonal = 0.0;  // S1 D^ch = (p-1)^k M, exact finite sums
    TruncatedIdentity s1_vs_s2;     // e^{pK+} S1 D^ch = e^{pK+} S2 D^ch
};

/// S1 = e^{K-} e^{(p/(p-1))K+} (p-1)^{K0} and
/// S2 = e^{-pK+} e^{K-/(1-p)} (1-p)^{-2K0} (p-1)^{K0}, both on the cheap
/// duality D^ch_p in the x-variable. S2 is compared after multiplying by
/// e^{pK+}, which removes its divergent lowering-after-raising sum.
/// Phases e^{i pi k} are common to all terms and are factored out.
inline S1S2Report s1_s2_equivalence_defect(double p, double k, int N = 320, int block = 16) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("s1_s2_equivalence_defect: p must lie in (0,1)");
    const SiteRep r = SiteRep::su11(k, p);
    const quad pq = p, q = pq / (pq - 1), c = 1 / (1 - pq), one_m = 1 - pq;
    auto cheap_q = [&](int y) { return quad(cheap_diagonal(r, y)); };
    // Real part of S1 D^ch on rows 0..M, columns 0..block:
    // sum_{v <= min(x,y)} C(x,v) q^{y-v} (2k+v)_{y-v}/(y-v)! (-1)^y (1-p)^{y+k} d(y).
    auto s1_cheap = [&](int M) {
        const QuadMatrix lo = exp_ladder_quad(quad(1), Ladder::Lower, r, M + 1);
        const QuadMatrix up = exp_ladder_quad(q, Ladder::Raise, r, block + 1);
        QuadMatrix out = lo.leftCols(block + 1) * up;
        for (int y = 0; y <= block; ++y)
            out.col(y) *= quad((y % 2 == 0) ? 1 : -1) * pow(one_m, quad(y) + quad(k)) * cheap_q(y);
        return out;
    };
    S1S2Report rep;
    {
        const QuadMatrix s1 = s1_cheap(block);
        QuadMatrix target(block + 1, block + 1);
        for (int x = 0; x <= block; ++x)
            for (int y = 0; y <= block; ++y)
                target(x, y) = pow(one_m, quad(k)) * meixner<quad>(x, y, p, k);
        rep.s1_vs_orthogonal = detail::max_mixed(s1, target);
    }
    QuadMatrix rhs = QuadMatrix::Zero(block + 1, block + 1);
    for (int x = 0; x <= block; ++x)
        for (int y = 0; y <= x; ++y)
            rhs(x, y) = detail::binom_q(x, y) * pow(c, x - y) * pow(one_m, -2 * (quad(y) + quad(k))) *
                        quad((y % 2 == 0) ? 1 : -1) * pow(one_m, quad(y) + quad(k)) * cheap_q(y);
    auto lhs = [&](int M) {
        const QuadMatrix up_p = exp_ladder_quad(pq, Ladder::Raise, r, M + 1);
        return QuadMatrix(up_p.topRows(block + 1) * s1_cheap(M));
    };
    const QuadMatrix a = lhs(N), b = lhs(2 * N);
    rep.s1_vs_s2.block = block;
    rep.s1_vs_s2.truncation = 2 * N;
    rep.s1_vs_s2.change = detail::max_mixed(a, b);
    rep.s1_vs_s2.defect = detail::max_mixed(b, rhs);
    return rep;
}

}  // namespace duality_lab
