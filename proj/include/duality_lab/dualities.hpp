#pragma once

// Single-site duality functions, their product-form lift to sectors, the
// matrix duality defect and the scalar-product constructions.

#include "duality_lab/generators.hpp"
#include "duality_lab/specfun.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

namespace duality_lab {

enum class Family { Cheap, Classical, ClassicalLambda, Orthogonal };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Cheap: return "cheap";
        case Family::Classical: return "classical";
        case Family::ClassicalLambda: return "classical_lambda";
        case Family::Orthogonal: return "orthogonal";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "cheap") return Family::Cheap;
    if (s == "classical") return Family::Classical;
    if (s == "classical_lambda") return Family::ClassicalLambda;
    if (s == "orthogonal") return Family::Orthogonal;
    throw domain_error("unknown duality family '" + s + "'");
}

struct SingleSiteDuality {
    SiteRep rep;
    Family family = Family::Cheap;
    double lambda = 0.0;  // ClassicalLambda only
    std::function<cplx(int, int)> eval;

    cplx operator()(int x, int y) const { return eval(x, y); }
};

namespace detail {
// x!/(x-y)! as a falling product.
inline double falling(int x, int y) {
    double out = 1.0;
    for (int i = 0; i < y; ++i) out *= double(x - i);
    return out;
}

inline void require_site(const SiteRep& r, int x, int y) {
    if (x < 0 || y < 0) throw domain_error("duality: negative occupation");
    if (r.bounded() && (x > r.two_j || y > r.two_j))
        throw domain_error("duality: occupation exceeds 2j");
}
}  // namespace detail

/// d(x,x) of the cheap duality: 1/mu(x) up to a constant factor.
inline double cheap_diagonal(const SiteRep& r, int y) {
    const double p = r.p;
    switch (r.kind) {
        case Algebra::SU11: {
            // y! Gamma(2k) / Gamma(2k+y) p^-y
            double out = 1.0;
            for (int i = 0; i < y; ++i) out *= (i + 1.0) / ((2.0 * r.k + i) * p);
            return out;
        }
        case Algebra::SU2: {
            // (2j-y)! y! / (2j)! ((1-p)/p)^y
            double out = 1.0;
            for (int i = 0; i < y; ++i) out *= (i + 1.0) / double(r.two_j - i) * ((1.0 - p) / p);
            return out;
        }
        case Algebra::HEIS: {
            double out = 1.0;
            for (int i = 0; i < y; ++i) out *= (i + 1.0) / p;
            return out;
        }
    }
    return 0.0;
}

inline SingleSiteDuality cheap(const SiteRep& r) {
    return {r, Family::Cheap, 0.0, [r](int x, int y) -> cplx {
                detail::require_site(r, x, y);
                return x == y ? cplx(cheap_diagonal(r, y)) : cplx(0.0);
            }};
}

/// binom(x,y) times the cheap diagonal at y, i.e. e^{lowering} applied to
/// the cheap function: x!/(x-y)! Gamma(2k)/Gamma(2k+y) p^-y for SIP.
inline SingleSiteDuality classical(const SiteRep& r) {
    return {r, Family::Classical, 0.0, [r](int x, int y) -> cplx {
                detail::require_site(r, x, y);
                if (y > x) return 0.0;
                double c = detail::falling(x, y);
                for (int i = 2; i <= y; ++i) c /= i;
                return c * cheap_diagonal(r, y);
            }};
}

/// x! Gamma(2k) lambda^y / ((x-y)! Gamma(2k+y)) 1{y<=x}; lambda = 1/p gives
/// the classical SIP function.
inline SingleSiteDuality classical_lambda(const SiteRep& r, double lambda) {
    if (r.kind != Algebra::SU11) throw domain_error("classical_lambda: SIP only");
    if (lambda == 0.0) throw domain_error("classical_lambda: lambda must be nonzero");
    return {r, Family::ClassicalLambda, lambda, [r, lambda](int x, int y) -> cplx {
                detail::require_site(r, x, y);
                if (y > x) return 0.0;
                double out = detail::falling(x, y);
                for (int i = 0; i < y; ++i) out *= lambda / (2.0 * r.k + i);
                return out;
            }};
}

/// Constant in front of the orthogonal polynomial.
///
/// SIP: (p-1)^k = (1-p)^k e^{i pi k}. SEP: (1/(p-1))^{-j} on the principal
/// branch, i.e. (1-p)^j e^{-i pi j}; this is what both the unitary and the
/// factorised symmetry produce for half-integer j. IRW: e^{-p/2}.
inline cplx orthogonal_constant(const SiteRep& r) {
    using std::numbers::pi;
    switch (r.kind) {
        case Algebra::SU11: return std::pow(1.0 - r.p, r.k) * std::exp(cplx(0.0, pi * r.k));
        case Algebra::SU2:
            return std::pow(1.0 - r.p, r.j()) * std::exp(cplx(0.0, -pi * r.j()));
        case Algebra::HEIS: return std::exp(-0.5 * r.p);
    }
    return 0.0;
}

/// Meixner / Krawtchouk / Charlier polynomial for the representation.
template <class Real = double>
Real orthogonal_polynomial(const SiteRep& r, int x, int y) {
    switch (r.kind) {
        case Algebra::SU11: return meixner<Real>(x, y, r.p, r.k);
        case Algebra::SU2: return krawtchouk<Real>(x, y, r.p, r.two_j);
        case Algebra::HEIS: return charlier<Real>(x, y, r.p);
    }
    return Real(0);
}

inline SingleSiteDuality orthogonal(const SiteRep& r) {
    const cplx c = orthogonal_constant(r);
    return {r, Family::Orthogonal, 0.0, [r, c](int x, int y) -> cplx {
                detail::require_site(r, x, y);
                return c * to_double(orthogonal_polynomial<quad>(r, x, y));
            }};
}

inline SingleSiteDuality make_duality(const SiteRep& r, Family f, double lambda = 0.0) {
    switch (f) {
        case Family::Cheap: return cheap(r);
        case Family::Classical: return classical(r);
        case Family::ClassicalLambda: return classical_lambda(r, lambda);
        case Family::Orthogonal: return orthogonal(r);
    }
    throw domain_error("make_duality: unknown family");
}

/// D[x,y] = prod_i d(x_i, y_i).
inline Eigen::MatrixXcd duality_matrix(const SingleSiteDuality& d, const SectorSpace& sx,
                                       const SectorSpace& sy) {
    if (sx.graph.n_vertices != sy.graph.n_vertices)
        throw domain_error("duality_matrix: vertex counts differ");
    Eigen::MatrixXcd D(sx.size(), sy.size());
    for (int a = 0; a < sx.size(); ++a)
        for (int b = 0; b < sy.size(); ++b) {
            cplx v = 1.0;
            for (int i = 0; i < sx.graph.n_vertices && v != 0.0; ++i)
                v *= d(sx.configs[a][i], sy.configs[b][i]);
            D(a, b) = v;
        }
    return D;
}

/// max |L D - D L_dual^T|.
inline double duality_defect(const RateMatrix& L, const Eigen::MatrixXcd& D,
                             const RateMatrix& L_dual) {
    if (L.L.rows() != D.rows() || L_dual.L.rows() != D.cols())
        throw domain_error("duality_defect: dimension mismatch");
    if (D.size() == 0) return 0.0;
    const Eigen::MatrixXcd Lx = L.dense().cast<cplx>();
    const Eigen::MatrixXcd Ly = L_dual.dense().cast<cplx>();
    return (Lx * D - D * Ly.transpose()).cwiseAbs().maxCoeff();
}

/// The defect divided by max(1, max|L| max|D|), the size of the terms that
/// cancel in L D.
inline double duality_defect_scaled(const RateMatrix& L, const Eigen::MatrixXcd& D,
                                    const RateMatrix& L_dual) {
    const double raw = duality_defect(L, D, L_dual);
    if (D.size() == 0) return raw;
    const double lmax =
        std::max(L.dense().cwiseAbs().maxCoeff(), L_dual.dense().cwiseAbs().maxCoeff());
    return raw / std::max(1.0, lmax * D.cwiseAbs().maxCoeff());
}

/// prod_i b^{x_i} c^{y_i} D[x,y].
inline Eigen::MatrixXcd equivalence_rescale(const Eigen::MatrixXcd& D, const SectorSpace& sx,
                                            const SectorSpace& sy, double c, double b) {
    if (c == 0.0 || b == 0.0) throw domain_error("equivalence_rescale: zero factor");
    Eigen::MatrixXcd out = D;
    for (int a = 0; a < sx.size(); ++a)
        for (int e = 0; e < sy.size(); ++e)
            out(a, e) *= std::pow(b, config_total(sx.configs[a])) *
                         std::pow(c, config_total(sy.configs[e]));
    return out;
}

struct ScalarProduct {
    cplx value = 0.0;
    double tail_bound = 0.0;
    int terms = 0;
    bool converged = true;
};

/// sum_z f(z) g(z) mu(z) for z in [0, support_max] when the support is
/// finite (support_max >= 0); otherwise the cutoff doubles from n0 until the
/// tail estimate |t_N| r / (1 - r), r the largest ratio over the last
/// quarter of terms, drops below tol.
template <class F, class G, class M>
ScalarProduct scalar_product(F&& f, G&& g, M&& mu, int support_max, double tol = 1e-14,
                             int n0 = 64, int n_max = 1 << 14) {
    ScalarProduct out;
    if (support_max >= 0) {
        quad re = 0, im = 0;
        for (int z = 0; z <= support_max; ++z) {
            const cplx t = cplx(f(z)) * cplx(g(z)) * cplx(mu(z));
            re += quad(t.real());
            im += quad(t.imag());
        }
        out.value = {to_double(re), to_double(im)};
        out.terms = support_max + 1;
        return out;
    }
    for (int N = n0; N <= n_max; N *= 2) {
        std::vector<cplx> terms(N + 1);
        quad re = 0, im = 0;
        for (int z = 0; z <= N; ++z) {
            terms[z] = cplx(f(z)) * cplx(g(z)) * cplx(mu(z));
            re += quad(terms[z].real());
            im += quad(terms[z].imag());
        }
        double r = 0.0;
        for (int z = N - N / 4; z <= N; ++z)
            if (std::abs(terms[z - 1]) > 0) r = std::max(r, std::abs(terms[z]) / std::abs(terms[z - 1]));
        out.value = {to_double(re), to_double(im)};
        out.terms = N + 1;
        out.tail_bound = (r < 1.0) ? std::abs(terms[N]) * r / (1.0 - r)
                                   : std::numeric_limits<double>::infinity();
        if (std::abs(terms[N]) == 0.0) out.tail_bound = 0.0;
        out.converged = out.tail_bound < tol;
        if (out.converged) return out;
    }
    return out;
}

/// (x, y) -> <d1(x, .), d2(y, .)>_mu.
template <class D1, class D2, class M>
std::function<ScalarProduct(int, int)> scalar_product_duality(D1 d1, D2 d2, M mu,
                                                             bool finite_support,
                                                             double tol = 1e-14) {
    return [=](int x, int y) {
        const int support = finite_support ? std::min(x, y) : -1;
        return scalar_product([&](int z) { return d1(x, z); }, [&](int z) { return d2(y, z); },
                              mu, support, tol);
    };
}

/// Biorthogonality of the negative-parameter classical functions: max over
/// x,n <= x_max of
/// |<D^cl_{-p}(x,.), D^cl_{-q}(.,n)>_{mu_p} - delta_{x,n} / mu_q(x)|,
/// with D^cl_{-p} = classical_lambda(-1/p). Every sum is finite and is
/// accumulated in quad; the residual is relative to max(1, 1/mu_q(x)).
inline double biorthogonality_defect(double p, double q, double k, int x_max) {
    if (p == 0.0 || q == 0.0) throw domain_error("biorthogonality_defect: p, q must be nonzero");
    if (!(k > 0.0)) throw domain_error("biorthogonality_defect: k must be positive");
    auto cl = [k](int x, int y, quad lambda) -> quad {
        if (y > x) return 0;
        quad out = 1;
        for (int i = 0; i < y; ++i) out *= quad(x - i) * lambda / (quad(2) * quad(k) + quad(i));
        return out;
    };
    auto mu = [k](quad pp, int z) {
        quad out = 1;
        for (int i = 0; i < z; ++i) out *= (quad(2) * quad(k) + quad(i)) / quad(i + 1) * pp;
        return out;
    };
    const quad lp = quad(-1) / quad(p), lq = quad(-1) / quad(q);
    double worst = 0.0;
    for (int x = 0; x <= x_max; ++x)
        for (int n = 0; n <= x_max; ++n) {
            quad acc = 0;
            for (int z = n; z <= x; ++z) acc += cl(x, z, lp) * cl(z, n, lq) * mu(quad(p), z);
            const quad target = (x == n) ? quad(1) / mu(quad(q), x) : quad(0);
            worst = std::max(worst, mixed_relative(acc, target));
        }
    return worst;
}

struct BiorthogonalPair {
    double biorthogonality = 0.0;  // relative to the diagonal norm
    double reduction = 0.0;        // D~ = Z D and D = polynomial at the special q
    double change = 0.0;           // biorthogonality change under doubling
    int truncation = 0;
};

namespace detail {
// The biorthogonal pair D(x,n) and D~(x,n) = base^{n+x} scale D(x,n).
struct BiorthogonalKernel {
    SiteRep rep;
    quad q, base, scale;

    BiorthogonalKernel(const SiteRep& r, double q_in) : rep(r), q(q_in) {
        const quad p = r.p;
        switch (r.kind) {
            case Algebra::SU11:
                base = -q / (p * (1 - q));
                scale = pow(1 - q, -2 * quad(r.k));
                break;
            case Algebra::SU2:
                base = q * (p - 1) / p;
                scale = pow(1 - q, -quad(r.two_j));
                break;
            case Algebra::HEIS:
                base = -q / p;
                scale = exp(q);
                break;
        }
    }
    quad D(int x, int n) const {
        switch (rep.kind) {
            case Algebra::SU11: return hyp2f1_term<quad>(x, n, 2 * quad(rep.k), 1 / q);
            case Algebra::SU2: return hyp2f1_term<quad>(x, n, quad(-rep.two_j), (q - 1) / q);
            case Algebra::HEIS: return hyp2f0_term<quad>(x, n, 1 / q);
        }
        return 0;
    }
    quad Dt(int x, int n) const { return pow(base, n + x) * scale * D(x, n); }
};

// Z with w = Z mu: (1-p)^{2k}, (1-p)^{2j}, e^{-p}.
inline quad weight_normalisation(const SiteRep& r) {
    switch (r.kind) {
        case Algebra::SU11: return pow(1 - quad(r.p), 2 * quad(r.k));
        case Algebra::SU2: return pow(1 - quad(r.p), quad(r.two_j));
        case Algebra::HEIS: return exp(-quad(r.p));
    }
    return 1;
}
// w(0..top) = Z mu(0..top) by the ratio recurrence, all in quad; the
// biorthogonality sums cancel by many orders of magnitude, so rounding the
// weights to double is not an option.
inline std::vector<quad> weights_q(const SiteRep& r, int top) {
    std::vector<quad> w(top + 1);
    w[0] = weight_normalisation(r);
    const quad p = r.p;
    for (int x = 0; x < top; ++x) {
        quad ratio = 1;
        switch (r.kind) {
            case Algebra::SU11: ratio = (2 * quad(r.k) + x) / (x + 1) * p; break;
            case Algebra::SU2: ratio = quad(r.two_j - x) / (x + 1) * p / (1 - p); break;
            case Algebra::HEIS: ratio = p / (x + 1); break;
        }
        w[x + 1] = w[x] * ratio;
    }
    return w;
}
}  // namespace detail

/// Biorthogonal hypergeometric pairs for SIP/SEP/IRW.
///
/// SIP: D = 2F1(-x,-n;2k;1/q), D~ = (-q/(p(1-q)))^{n+x} (1-q)^{-2k} D.
/// SEP: D = 2F1(-x,-n;-2j;(q-1)/q), D~ = (q(p-1)/p)^{n+x} (1-q)^{-2j} D.
/// IRW: D = 2F0(-x,-n;-;1/q), D~ = (-q/p)^{n+x} e^q D.
/// Biorthogonality: sum_x D(x,m) D~(x,n) w(x) = delta_{mn} Z / mu(m) with
/// w = Z mu. Reduction: at 1/q = 1 - 1/p (q = -p for IRW) D is the
/// orthogonal polynomial and D~ = Z D.
inline BiorthogonalPair biorthogonal_pair_defect(const SiteRep& r, double q, int x_max,
                                                 int truncation = 300) {
    const detail::BiorthogonalKernel ker(r, q);
    const quad Z = detail::weight_normalisation(r);
    const int mmax = r.bounded() ? std::min(x_max, r.two_j) : x_max;

    auto run = [&](int N) {
        const int top = r.bounded() ? r.two_j : N;
        const std::vector<quad> w = detail::weights_q(r, top);
        double worst = 0.0;
        for (int m = 0; m <= mmax; ++m)
            for (int n = 0; n <= mmax; ++n) {
                quad acc = 0;
                for (int x = 0; x <= top; ++x) acc += ker.D(x, m) * ker.Dt(x, n) * w[x];
                const quad norm = Z * Z / w[m];  // Z / mu(m)
                const quad target = (m == n) ? norm : quad(0);
                worst = std::max(worst, to_double(abs(acc - target) / norm));
            }
        return worst;
    };

    BiorthogonalPair out;
    const double a = run(truncation);
    if (r.bounded()) {
        out.biorthogonality = a;
        out.truncation = r.two_j;
    } else {
        const double b = run(2 * truncation);
        out.biorthogonality = b;
        out.change = std::abs(a - b);
        out.truncation = 2 * truncation;
    }

    const double q_special = (r.kind == Algebra::HEIS) ? -r.p : r.p / (r.p - 1.0);
    const detail::BiorthogonalKernel special(r, q_special);
    double worst = 0.0;
    for (int x = 0; x <= mmax; ++x)
        for (int n = 0; n <= mmax; ++n) {
            const quad poly = orthogonal_polynomial<quad>(r, x, n);
            worst = std::max({worst, mixed_relative(special.D(x, n), poly),
                              mixed_relative(special.Dt(x, n), Z * special.D(x, n))});
        }
    out.reduction = worst;
    return out;
}

struct OrthogonalityReport {
    double defect = 0.0;  // relative to sqrt(norm(y) norm(y'))
    double change = 0.0;  // under doubling of the x-sum cutoff
    int truncation = 0;
};

/// sum_x d(x,y) conj(d(x,y')) w(x) = delta_{y,y'} ||D^ch(.,y)||^2_w for the
/// orthogonal family, y,y' <= y_max. ||D^ch(.,y)||^2_w = d(y)^2 w(y) = Z d(y)
/// with d the cheap diagonal. The x-sum is exact for SEP and cut at N, 2N
/// otherwise.
inline OrthogonalityReport orthogonality_defect(const SiteRep& r, int y_max, int N = 200) {
    if (r.bounded()) y_max = std::min(y_max, r.two_j);
    const cplx c = orthogonal_constant(r);
    const quad c2 = quad(std::norm(c));
    const quad Z = detail::weight_normalisation(r);
    auto run = [&](int top) {
        const std::vector<quad> w = detail::weights_q(r, top);
        double worst = 0.0;
        for (int y = 0; y <= y_max; ++y)
            for (int yp = 0; yp <= y_max; ++yp) {
                quad acc = 0;
                for (int x = 0; x <= top; ++x)
                    acc += orthogonal_polynomial<quad>(r, x, y) * orthogonal_polynomial<quad>(r, x, yp) * w[x];
                acc *= c2;
                const quad ny = Z * quad(cheap_diagonal(r, y)), nyp = Z * quad(cheap_diagonal(r, yp));
                const quad target = (y == yp) ? ny : quad(0);
                worst = std::max(worst, to_double(abs(acc - target) / sqrt(ny * nyp)));
            }
        return worst;
    };
    OrthogonalityReport out;
    if (r.bounded()) {
        out.defect = run(r.two_j);
        out.truncation = r.two_j;
        return out;
    }
    const double a = run(N);
    out.defect = run(2 * N);
    out.change = std::abs(a - out.defect);
    out.truncation = 2 * N;
    return out;
}

}  // namespace duality_lab
