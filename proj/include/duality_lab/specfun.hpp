#pragma once

// Terminating hypergeometric sums and the discrete orthogonal polynomials
// built from them. Every sum is a forward recurrence on the term ratio, so
// nothing goes through factorials or gamma ratios.

#include "duality_lab/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace duality_lab {

template <class Real = double>
Real pochhammer(Real a, int n) {
    if (n < 0) throw domain_error("pochhammer: negative n");
    Real out = 1;
    for (int i = 0; i < n; ++i) out *= a + Real(i);
    return out;
}

/// Sum_{s=0}^{min(m,n)} (-m)_s (-n)_s / (c)_s z^s / s!.
template <class Real = double>
Real hyp2f1_term(int m, int n, Real c, Real z) {
    if (m < 0 || n < 0) throw domain_error("hyp2f1_term: negative index");
    const int top = std::min(m, n);
    Real term = 1;
    Real sum = 1;
    for (int s = 0; s < top; ++s) {
        const Real den = c + Real(s);
        if (den == 0)
            throw domain_error("hyp2f1_term: (c)_s vanishes before the sum terminates");
        term *= Real(s - m) * Real(s - n) * z / (den * Real(s + 1));
        sum += term;
    }
    return sum;
}

/// Sum_{s=0}^{min(m,n)} (-m)_s (-n)_s z^s / s!.
template <class Real = double>
Real hyp2f0_term(int m, int n, Real z) {
    if (m < 0 || n < 0) throw domain_error("hyp2f0_term: negative index");
    const int top = std::min(m, n);
    Real term = 1;
    Real sum = 1;
    for (int s = 0; s < top; ++s) {
        term *= Real(s - m) * Real(s - n) * z / Real(s + 1);
        sum += term;
    }
    return sum;
}

namespace detail {
inline void require_unit_interval(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error(std::string(who) + ": p must lie in (0,1)");
}
inline void require_positive(double v, const char* who, const char* what) {
    if (!(v > 0.0)) throw domain_error(std::string(who) + ": " + what + " must be positive");
}
}  // namespace detail

/// M(x,y;p) = 2F1(-x,-y;2k;1-1/p).
template <class Real = double>
Real meixner(int x, int y, double p, double k) {
    detail::require_unit_interval(p, "meixner");
    detail::require_positive(k, "meixner", "k");
    const Real pr = Real(p);
    return hyp2f1_term<Real>(x, y, Real(2) * Real(k), Real(1) - Real(1) / pr);
}

/// K(x,y;p) = 2F1(-x,-y;-2j;1/p) on {0..2j}; the spin is passed as 2j.
template <class Real = double>
Real krawtchouk(int x, int y, double p, int two_j) {
    detail::require_unit_interval(p, "krawtchouk");
    if (two_j < 1) throw domain_error("krawtchouk: 2j must be a positive integer");
    if (x < 0 || y < 0 || x > two_j || y > two_j)
        throw domain_error("krawtchouk: index outside {0,...,2j}");
    return hyp2f1_term<Real>(x, y, Real(-two_j), Real(1) / Real(p));
}

/// C(x,y;p) = 2F0(-x,-y;-;-1/p).
template <class Real = double>
Real charlier(int x, int y, double p) {
    detail::require_positive(p, "charlier", "p");
    return hyp2f0_term<Real>(x, y, Real(-1) / Real(p));
}

/// 1F1(-y;2k;x).
template <class Real = double>
Real laguerre_1f1(int y, double k, Real x) {
    if (y < 0) throw domain_error("laguerre_1f1: negative degree");
    detail::require_positive(k, "laguerre_1f1", "k");
    const Real c = Real(2) * Real(k);
    Real term = 1;
    Real sum = 1;
    for (int s = 0; s < y; ++s) {
        term *= Real(s - y) * x / ((c + Real(s)) * Real(s + 1));
        sum += term;
    }
    return sum;
}

/// (1 - t/p)^x (1 - t)^(-2k-x).
inline double meixner_gf_closed(int x, double t, double p, double k) {
    if (!(std::abs(t) < 1.0)) throw domain_error("meixner_gf_closed: |t| must be < 1");
    detail::require_unit_interval(p, "meixner_gf_closed");
    return std::pow(1.0 - t / p, x) * std::pow(1.0 - t, -2.0 * k - x);
}

/// Sum_{y=0}^{N} M(x,y;p) (2k)_y / y! t^y, accumulated in quad.
inline double meixner_gf_partial(int x, double t, double p, double k, int N) {
    if (N < 0) throw domain_error("meixner_gf_partial: negative truncation");
    detail::require_unit_interval(p, "meixner_gf_partial");
    detail::require_positive(k, "meixner_gf_partial", "k");
    quad coef = 1;  // (2k)_y t^y / y!
    quad sum = 0;
    const quad c = quad(2) * quad(k);
    for (int y = 0; y <= N; ++y) {
        sum += meixner<quad>(x, y, p, k) * coef;
        coef *= (c + quad(y)) * quad(t) / quad(y + 1);
    }
    return to_double(sum);
}

struct SeriesResult {
    double value = 0.0;
    double tail_bound = std::numeric_limits<double>::infinity();
    int terms = 0;
    bool converged = false;
};

/// Partial sum with a certified geometric tail.
///
/// Envelope: |M(x,y;p)| <= P(y) = sum_s C(x,s) y^s |1-1/p|^s / (2k)_s, and
/// P(y+1)/P(y) <= ((y+1)/y)^x, so the envelope term ratio is bounded by a
/// nonincreasing rho_y; the tail after N is <= b_{N+1} / (1 - rho_{N+1}).
inline SeriesResult meixner_gf_certified(int x, double t, double p, double k, double tol,
                                         int max_terms = 100000) {
    if (!(std::abs(t) < 1.0)) throw domain_error("meixner_gf_certified: |t| must be < 1");
    detail::require_unit_interval(p, "meixner_gf_certified");
    detail::require_positive(k, "meixner_gf_certified", "k");
    const double c = std::abs(1.0 - 1.0 / p);
    auto envelope_poly = [&](int y) {
        double acc = 0.0, term = 1.0;
        for (int s = 0; s <= x; ++s) {
            acc += term;
            term *= double(x - s) / double(s + 1) * double(y) * c / (2.0 * k + s);
        }
        return acc;
    };
    SeriesResult out;
    quad coef = 1;
    quad sum = 0;
    const quad two_k = quad(2) * quad(k);
    double log_coef = 0.0;  // log((2k)_y |t|^y / y!)
    for (int y = 0; y <= max_terms; ++y) {
        sum += meixner<quad>(x, y, p, k) * coef;
        coef *= (two_k + quad(y)) * quad(t) / quad(y + 1);
        if (t == 0.0) {
            out.value = to_double(sum);
            out.tail_bound = 0.0;
            out.terms = 1;
            out.converged = true;
            return out;
        }
        log_coef += std::log((2.0 * k + y) / (y + 1.0)) + std::log(std::abs(t));
        const int n1 = y + 1;
        const double rho = std::pow(double(n1 + 1) / n1, x) *
                           std::max(1.0, (2.0 * k + n1) / (n1 + 1.0)) * std::abs(t);
        if (rho < 1.0) {
            const double b = envelope_poly(n1) * std::exp(log_coef);
            const double tail = b / (1.0 - rho);
            if (tail < tol) {
                out.value = to_double(sum);
                out.tail_bound = tail;
                out.terms = y + 1;
                out.converged = true;
                return out;
            }
        }
    }
    out.value = to_double(sum);
    out.terms = max_terms + 1;
    return out;
}

}  // namespace duality_lab
