#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace duality_lab {

// 113-bit float for sums with heavy cancellation (orthogonal polynomials at
// large degree, products of ladder exponentials).
using quad = boost::multiprecision::float128;
using QuadMatrix = Eigen::Matrix<quad, Eigen::Dynamic, Eigen::Dynamic>;

using cplx = std::complex<double>;

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline double to_double(double v) { return v; }
inline double to_double(const quad& v) { return v.convert_to<double>(); }

// |a - b| / max(1, |b|): absolute near zero, relative for large entries.
template <class T>
double mixed_relative(const T& a, const T& b) {
    using std::abs;
    const double diff = to_double(abs(a - b));
    const double scale = std::max(1.0, to_double(abs(b)));
    return diff / scale;
}

inline double mixed_relative(cplx a, cplx b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace duality_lab
