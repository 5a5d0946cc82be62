#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <qpscatter/types.hpp>

// Independent reference computations for the unit tests.
namespace oracle {

using qps::CMatrix;
using qps::Complex;
using qps::CVector;

inline std::mt19937& rng() {
    static std::mt19937 gen(12345);
    return gen;
}

inline CVector random_vector(Eigen::Index n) {
    std::normal_distribution<double> d;
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(d(rng()), d(rng()));
    return v;
}

inline CMatrix random_matrix(Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> d;
    CMatrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(d(rng()), d(rng()));
    return m;
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Monomial coefficients of T_n, exact integers in long double.
inline std::vector<long double> chebyshev_monomial(int n) {
    std::vector<long double> t0{1.0L}, t1{0.0L, 1.0L};
    if (n == 0) return t0;
    for (int k = 1; k < n; ++k) {
        std::vector<long double> t2(static_cast<std::size_t>(k + 2), 0.0L);
        for (std::size_t i = 0; i < t1.size(); ++i) t2[i + 1] += 2.0L * t1[i];
        for (std::size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

inline long double poly_eval(const std::vector<long double>& c, long double y) {
    long double s = 0.0L;
    for (std::size_t i = c.size(); i-- > 0;) s = s * y + c[i];
    return s;
}

inline std::vector<long double> poly_derivative(const std::vector<long double>& c, int order) {
    std::vector<long double> d = c;
    for (int o = 0; o < order; ++o) {
        if (d.size() <= 1) return {0.0L};
        std::vector<long double> e(d.size() - 1);
        for (std::size_t i = 1; i < d.size(); ++i) e[i - 1] = static_cast<long double>(i) * d[i];
        d = e;
    }
    return d;
}

// d^order/dy^order of sum_i w_i T_i(y) via monomials.
inline Complex cheb_series_derivative(const CVector& w, int order, double y) {
    std::complex<long double> s = 0.0L;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const auto d = poly_derivative(chebyshev_monomial(static_cast<int>(i)), order);
        s += std::complex<long double>(w(i).real(), w(i).imag()) * poly_eval(d, y);
    }
    return Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
}

// Explicit Gegenbauer sum C^(lambda)_n(y) for lambda >= 1.
inline long double gegenbauer(int lambda, int n, long double y) {
    long double s = 0.0L;
    for (int k = 0; 2 * k <= n; ++k) {
        const long double term = std::exp(std::lgamma(static_cast<long double>(n - k + lambda)) -
                                          std::lgamma(static_cast<long double>(lambda)) -
                                          std::lgamma(static_cast<long double>(k + 1)) -
                                          std::lgamma(static_cast<long double>(n - 2 * k + 1)));
        s += ((k % 2) ? -term : term) * std::pow(2.0L * y, n - 2 * k);
    }
    return s;
}

// Series in C^(lambda) (lambda = 0 means Chebyshev T).
inline Complex ultra_series(const CVector& c, int lambda, double y) {
    Complex s = 0.0;
    for (Eigen::Index n = 0; n < c.size(); ++n) {
        const double b = lambda == 0 ? std::cos(static_cast<double>(n) * std::acos(y))
                                     : static_cast<double>(gegenbauer(lambda, static_cast<int>(n), y));
        s += c(n) * b;
    }
    return s;
}

// Chebyshev coefficients of exp(-i b y): eps_k (-i)^k J_k(b).
inline CVector plane_wave_chebyshev(double b, int count) {
    CVector c(count);
    for (int k = 0; k < count; ++k) {
        const double eps = k == 0 ? 1.0 : 2.0;
        c(k) = eps * std::pow(Complex(0.0, -1.0), k) * std::cyl_bessel_j(static_cast<double>(k), b);
    }
    return c;
}

// Chebyshev coefficients of exp(y): I_0(1) + 2 sum I_k(1) T_k.
inline CVector exp_chebyshev(int count) {
    CVector c(count);
    for (int k = 0; k < count; ++k) c(k) = (k == 0 ? 1.0 : 2.0) * std::cyl_bessel_i(static_cast<double>(k), 1.0);
    return c;
}

inline std::vector<double> sample_points(int n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> p(static_cast<std::size_t>(n));
    for (auto& v : p) v = d(rng());
    return p;
}

}  // namespace oracle
