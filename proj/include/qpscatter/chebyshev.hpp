#pragma once

#include <vector>

#include "qpscatter/types.hpp"

namespace qps {

/// Chebyshev coefficients of w(y) = sum_i w_i T_i(y), i = 0..size-1.
struct ChebCoeffs {
    CVector coeffs;

    int size() const { return static_cast<int>(coeffs.size()); }
    /// Zero beyond the stored length.
    Complex at(int i) const;
    /// Index of the last nonzero coefficient (0 for the zero series).
    int degree() const;
    /// Clenshaw evaluation.
    Complex operator()(double y) const;
    /// Coefficients of dw/dy.
    ChebCoeffs derivative() const;

    static ChebCoeffs constant(Complex c);
};

/// y_m = cos(m pi / M), m = 0..M.
std::vector<double> cheb_points(int M);

/// (M+1) x (M+1) Chebyshev collocation differentiation matrix on cheb_points(M).
RMatrix cheb_diff_matrix(int M);

/// (M-1) x (M+1) identity with first and last rows removed.
RMatrix downsampling_matrix(int M);

/// Value <-> coefficient maps on the (M+1)-point Chebyshev grid. Direct
/// cosine sums for M <= 32, even-extension FFT above.
class ChebTransform {
public:
    explicit ChebTransform(int M);

    int degree() const { return M_; }
    CVector to_coeffs(const CVector& values) const;
    CVector to_values(const CVector& coeffs) const;
    /// Applies to_coeffs to every column.
    CMatrix to_coeffs(const CMatrix& values) const;

private:
    int M_;
};

/// Adaptive Chebyshev resolution on [-1, 1]: degrees 16, 32, ... doubling,
/// accept when the trailing 10% of coefficients are <= tol * max|coeff|,
/// trailing coefficients below max(0.01 tol, 1e-15) max|coeff| trimmed.
/// ResolutionError beyond 2^16.
ChebCoeffs cheb_resolve(const Univariate& f, double tol);

/// Barycentric interpolation matrix from cheb_points(M) to the points ys.
RMatrix cheb_interpolation_matrix(int M, const std::vector<double>& ys);

}  // namespace qps
