#pragma once

#include <vector>

#include "qpscatter/banded.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// Fourier coefficients w_j of w(x) = sum_j w_j exp(i j x) over the window
/// j = 1-q .. N-q. coeffs[k] holds w_{k+1-q}.
struct TrigCoeffs {
    CVector coeffs;
    int q = 1;

    int size() const { return static_cast<int>(coeffs.size()); }
    int j_min() const { return 1 - q; }
    int j_max() const { return size() - q; }
    /// Zero outside the window.
    Complex at(int j) const;
    /// Largest |j| with a nonzero coefficient (0 for the zero series).
    int degree() const;
    Complex operator()(double x) const;

    /// Symmetric window j = -n..n from 2n+1 coefficients.
    static TrigCoeffs symmetric(CVector c);
    static TrigCoeffs constant(Complex c);
};

/// x_n = 2 pi n / N for n = 1..N.
std::vector<double> fourier_points(int N);

struct FourierDiffMatrices {
    RMatrix dx;
    RMatrix dxx;
};

/// Closed-form first and second order Fourier collocation differentiation
/// matrices on fourier_points(N). N >= 2.
FourierDiffMatrices fourier_diff_matrices(int N);

struct DftMatrices {
    CMatrix F;  ///< F(i,j) = exp(-2 pi i (i-1)(j-1) / N) / sqrt(N)
    CMatrix G;  ///< G(i,j) = exp(-2 pi i (i-q) j / N) / sqrt(N)
};

DftMatrices dft_matrices(int N, int q);

struct FourierSymbols {
    CVector lambda_x;
    CVector lambda_xx;
};

/// Eigenvalues of D_x and D_xx in the order produced by F (FFT order).
/// For even N the Nyquist entry of lambda_x is 0 while lambda_xx keeps -(N/2)^2.
FourierSymbols fourier_symbols(int N);

/// N x N section of the Toeplitz multiplication operator T[a] on the window
/// j = 1-q .. N-q: entry (row j, col k) = a_{j-k}. Declared band width is
/// the degree of a.
BandedOperator toeplitz_mult(const TrigCoeffs& a, int N, int q);

/// Window coefficients from samples at fourier_points(N): direct sums for
/// N <= 64, FFT above.
CVector trig_coefficients(const CVector& samples, int q);
/// Inverse of trig_coefficients.
CVector trig_values(const CVector& coeffs, int q);

/// Adaptive trigonometric resolution of a 2pi-periodic function. Samples on
/// 16, 32, 64, ... points, accepts when the trailing 10% of coefficients (by
/// |j|) are below tol * max|coeff| and trims to the symmetric window of the
/// largest |j| above max(0.01 tol, 1e-15) max|coeff|. Throws ResolutionError
/// beyond 2^16 points.
TrigCoeffs trig_resolve(const Univariate& f, double tol);

}  // namespace qps
