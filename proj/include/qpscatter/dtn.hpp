#pragma once

#include "qpscatter/problem.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// diag(i beta_j) and diag(i gamma_j) over the window, in window order.
struct DtnDiagonals {
    CVector lambda_beta;
    CVector lambda_gamma;
};

DtnDiagonals dtn_diagonals(const ModeConstants& modes);

/// Dense truncated DtN matrices acting on grid values at fourier_points(N):
/// S = G^* diag(i beta) G, T = G^* diag(i gamma) G.
struct DtnMatrices {
    CMatrix S;
    CMatrix T;
};

DtnMatrices dtn_matrices(const ModeConstants& modes);

/// The DtN diagonals permuted into FFT order: position p holds mode p for
/// p <= N - q and mode p - N otherwise, so that S = F^* Lambda_S F.
struct FftOrderedDiagonals {
    CVector lambda_S;
    CVector lambda_T;
};

FftOrderedDiagonals reordered_diagonals(const ModeConstants& modes);

/// Mode index held at FFT-order position p.
int fft_order_mode(int position, const ModeConstants& modes);

/// Transparent-boundary rows of the collocation system over vec(V), V of size
/// (M+1) x N with columns stacked. Each block is N x N(M+1).
struct CollocationBcRows {
    CMatrix top;      ///< I_N (x) (e_0^T D_y) - S (x) e_0^T
    CMatrix bottom;   ///< I_N (x) (e_M^T D_y) + T (x) e_M^T
    CVector rhs_top;  ///< -2 i beta_0 exp(-i beta_0) on every row
};

CollocationBcRows bc_rows_collocation(const ModeConstants& modes, int M, const RMatrix& dy);

/// Transparent-boundary rows of the tensor system over vec(V), V of size
/// M x N (Chebyshev degree by mode), in factored form:
///   top row j:    b1^T v_j - (i beta_j)  a1^T v_j
///   bottom row j: b2^T v_j + (i gamma_j) a2^T v_j
struct TensorBcRows {
    int M = 0;
    int N = 0;
    int q = 1;
    RVector b1;  ///< T_i'(1)  = i^2
    RVector b2;  ///< T_i'(-1) = (-1)^(i+1) i^2
    RVector a1;  ///< T_i(1)   = 1
    RVector a2;  ///< T_i(-1)  = (-1)^i
    DtnDiagonals diagonals;
    CVector rhs_top;  ///< -2 i beta_0 exp(-i beta_0) at position q, zero elsewhere

    /// Dense N x MN blocks.
    CMatrix top_block() const;
    CMatrix bottom_block() const;
    /// Top and bottom row values for a coefficient matrix V (M x N).
    CVector apply_top(const CMatrix& V) const;
    CVector apply_bottom(const CMatrix& V) const;
};

TensorBcRows bc_rows_tensor(const ModeConstants& modes, int M);

/// Constant right-hand side of the top transparent condition in v-form.
Complex incident_trace(const IncidentWave& wave);

}  // namespace qps
