#pragma once

#include "qpscatter/banded.hpp"
#include "qpscatter/chebyshev.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// M x M section of the lambda-th derivative operator, Chebyshev T to C^(lambda):
/// 2^(lambda-1) (lambda-1)! times the superdiagonal (lambda, lambda+1, ...)
/// at offset lambda. Requires 1 <= lambda < M.
BandedOperator diff_operator(int lambda, int M);

/// M x M section of S_0 (T -> C^(1), lambda = 0) or S_lambda (C^(lambda) -> C^(lambda+1)).
BandedOperator conversion_operator(int lambda, int M);

/// M x M section of the Chebyshev multiplication operator M_0[a]
/// (Toeplitz plus Hankel). Band width = degree of a.
BandedOperator mult_operator_cheb(const ChebCoeffs& a, int M);

/// M x M section of the C^(lambda) multiplication operator M_lambda[a], where
/// a is given by its C^(lambda) coefficients; entries from the Gegenbauer
/// linearization formula. Band width = degree of a.
BandedOperator mult_operator_ultra(const CVector& a, int lambda, int M);

/// Chebyshev coefficients to C^(lambda) coefficients of the same function
/// (applies S_{lambda-1} ... S_0).
CVector chebyshev_to_ultraspherical(const CVector& a, int lambda);

/// C^(lambda)_n(y) for n = 0..degree by the three-term recurrence.
RVector ultraspherical_values(int lambda, int degree, double y);

struct AssembledOde {
    /// Q_M (M_2[a] D_2 + S_1 M_1[b] D_1 + S_1 S_0 M_0[c]) Q_M^T, result in C^(2).
    BandedOperator op;
    /// Q_M S_1 S_0 Q_M^T, maps Chebyshev right-hand sides to C^(2).
    BandedOperator conversion;
};

/// Ultraspherical discretization of a w'' + b w' + c w on [-1, 1].
/// The operator is formed at padded size so that the M x M section equals
/// the section of the infinite product.
AssembledOde assemble_ode(const ChebCoeffs& a, const ChebCoeffs& b, const ChebCoeffs& c, int M);

}  // namespace qps
