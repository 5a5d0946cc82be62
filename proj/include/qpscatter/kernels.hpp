#pragma once

#include <vector>

#include "qpscatter/almost_banded.hpp"
#include "qpscatter/tensor.hpp"
#include "qpscatter/types.hpp"

/// Data-parallel inner kernels. Every kernel has a serial reference and an
/// OpenMP variant; tests check they agree and bench_kernels times both.
namespace qps::kernels {

namespace serial {

/// Interior block QC V X^T + QY V + omega^2 mu sum_k QPsi_k V Phi_k^T, by
/// whole-matrix products. If madds is non-null it accumulates the number of
/// complex multiply-adds performed.
CMatrix tensor_interior(const TensorSystem& system, const CMatrix& V, long long* madds = nullptr);

/// Column p of the result solves factors[p] x = rhs.col(p).
CMatrix solve_modes(const std::vector<AlmostBandedQR>& factors, const CMatrix& rhs);

/// sum_{i,k} V(i,k) T_i(y) exp(i j_k x) on the tensor grid xs x ys;
/// result(r, c) is the value at (xs[c], ys[r]).
CMatrix evaluate_coefficients(const CMatrix& V, int q, const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace serial

namespace parallel {

/// Column-parallel form of serial::tensor_interior.
CMatrix tensor_interior(const TensorSystem& system, const CMatrix& V);

CMatrix solve_modes(const std::vector<AlmostBandedQR>& factors, const CMatrix& rhs);

CMatrix evaluate_coefficients(const CMatrix& V, int q, const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace parallel

}  // namespace qps::kernels
