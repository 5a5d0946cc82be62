#pragma once

#include <lapacke.h>

#include <vector>

#include "qpscatter/errors.hpp"
#include "qpscatter/types.hpp"

namespace qps::detail {

// In-place LU through LAPACK (zgetrf/zgetrs); throws on a tiny pivot.
inline CVector lu_solve(CMatrix& a, const CVector& b) {
    const auto n = static_cast<lapack_int>(a.rows());
    const double anorm = a.cwiseAbs().maxCoeff();
    std::vector<lapack_int> piv(static_cast<std::size_t>(n));
    auto* data = reinterpret_cast<lapack_complex_double*>(a.data());
    const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, data, n, piv.data());
    if (info < 0) throw std::invalid_argument("dense LU: bad argument");
    const double pivot = a.diagonal().cwiseAbs().minCoeff();
    if (info > 0 || !(pivot >= 1e-14 * anorm)) throw SingularSystemError("dense LU: pivot breakdown (resonant or non-unique discrete problem)");
    CVector x = b;
    LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, data, n, piv.data(), reinterpret_cast<lapack_complex_double*>(x.data()), n);
    return x;
}

}  // namespace qps::detail
