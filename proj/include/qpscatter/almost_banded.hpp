#pragma once

#include <vector>

#include "qpscatter/banded.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// Square system whose first r rows are dense (boundary conditions) and whose
/// remaining rows form a banded body. Body row k is row r + k of the system.
struct AlmostBandedSystem {
    CMatrix dense_rows;      ///< r x n
    BandedOperator body;     ///< (n - r) x n
    CVector rhs;             ///< n

    int size() const { return static_cast<int>(body.cols()); }
    int dense_count() const { return static_cast<int>(dense_rows.rows()); }
    /// Full matrix, for tests and small problems.
    CMatrix to_dense() const;
};

/// Givens QR of an almost-banded matrix. Fill-in to the right of the band is
/// never stored: every row beyond its window equals c_i^T B, a combination of
/// the original dense rows B. Factorization is O(n L (L + U) + n L r) and each
/// solve O(n (L + U + r)), with L, U the band widths of the full system.
class AlmostBandedQR {
public:
    AlmostBandedQR() = default;
    /// Throws SingularSystemError when |R_jj| < 1e-14 * max|A|.
    AlmostBandedQR(const CMatrix& dense_rows, const BandedOperator& body);

    int size() const { return n_; }
    CVector solve(const CVector& rhs) const;

private:
    struct Rotation {
        int row;
        double c;
        Complex s;
    };

    Complex& window(int row, int col) { return rows_[static_cast<std::size_t>(row) * width_ + (col - row + lower_)]; }
    Complex window(int row, int col) const { return rows_[static_cast<std::size_t>(row) * width_ + (col - row + lower_)]; }
    int window_end(int row) const { return row + lower_ + upper_; }
    Complex beyond(int row, int col) const;

    int n_ = 0;
    int r_ = 0;
    int lower_ = 0;   ///< L: lower band width of the full system
    int upper_ = 0;   ///< U: upper band width of the full system
    std::size_t width_ = 0;
    CMatrix dense_;                 ///< original dense rows B (r x n)
    std::vector<Complex> rows_;     ///< explicit windows [i - L, i + L + U]
    CMatrix fill_;                  ///< r x n: column i is c_i
    std::vector<std::vector<Rotation>> rotations_;
};

/// Factor and solve in one step.
CVector solve_almost_banded(const AlmostBandedSystem& system);

}  // namespace qps
