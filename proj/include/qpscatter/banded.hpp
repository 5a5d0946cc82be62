#pragma once

#include <vector>

#include "qpscatter/types.hpp"

namespace qps {

/// Rectangular banded complex matrix. Entry (i, j) may be nonzero only for
/// i - lower <= j <= i + upper; anything outside the band is exactly zero.
/// Storage is row-major by band: row i keeps columns [i - lower, i + upper].
class BandedOperator {
public:
    BandedOperator() = default;
    BandedOperator(int rows, int cols, int lower, int upper);

    static BandedOperator identity(int n);
    static BandedOperator diagonal(const CVector& d);
    /// Band of a dense matrix with the given declared widths; entries outside are dropped.
    static BandedOperator from_dense(const CMatrix& a, int lower, int upper);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int lower() const { return lower_; }
    int upper() const { return upper_; }

    bool in_band(int i, int j) const { return j >= i - lower_ && j <= i + upper_; }
    /// Zero for (i, j) outside the band.
    Complex operator()(int i, int j) const;
    /// Reference into storage; (i, j) must lie in the band and the matrix.
    Complex& ref(int i, int j);

    /// First and one-past-last column touched by row i.
    int col_begin(int i) const;
    int col_end(int i) const;

    CVector apply(const CVector& x) const;
    /// Product with each column of X (rows(X) == cols()).
    CMatrix apply(const CMatrix& x) const;
    CMatrix to_dense() const;

    /// Leading rows x cols section.
    BandedOperator truncated(int rows, int cols) const;
    BandedOperator scaled(Complex s) const;

    /// Largest |entry|.
    double max_abs() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    int lower_ = 0;
    int upper_ = 0;
    std::vector<Complex> data_;
};

/// a * b with band widths lower_a + lower_b, upper_a + upper_b.
BandedOperator multiply(const BandedOperator& a, const BandedOperator& b);
/// a + b with band widths max(.), shapes must agree.
BandedOperator add(const BandedOperator& a, const BandedOperator& b);
BandedOperator transpose(const BandedOperator& a);

}  // namespace qps
