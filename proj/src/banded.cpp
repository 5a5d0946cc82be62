#include "qpscatter/banded.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qps {

BandedOperator::BandedOperator(int rows, int cols, int lower, int upper)
    : rows_(rows), cols_(cols), lower_(lower), upper_(upper) {
    if (rows < 0 || cols < 0 || lower < 0 || upper < 0)
        throw std::invalid_argument("BandedOperator: negative dimension or band width");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(lower + upper + 1), Complex{});
}

BandedOperator BandedOperator::identity(int n) {
    BandedOperator a(n, n, 0, 0);
    for (int i = 0; i < n; ++i) a.ref(i, i) = 1.0;
    return a;
}

BandedOperator BandedOperator::diagonal(const CVector& d) {
    const auto n = static_cast<int>(d.size());
    BandedOperator a(n, n, 0, 0);
    for (int i = 0; i < n; ++i) a.ref(i, i) = d(i);
    return a;
}

BandedOperator BandedOperator::from_dense(const CMatrix& m, int lower, int upper) {
    BandedOperator a(static_cast<int>(m.rows()), static_cast<int>(m.cols()), lower, upper);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = a.col_begin(i); j < a.col_end(i); ++j) a.ref(i, j) = m(i, j);
    return a;
}

Complex BandedOperator::operator()(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_ || !in_band(i, j)) return Complex{};
    return data_[static_cast<std::size_t>(i) * (lower_ + upper_ + 1) + (j - i + lower_)];
}

Complex& BandedOperator::ref(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_ && in_band(i, j));
    return data_[static_cast<std::size_t>(i) * (lower_ + upper_ + 1) + (j - i + lower_)];
}

int BandedOperator::col_begin(int i) const { return std::max(0, i - lower_); }
int BandedOperator::col_end(int i) const { return std::clamp(i + upper_ + 1, 0, cols_); }

CVector BandedOperator::apply(const CVector& x) const {
    assert(x.size() == cols_);
    CVector y = CVector::Zero(rows_);
    const std::size_t w = static_cast<std::size_t>(lower_ + upper_ + 1);
    for (int i = 0; i < rows_; ++i) {
        const Complex* row = data_.data() + static_cast<std::size_t>(i) * w;
        Complex s = 0.0;
        for (int j = col_begin(i); j < col_end(i); ++j) s += row[j - i + lower_] * x(j);
        y(i) = s;
    }
    return y;
}

CMatrix BandedOperator::apply(const CMatrix& x) const {
    assert(x.rows() == cols_);
    CMatrix y = CMatrix::Zero(rows_, x.cols());
    const std::size_t w = static_cast<std::size_t>(lower_ + upper_ + 1);
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        for (int i = 0; i < rows_; ++i) {
            const Complex* row = data_.data() + static_cast<std::size_t>(i) * w;
            Complex s = 0.0;
            for (int j = col_begin(i); j < col_end(i); ++j) s += row[j - i + lower_] * x(j, c);
            y(i, c) = s;
        }
    }
    return y;
}

CMatrix BandedOperator::to_dense() const {
    CMatrix m = CMatrix::Zero(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = col_begin(i); j < col_end(i); ++j) m(i, j) = (*this)(i, j);
    return m;
}

BandedOperator BandedOperator::truncated(int rows, int cols) const {
    if (rows > rows_ || cols > cols_) throw std::invalid_argument("BandedOperator::truncated: section larger than operator");
    BandedOperator a(rows, cols, lower_, upper_);
    for (int i = 0; i < rows; ++i)
        for (int j = a.col_begin(i); j < a.col_end(i); ++j) a.ref(i, j) = (*this)(i, j);
    return a;
}

BandedOperator BandedOperator::scaled(Complex s) const {
    BandedOperator a = *this;
    for (auto& v : a.data_) v *= s;
    return a;
}

double BandedOperator::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

BandedOperator multiply(const BandedOperator& a, const BandedOperator& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    BandedOperator c(a.rows(), b.cols(), a.lower() + b.lower(), a.upper() + b.upper());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = a.col_begin(i); k < a.col_end(i); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = b.col_begin(k); j < b.col_end(k); ++j) c.ref(i, j) += aik * b(k, j);
        }
    }
    return c;
}

BandedOperator add(const BandedOperator& a, const BandedOperator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shapes differ");
    BandedOperator c(a.rows(), a.cols(), std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = a.col_begin(i); j < a.col_end(i); ++j) c.ref(i, j) += a(i, j);
        for (int j = b.col_begin(i); j < b.col_end(i); ++j) c.ref(i, j) += b(i, j);
    }
    return c;
}

BandedOperator transpose(const BandedOperator& a) {
    BandedOperator t(a.cols(), a.rows(), a.upper(), a.lower());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = a.col_begin(i); j < a.col_end(i); ++j) t.ref(j, i) = a(i, j);
    return t;
}

}  // namespace qps
