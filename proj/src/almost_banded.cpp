#include "qpscatter/almost_banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpscatter/errors.hpp"

namespace qps {

CMatrix AlmostBandedSystem::to_dense() const {
    const int n = size();
    const int r = dense_count();
    CMatrix a(n, n);
    a.topRows(r) = dense_rows;
    a.bottomRows(n - r) = body.to_dense();
    return a;
}

AlmostBandedQR::AlmostBandedQR(const CMatrix& dense_rows, const BandedOperator& body)
    : n_(body.cols()), r_(static_cast<int>(dense_rows.rows())), dense_(dense_rows) {
    if (body.rows() + r_ != n_ || (r_ > 0 && dense_rows.cols() != n_))
        throw std::invalid_argument("AlmostBandedQR: system must be square");
    lower_ = r_ + body.lower();
    upper_ = std::max(body.upper() - r_, 0);
    width_ = static_cast<std::size_t>(2 * lower_ + upper_ + 1);
    rows_.assign(static_cast<std::size_t>(n_) * width_, Complex{});
    fill_ = CMatrix::Zero(r_, n_);
    rotations_.resize(static_cast<std::size_t>(n_));

    double anorm = body.max_abs();
    for (int i = 0; i < r_; ++i) {
        fill_(i, i) = 1.0;
        for (int k = std::max(0, i - lower_); k <= std::min(n_ - 1, window_end(i)); ++k) window(i, k) = dense_(i, k);
        anorm = std::max(anorm, dense_.row(i).cwiseAbs().maxCoeff());
    }
    for (int k = 0; k < body.rows(); ++k) {
        const int row = r_ + k;
        for (int col = body.col_begin(k); col < body.col_end(k); ++col) window(row, col) = body(k, col);
    }

    for (int j = 0; j < n_; ++j) {
        const int last_row = std::min(n_ - 1, j + lower_);
        for (int i = j + 1; i <= last_row; ++i) {
            const Complex b = window(i, j);
            if (b == Complex{}) continue;
            const Complex a = window(j, j);
            const double rad = std::hypot(std::abs(a), std::abs(b));
            double c;
            Complex s;
            if (std::abs(a) == 0.0) {
                c = 0.0;
                s = std::conj(b) / std::abs(b);
            } else {
                c = std::abs(a) / rad;
                s = (a / std::abs(a)) * std::conj(b) / rad;
            }
            const int end_j = window_end(j);
            const int end = std::min(n_ - 1, window_end(i));
            for (int col = j; col <= end; ++col) {
                const Complex vj = (col <= end_j) ? window(j, col) : beyond(j, col);
                const Complex vi = window(i, col);
                if (col <= end_j) window(j, col) = c * vj + s * vi;
                window(i, col) = -std::conj(s) * vj + c * vi;
            }
            window(i, j) = 0.0;
            if (r_ > 0) {
                const CVector fj = fill_.col(j);
                const CVector fi = fill_.col(i);
                fill_.col(j) = c * fj + s * fi;
                fill_.col(i) = -std::conj(s) * fj + c * fi;
            }
            rotations_[static_cast<std::size_t>(j)].push_back({i, c, s});
        }
        if (std::abs(window(j, j)) < 1e-14 * anorm)
            throw SingularSystemError("almost-banded QR: pivot breakdown at column " + std::to_string(j));
    }
}

Complex AlmostBandedQR::beyond(int row, int col) const {
    if (r_ == 0) return Complex{};
    return fill_.col(row).cwiseProduct(dense_.col(col)).sum();
}

CVector AlmostBandedQR::solve(const CVector& rhs) const {
    if (rhs.size() != n_) throw std::invalid_argument("AlmostBandedQR::solve: rhs size mismatch");
    CVector y = rhs;
    for (int j = 0; j < n_; ++j) {
        for (const auto& rot : rotations_[static_cast<std::size_t>(j)]) {
            const Complex yj = y(j);
            const Complex yi = y(rot.row);
            y(j) = rot.c * yj + rot.s * yi;
            y(rot.row) = -std::conj(rot.s) * yj + rot.c * yi;
        }
    }
    CVector x = CVector::Zero(n_);
    CVector tail = CVector::Zero(r_);
    for (int j = n_ - 1; j >= 0; --j) {
        const int k_add = j + lower_ + upper_ + 1;
        if (r_ > 0 && k_add < n_) tail += dense_.col(k_add) * x(k_add);
        Complex s = y(j);
        const int end = std::min(n_ - 1, window_end(j));
        for (int k = j + 1; k <= end; ++k) s -= window(j, k) * x(k);
        if (r_ > 0) s -= fill_.col(j).cwiseProduct(tail).sum();
        x(j) = s / window(j, j);
    }
    return x;
}

CVector solve_almost_banded(const AlmostBandedSystem& system) {
    return AlmostBandedQR(system.dense_rows, system.body).solve(system.rhs);
}

}  // namespace qps
