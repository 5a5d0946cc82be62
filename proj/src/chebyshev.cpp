#include "qpscatter/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qpscatter/errors.hpp"
#include "qpscatter/fft.hpp"

namespace qps {

namespace {

constexpr int kDirectLimit = 32;

// cos(k m pi / M) with the argument reduced mod 2M.
double cos_node(long long k, long long m, int M) {
    const long long r = (k * m) % (2LL * M);
    return std::cos(kPi * static_cast<double>(r) / M);
}

}  // namespace

Complex ChebCoeffs::at(int i) const { return (i >= 0 && i < size()) ? coeffs(i) : Complex{}; }

int ChebCoeffs::degree() const {
    for (int i = size() - 1; i > 0; --i) {
        if (coeffs(i) != Complex{}) return i;
    }
    return 0;
}

Complex ChebCoeffs::operator()(double y) const {
    Complex b1 = 0.0;
    Complex b2 = 0.0;
    for (int k = size() - 1; k >= 1; --k) {
        const Complex b0 = coeffs(k) + 2.0 * y * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return (size() > 0 ? coeffs(0) : Complex{}) + y * b1 - b2;
}

ChebCoeffs ChebCoeffs::derivative() const {
    const int n = size();
    if (n <= 1) return ChebCoeffs::constant(0.0);
    CVector d = CVector::Zero(n - 1);
    // d_{k-1} = d_{k+1} + 2 k c_k
    for (int k = n - 1; k >= 1; --k) {
        const Complex next = (k + 1 <= n - 2) ? d(k + 1) : Complex{};
        d(k - 1) = next + 2.0 * k * coeffs(k);
    }
    d(0) *= 0.5;
    return ChebCoeffs{d};
}

ChebCoeffs ChebCoeffs::constant(Complex c) { return ChebCoeffs{CVector::Constant(1, c)}; }

std::vector<double> cheb_points(int M) {
    if (M < 1) throw std::invalid_argument("cheb_points: M >= 1 required");
    std::vector<double> y(static_cast<std::size_t>(M + 1));
    for (int m = 0; m <= M; ++m) y[static_cast<std::size_t>(m)] = std::sin(kPi * (M - 2.0 * m) / (2.0 * M));
    return y;
}

RMatrix cheb_diff_matrix(int M) {
    if (M < 1) throw std::invalid_argument("cheb_diff_matrix: M >= 1 required");
    const auto y = cheb_points(M);
    RMatrix d(M + 1, M + 1);
    auto weight = [M](int i) { return (i == 0 || i == M) ? 2.0 : 1.0; };
    for (int i = 0; i <= M; ++i) {
        for (int j = 0; j <= M; ++j) {
            if (i == j) continue;
            // y_i - y_j in product form, free of cancellation
            const double diff = 2.0 * std::sin((i + j) * kPi / (2.0 * M)) * std::sin((j - i) * kPi / (2.0 * M));
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            d(i, j) = weight(i) / weight(j) * sign / diff;
        }
    }
    const double corner = (2.0 * M * M + 1.0) / 6.0;
    d(0, 0) = corner;
    d(M, M) = -corner;
    for (int i = 1; i < M; ++i) {
        const double s = std::sin(i * kPi / M);
        d(i, i) = -y[static_cast<std::size_t>(i)] / (2.0 * s * s);
    }
    return d;
}

RMatrix downsampling_matrix(int M) {
    if (M < 2) throw std::invalid_argument("downsampling_matrix: M >= 2 required");
    RMatrix p = RMatrix::Zero(M - 1, M + 1);
    for (int i = 0; i < M - 1; ++i) p(i, i + 1) = 1.0;
    return p;
}

ChebTransform::ChebTransform(int M) : M_(M) {
    if (M < 1) throw std::invalid_argument("ChebTransform: M >= 1 required");
}

CVector ChebTransform::to_coeffs(const CVector& v) const {
    const int M = M_;
    if (v.size() != M + 1) throw std::invalid_argument("ChebTransform::to_coeffs: expected M+1 values");
    CVector c(M + 1);
    if (M <= kDirectLimit) {
        for (int k = 0; k <= M; ++k) {
            Complex s = 0.5 * (v(0) + cos_node(k, M, M) * v(M));
            for (int m = 1; m < M; ++m) s += cos_node(k, m, M) * v(m);
            c(k) = s * (2.0 / M);
        }
    } else {
        std::vector<Complex> ext(static_cast<std::size_t>(2 * M));
        for (int m = 0; m <= M; ++m) ext[static_cast<std::size_t>(m)] = v(m);
        for (int m = 1; m < M; ++m) ext[static_cast<std::size_t>(2 * M - m)] = v(m);
        fft_forward(ext);
        for (int k = 0; k <= M; ++k) c(k) = ext[static_cast<std::size_t>(k)] / static_cast<double>(M);
    }
    c(0) *= 0.5;
    c(M) *= 0.5;
    return c;
}

CVector ChebTransform::to_values(const CVector& c) const {
    const int M = M_;
    if (c.size() != M + 1) throw std::invalid_argument("ChebTransform::to_values: expected M+1 coefficients");
    CVector v(M + 1);
    if (M <= kDirectLimit) {
        for (int m = 0; m <= M; ++m) {
            Complex s = 0.0;
            for (int k = 0; k <= M; ++k) s += cos_node(k, m, M) * c(k);
            v(m) = s;
        }
        return v;
    }
    std::vector<Complex> ext(static_cast<std::size_t>(2 * M), Complex{});
    ext[0] = c(0);
    ext[static_cast<std::size_t>(M)] = c(M);
    for (int k = 1; k < M; ++k) {
        ext[static_cast<std::size_t>(k)] = 0.5 * c(k);
        ext[static_cast<std::size_t>(2 * M - k)] = 0.5 * c(k);
    }
    fft_backward(ext);
    for (int m = 0; m <= M; ++m) v(m) = ext[static_cast<std::size_t>(m)];
    return v;
}

CMatrix ChebTransform::to_coeffs(const CMatrix& values) const {
    CMatrix out(values.rows(), values.cols());
    for (Eigen::Index j = 0; j < values.cols(); ++j) out.col(j) = to_coeffs(CVector(values.col(j)));
    return out;
}

ChebCoeffs cheb_resolve(const Univariate& f, double tol) {
    constexpr int kMaxDegree = 1 << 16;
    for (int n = 16; n <= kMaxDegree; n *= 2) {
        const auto ys = cheb_points(n);
        CVector v(n + 1);
        for (int m = 0; m <= n; ++m) v(m) = f(ys[static_cast<std::size_t>(m)]);
        const CVector c = ChebTransform(n).to_coeffs(v);
        const double cmax = c.cwiseAbs().maxCoeff();
        if (cmax == 0.0) return ChebCoeffs::constant(0.0);
        const int tail_from = static_cast<int>(0.9 * (n + 1));
        bool tail_small = true;
        for (int k = tail_from; k <= n; ++k) {
            if (std::abs(c(k)) > tol * cmax) {
                tail_small = false;
                break;
            }
        }
        if (!tail_small) continue;
        int last = 0;
        for (int k = n; k >= 0; --k) {
            if (std::abs(c(k)) > std::max(0.01 * tol, 1e-15) * cmax) {
                last = k;
                break;
            }
        }
        return ChebCoeffs{c.head(last + 1)};
    }
    throw ResolutionError("cheb_resolve: no convergence up to degree 2^16");
}

RMatrix cheb_interpolation_matrix(int M, const std::vector<double>& ys) {
    const auto nodes = cheb_points(M);
    RMatrix w = RMatrix::Zero(static_cast<Eigen::Index>(ys.size()), M + 1);
    std::vector<double> bw(static_cast<std::size_t>(M + 1));
    for (int m = 0; m <= M; ++m) bw[static_cast<std::size_t>(m)] = ((m % 2 == 0) ? 1.0 : -1.0) * ((m == 0 || m == M) ? 0.5 : 1.0);
    for (std::size_t r = 0; r < ys.size(); ++r) {
        const double y = ys[r];
        int exact = -1;
        for (int m = 0; m <= M; ++m) {
            if (y == nodes[static_cast<std::size_t>(m)]) {
                exact = m;
                break;
            }
        }
        const auto row = static_cast<Eigen::Index>(r);
        if (exact >= 0) {
            w(row, exact) = 1.0;
            continue;
        }
        double denom = 0.0;
        for (int m = 0; m <= M; ++m) {
            const double t = bw[static_cast<std::size_t>(m)] / (y - nodes[static_cast<std::size_t>(m)]);
            w(row, m) = t;
            denom += t;
        }
        w.row(row) /= denom;
    }
    return w;
}

}  // namespace qps
