#include "qpscatter/fourier.hpp"

#include <cmath>
#include <vector>

#include "qpscatter/errors.hpp"
#include "qpscatter/fft.hpp"

namespace qps {

namespace {

constexpr int kDirectDftLimit = 64;

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// exp(-2 pi i p / N) with p reduced mod N first, so large products keep full accuracy.
Complex unit_root(long long p, int N) {
    long long r = p % N;
    if (r < 0) r += N;
    const double t = -2.0 * kPi * static_cast<double>(r) / N;
    return {std::cos(t), std::sin(t)};
}

int wrap(int j, int N) {
    int r = j % N;
    return r < 0 ? r + N : r;
}

}  // namespace

Complex TrigCoeffs::at(int j) const {
    if (j < j_min() || j > j_max()) return Complex{};
    return coeffs(j + q - 1);
}

int TrigCoeffs::degree() const {
    int d = 0;
    for (int k = 0; k < size(); ++k) {
        if (coeffs(k) != Complex{}) d = std::max(d, std::abs(k + 1 - q));
    }
    return d;
}

Complex TrigCoeffs::operator()(double x) const {
    Complex sum = 0.0;
    for (int k = 0; k < size(); ++k) {
        const int j = k + 1 - q;
        sum += coeffs(k) * std::exp(kI * (static_cast<double>(j) * x));
    }
    return sum;
}

TrigCoeffs TrigCoeffs::symmetric(CVector c) {
    const auto len = static_cast<int>(c.size());
    if (len % 2 == 0) throw std::invalid_argument("TrigCoeffs::symmetric needs an odd number of coefficients");
    return TrigCoeffs{std::move(c), (len - 1) / 2 + 1};
}

TrigCoeffs TrigCoeffs::constant(Complex c) { return TrigCoeffs{CVector::Constant(1, c), 1}; }

std::vector<double> fourier_points(int N) {
    std::vector<double> x(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) x[static_cast<std::size_t>(n - 1)] = 2.0 * kPi * n / N;
    return x;
}

FourierDiffMatrices fourier_diff_matrices(int N) {
    if (N < 2) throw std::invalid_argument("fourier_diff_matrices: N >= 2 required");
    const double h = 2.0 * kPi / N;
    FourierDiffMatrices d{RMatrix::Zero(N, N), RMatrix::Zero(N, N)};
    const bool odd = N % 2 == 1;
    const double diag = odd ? -kPi * kPi / (3.0 * h * h) + 1.0 / 12.0 : -kPi * kPi / (3.0 * h * h) - 1.0 / 6.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            if (i == j) {
                d.dxx(i, j) = diag;
                continue;
            }
            const int k = i - j;
            const double t = k * h / 2.0;
            const double s = std::sin(t);
            const double c = std::cos(t);
            if (odd) {
                d.dx(i, j) = parity(k) * 0.5 / s;
                d.dxx(i, j) = -parity(k) * 0.5 * (c / s) / s;
            } else {
                // cot(k h / 2) vanishes exactly at k = +-N/2
                d.dx(i, j) = 2 * std::abs(k) == N ? 0.0 : parity(k) * 0.5 * c / s;
                d.dxx(i, j) = -parity(k) * 0.5 / (s * s);
            }
        }
    }
    return d;
}

DftMatrices dft_matrices(int N, int q) {
    if (N < 1 || q < 1 || q > N) throw std::invalid_argument("dft_matrices: need 1 <= q <= N");
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    DftMatrices m{CMatrix(N, N), CMatrix(N, N)};
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            m.F(a, b) = unit_root(static_cast<long long>(a) * b, N) * scale;
            m.G(a, b) = unit_root(static_cast<long long>(a + 1 - q) * (b + 1), N) * scale;
        }
    }
    return m;
}

FourierSymbols fourier_symbols(int N) {
    if (N < 2) throw std::invalid_argument("fourier_symbols: N >= 2 required");
    FourierSymbols s{CVector(N), CVector(N)};
    for (int p = 0; p < N; ++p) {
        const int k = p <= N / 2 ? p : p - N;
        const bool nyquist = N % 2 == 0 && p == N / 2;
        s.lambda_x(p) = nyquist ? Complex{} : kI * static_cast<double>(k);
        s.lambda_xx(p) = -static_cast<double>(k) * static_cast<double>(k);
    }
    return s;
}

BandedOperator toeplitz_mult(const TrigCoeffs& a, int N, int q) {
    if (N < 1 || q < 1 || q > N) throw std::invalid_argument("toeplitz_mult: need 1 <= q <= N");
    const int n = a.degree();
    BandedOperator t(N, N, n, n);
    for (int r = 0; r < N; ++r)
        for (int c = t.col_begin(r); c < t.col_end(r); ++c) t.ref(r, c) = a.at(r - c);
    return t;
}

CVector trig_coefficients(const CVector& samples, int q) {
    const auto N = static_cast<int>(samples.size());
    CVector c(N);
    if (N <= kDirectDftLimit) {
        for (int k = 0; k < N; ++k) {
            const int j = k + 1 - q;
            Complex s = 0.0;
            for (int n = 1; n <= N; ++n) s += samples(n - 1) * unit_root(static_cast<long long>(j) * n, N);
            c(k) = s / static_cast<double>(N);
        }
        return c;
    }
    std::vector<Complex> buf(static_cast<std::size_t>(N));
    buf[0] = samples(N - 1);
    for (int m = 1; m < N; ++m) buf[static_cast<std::size_t>(m)] = samples(m - 1);
    fft_forward(buf);
    for (int k = 0; k < N; ++k) c(k) = buf[static_cast<std::size_t>(wrap(k + 1 - q, N))] / static_cast<double>(N);
    return c;
}

CVector trig_values(const CVector& coeffs, int q) {
    const auto N = static_cast<int>(coeffs.size());
    CVector v(N);
    if (N <= kDirectDftLimit) {
        for (int n = 1; n <= N; ++n) {
            Complex s = 0.0;
            for (int k = 0; k < N; ++k) s += coeffs(k) * std::conj(unit_root(static_cast<long long>(k + 1 - q) * n, N));
            v(n - 1) = s;
        }
        return v;
    }
    std::vector<Complex> buf(static_cast<std::size_t>(N), Complex{});
    for (int k = 0; k < N; ++k) buf[static_cast<std::size_t>(wrap(k + 1 - q, N))] = coeffs(k);
    fft_backward(buf);
    for (int m = 1; m < N; ++m) v(m - 1) = buf[static_cast<std::size_t>(m)];
    v(N - 1) = buf[0];
    return v;
}

TrigCoeffs trig_resolve(const Univariate& f, double tol) {
    constexpr int kMaxSize = 1 << 16;
    for (int N = 16; N <= kMaxSize; N *= 2) {
        const auto xs = fourier_points(N);
        CVector samples(N);
        for (int n = 0; n < N; ++n) samples(n) = f(xs[static_cast<std::size_t>(n)]);
        const int q = N / 2 + 1;
        const CVector c = trig_coefficients(samples, q);
        const double cmax = c.cwiseAbs().maxCoeff();
        if (cmax == 0.0) return TrigCoeffs::constant(0.0);

        const int tail_from = static_cast<int>(0.45 * N);
        bool tail_small = true;
        for (int k = 0; k < N && tail_small; ++k) {
            if (std::abs(k + 1 - q) >= tail_from && std::abs(c(k)) > tol * cmax) tail_small = false;
        }
        if (!tail_small) continue;

        // Trim well below the acceptance level so the dropped tail stays
        // small, unless that window no longer fits inside [1 - q, N - q].
        auto degree_at = [&](double level) {
            int d = 0;
            for (int k = 0; k < N; ++k)
                if (std::abs(c(k)) > level * cmax) d = std::max(d, std::abs(k + 1 - q));
            return d;
        };
        int degree = degree_at(std::max(0.01 * tol, 1e-15));
        if (degree > N - q) degree = degree_at(tol);
        CVector out(2 * degree + 1);
        for (int j = -degree; j <= degree; ++j) out(j + degree) = c(j + q - 1);
        return TrigCoeffs::symmetric(std::move(out));
    }
    throw ResolutionError("trig_resolve: no convergence within 2^16 samples");
}

}  // namespace qps
