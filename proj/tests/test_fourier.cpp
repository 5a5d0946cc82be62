#include <doctest.h>

#include <cmath>

#include <qpscatter/errors.hpp>
#include <qpscatter/fourier.hpp>
#include <qpscatter/problem.hpp>

#include "oracles.hpp"

using namespace qps;

namespace {

// Samples of f at fourier_points(N).
template <class F>
CVector grid(int N, F f) {
    const auto xs = fourier_points(N);
    CVector v(N);
    for (int n = 0; n < N; ++n) v(n) = f(xs[static_cast<std::size_t>(n)]);
    return v;
}

}  // namespace

TEST_CASE("grid is x_n = 2 pi n / N, n = 1..N") {
    const auto xs = fourier_points(4);
    CHECK(xs.front() == doctest::Approx(kPi / 2));
    CHECK(xs.back() == doctest::Approx(2 * kPi));
}

TEST_CASE("differentiation matrix entries") {
    CHECK(oracle::max_abs(fourier_diff_matrices(2).dx.cast<Complex>()) == 0.0);
    const auto d4 = fourier_diff_matrices(4);
    // cardinal-function oracle: d/dx of the interpolant of e_2 at x_1
    CHECK(d4.dx(0, 1) == doctest::Approx(0.5));
    CHECK(d4.dx(1, 0) == doctest::Approx(-0.5));
    const double h = 2 * kPi / 5;
    const auto d5 = fourier_diff_matrices(5);
    for (int i = 0; i < 5; ++i) CHECK(d5.dxx(i, i) == doctest::Approx(-kPi * kPi / (3 * h * h) + 1.0 / 12));
}

TEST_CASE("differentiation of trigonometric polynomials") {
    for (int N : {4, 5, 8, 9, 16, 17}) {
        const auto d = fourier_diff_matrices(N);
        CHECK(d.dx.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
        const int deg = (N - 1) / 2;
        const CVector p = grid(N, [deg](double x) { return std::cos(deg * x) + Complex(0, 1) * std::sin(x) + 0.3; });
        const CVector dp = grid(N, [deg](double x) { return -deg * std::sin(deg * x) + Complex(0, 1) * std::cos(x); });
        const CVector ddp = grid(N, [deg](double x) { return -double(deg * deg) * std::cos(deg * x) - Complex(0, 1) * std::sin(x); });
        CHECK(oracle::max_abs(d.dx.cast<Complex>() * p - dp) <= 1e-10 * deg);
        CHECK(oracle::max_abs(d.dxx.cast<Complex>() * p - ddp) <= 1e-10 * deg * deg);
    }
    for (int N : {5, 9}) {
        const auto d = fourier_diff_matrices(N);
        CHECK((d.dx * d.dx - d.dxx).cwiseAbs().maxCoeff() <= 1e-12);
    }
    const auto d4 = fourier_diff_matrices(4);
    CHECK((d4.dx * d4.dx - d4.dxx).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("DFT matrices") {
    const auto one = dft_matrices(1, 1);
    CHECK(std::abs(one.F(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(one.G(0, 0) - 1.0) < 1e-15);
    for (int N = 1; N <= 9; ++N) {
        for (int q : {1, auto_offset(N), N}) {
            const auto m = dft_matrices(N, q);
            const CMatrix I = CMatrix::Identity(N, N);
            CHECK(oracle::max_abs(m.F * m.F.adjoint() - I) <= 1e-13);
            CHECK(oracle::max_abs(m.G * m.G.adjoint() - I) <= 1e-13);
        }
    }
    const auto m = dft_matrices(4, 3);
    CHECK(std::abs(m.F(2, 3) - std::exp(Complex(0, -2 * kPi * 2 * 3 / 4)) / 2.0) < 1e-15);
    CHECK(std::abs(m.G(0, 0) - std::exp(Complex(0, -2 * kPi * (1 - 3) * 1 / 4)) / 2.0) < 1e-15);
}

TEST_CASE("symbols") {
    const Complex i(0, 1);
    const auto s5 = fourier_symbols(5);
    const double l5[] = {0, 1, 2, -2, -1};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(s5.lambda_x(k) - i * l5[k]) == 0.0);
    const auto s4 = fourier_symbols(4);
    const double x4[] = {0, 1, 0, -1}, xx4[] = {0, 1, 4, 1};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(s4.lambda_x(k) - i * x4[k]) == 0.0);
        CHECK(std::abs(s4.lambda_xx(k) + xx4[k]) == 0.0);
        CHECK(std::abs(s4.lambda_x(k) * s4.lambda_x(k) + (k == 2 ? 0.0 : xx4[k])) == 0.0);
    }
}

TEST_CASE("diagonalization by F") {
    for (int N : {4, 5, 8, 9}) {
        const auto d = fourier_diff_matrices(N);
        const auto F = dft_matrices(N, 1).F;
        const auto s = fourier_symbols(N);
        const CMatrix ax = F * d.dx.cast<Complex>() * F.adjoint();
        const CMatrix axx = F * d.dxx.cast<Complex>() * F.adjoint();
        CHECK(oracle::max_abs(ax - CMatrix(s.lambda_x.asDiagonal())) <= 1e-12);
        CHECK(oracle::max_abs(axx - CMatrix(s.lambda_xx.asDiagonal())) <= 1e-12);
    }
}

TEST_CASE("Toeplitz multiplication") {
    const int N = 9, q = 5;
    CHECK(oracle::max_abs(toeplitz_mult(TrigCoeffs::constant(1.0), N, q).to_dense() - CMatrix::Identity(N, N)) == 0.0);

    TrigCoeffs shift;
    shift.coeffs = CVector::Zero(3);
    shift.coeffs(2) = 1.0;  // e^{ix}
    shift.q = 2;
    const CVector w = oracle::random_vector(N);
    const CVector s = toeplitz_mult(shift, N, q).apply(w);
    CHECK(std::abs(s(0)) == 0.0);
    for (int k = 1; k < N; ++k) CHECK(s(k) == w(k - 1));

    TrigCoeffs a = TrigCoeffs::symmetric(oracle::random_vector(7));
    const auto T = toeplitz_mult(a, N, q);
    CHECK(T.lower() == 3);
    CHECK(T.upper() == 3);
    const CVector tw = T.apply(w);
    // convolution of the coefficient sequences, restricted to the window
    for (int r = 0; r < N; ++r) {
        const int j = r + 1 - q;
        Complex c = 0.0;
        for (int k = 0; k < N; ++k) {
            const int m = j - (k + 1 - q);
            if (std::abs(m) <= 3) c += a.at(m) * w(k);
        }
        CHECK(std::abs(tw(r) - c) <= 1e-13);
    }
}

TEST_CASE("coefficient transforms, direct and FFT paths") {
    for (int N : {7, 16, 64, 65, 128, 250}) {
        const int q = auto_offset(N);
        const CVector c = oracle::random_vector(N);
        const CVector v = trig_values(c, q);
        const auto xs = fourier_points(N);
        for (int n : {0, N / 3, N - 1}) {
            Complex s = 0.0;
            for (int k = 0; k < N; ++k) s += c(k) * std::exp(Complex(0, (k + 1 - q) * xs[static_cast<std::size_t>(n)]));
            CHECK(std::abs(v(n) - s) <= 1e-12 * N);
        }
        CHECK(oracle::max_abs(trig_coefficients(v, q) - c) <= 1e-13 * N);
    }
}

TEST_CASE("adaptive trigonometric resolution") {
    const auto c = trig_resolve([](double x) { return Complex(std::cos(x)); }, 1e-14);
    CHECK(c.degree() == 1);
    CHECK(std::abs(c.at(1) - 0.5) < 1e-15);
    CHECK(std::abs(c.at(-1) - 0.5) < 1e-15);

    auto f = [](double x) { return Complex(std::exp(4 - std::cos(kPi * std::sin(x / 2)))); };
    const auto r = trig_resolve(f, 1e-12);
    CHECK(r.degree() < 64);
    double err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = 2 * kPi * i / 1000.0;
        err = std::max(err, std::abs(r(x) - f(x)));
    }
    CHECK(err <= 1e-11);

    CHECK_THROWS_AS(trig_resolve([](double x) { return Complex(std::sin(x) >= 0 ? 1.0 : -1.0); }, 1e-12), ResolutionError);
}
