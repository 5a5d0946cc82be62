#include <doctest.h>

#include <cmath>

#include <qpscatter/chebyshev.hpp>
#include <qpscatter/errors.hpp>
#include <qpscatter/presets.hpp>

#include "oracles.hpp"

using namespace qps;

TEST_CASE("grid") {
    const auto y = cheb_points(4);
    CHECK(y.front() == 1.0);
    CHECK(y.back() == -1.0);
    CHECK(y[2] == 0.0);
    for (std::size_t m = 1; m < y.size(); ++m) CHECK(y[m] < y[m - 1]);
}

TEST_CASE("differentiation matrix") {
    const RMatrix d1 = cheb_diff_matrix(1);
    CHECK(d1(0, 0) == doctest::Approx(0.5));
    CHECK(d1(0, 1) == doctest::Approx(-0.5));
    CHECK(d1(1, 0) == doctest::Approx(0.5));
    CHECK(d1(1, 1) == doctest::Approx(-0.5));
    CHECK(cheb_diff_matrix(2)(0, 0) == doctest::Approx(1.5));
    for (int M : {1, 2, 5, 16, 64}) CHECK(cheb_diff_matrix(M).rowwise().sum().cwiseAbs().maxCoeff() <= 1e-11);

    const int M = 8;
    const RMatrix D = cheb_diff_matrix(M);
    const auto y = cheb_points(M);
    for (int deg = 0; deg <= 5; ++deg) {
        RVector p(M + 1), dp(M + 1);
        for (int m = 0; m <= M; ++m) {
            p(m) = std::pow(y[m] + 0.3, deg);
            dp(m) = deg == 0 ? 0.0 : deg * std::pow(y[m] + 0.3, deg - 1);
        }
        CHECK((D * p - dp).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, dp.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("downsampling") {
    const RMatrix p2 = downsampling_matrix(2);
    CHECK(p2.rows() == 1);
    CHECK(p2(0, 1) == 1.0);
    CHECK(p2(0, 0) == 0.0);
    const RMatrix p3 = downsampling_matrix(3);
    CHECK((p3 - RMatrix::Identity(4, 4).middleRows(1, 2)).norm() == 0.0);
    for (int M : {2, 3, 10}) {
        const RMatrix p = downsampling_matrix(M);
        CHECK((p * p.transpose() - RMatrix::Identity(M - 1, M - 1)).norm() == 0.0);
    }
}

TEST_CASE("value/coefficient transforms") {
    ChebTransform t4(4);
    CVector v(5);
    const auto y = cheb_points(4);
    for (int m = 0; m <= 4; ++m) v(m) = 2 * y[m] * y[m] - 1;
    CVector e2 = CVector::Zero(5);
    e2(2) = 1.0;
    CHECK(oracle::max_abs(t4.to_coeffs(v) - e2) <= 1e-14);
    CVector e0 = CVector::Zero(5);
    e0(0) = 1.0;
    CHECK(oracle::max_abs(t4.to_coeffs(CVector(CVector::Ones(5))) - e0) <= 1e-14);

    for (int M : {1, 16, 32, 33, 64, 100}) {
        ChebTransform t(M);
        const CVector c = oracle::random_vector(M + 1);
        const CVector vals = t.to_values(c);
        const auto ym = cheb_points(M);
        for (int m : {0, M / 2, M}) CHECK(std::abs(vals(m) - oracle::ultra_series(c, 0, ym[m])) <= 1e-12 * M);
        CHECK(oracle::max_abs(t.to_coeffs(vals) - c) <= 1e-12);
    }
}

TEST_CASE("series evaluation and derivative") {
    ChebCoeffs w;
    w.coeffs = oracle::random_vector(9);
    for (double y : {-1.0, -0.4, 0.0, 0.77, 1.0}) {
        CHECK(std::abs(w(y) - oracle::ultra_series(w.coeffs, 0, y)) <= 1e-13);
        CHECK(std::abs(w.derivative()(y) - oracle::cheb_series_derivative(w.coeffs, 1, y)) <= 1e-12);
    }
    Complex s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        s1 += w.coeffs(i);
        s2 += (i % 2 ? -1.0 : 1.0) * w.coeffs(i);
    }
    CHECK(std::abs(w(1.0) - s1) <= 1e-13);
    CHECK(std::abs(w(-1.0) - s2) <= 1e-13);

    // sum i^2 w_i is the derivative at +1, cross-checked with D_y on values
    const int M = 8;
    ChebTransform t(M);
    CVector c = CVector::Zero(M + 1);
    c.head(9) = w.coeffs;
    const CVector dv = cheb_diff_matrix(M).cast<Complex>() * t.to_values(c);
    Complex b = 0.0;
    for (int i = 0; i <= M; ++i) b += double(i * i) * c(i);
    CHECK(std::abs(dv(0) - b) <= 1e-10);
}

TEST_CASE("adaptive Chebyshev resolution") {
    const auto c = cheb_resolve([](double y) { return Complex(y * y); }, 1e-14);
    CHECK(c.degree() == 2);
    CHECK(std::abs(c.at(0) - 0.5) < 1e-15);
    CHECK(std::abs(c.at(1)) < 1e-15);
    CHECK(std::abs(c.at(2) - 0.5) < 1e-15);

    auto f = [](double y) { return Complex(1.0 + bump(y)); };
    const auto r = cheb_resolve(f, 1e-12);
    double err = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double y = -1.0 + i / 1000.0;
        err = std::max(err, std::abs(r(y) - f(y)));
    }
    CHECK(err <= 1e-11);

    CHECK_THROWS_AS(cheb_resolve([](double y) { return Complex(std::abs(y)); }, 1e-12), ResolutionError);
}

TEST_CASE("barycentric interpolation") {
    const int M = 12;
    const auto y = cheb_points(M);
    RVector p(M + 1);
    for (int m = 0; m <= M; ++m) p(m) = std::pow(y[m], 7) - 2 * y[m];
    const std::vector<double> at{-0.93, -0.1, 0.0, 0.5, y[3]};
    const RVector r = cheb_interpolation_matrix(M, at) * p;
    for (std::size_t k = 0; k < at.size(); ++k) CHECK(r(k) == doctest::Approx(std::pow(at[k], 7) - 2 * at[k]).epsilon(1e-13));
}
