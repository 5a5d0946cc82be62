#include <doctest.h>

#include <cmath>

#include <qpscatter/errors.hpp>
#include <qpscatter/medium.hpp>
#include <qpscatter/presets.hpp>
#include <qpscatter/problem.hpp>

using namespace qps;

TEST_CASE("boundary compatibility") {
    IncidentWave w;
    CHECK(validate_medium(medium_homogeneous(), w) == doctest::Approx(1.0));
    const double d = validate_medium(medium_eps1(), w);
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
    CHECK_THROWS_AS(validate_medium(medium_homogeneous(2.0), w), MediumMismatchError);
    CHECK_NOTHROW(validate_medium(medium_eps2(), w));
    CHECK_NOTHROW(validate_medium(medium_eps3(), w));
}

TEST_CASE("bump profile takes its limit at the ends") {
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(-1.0) == 0.0);
    CHECK(bump(0.0) == doctest::Approx(std::exp(1.0)));
    CHECK(medium_eps1()(0.3, 1.0) == Complex(1.0));
    CHECK(medium_eps3()(0.3, -1.0) == Complex(1.0));
}

TEST_CASE("presets agree with their closed forms") {
    for (double x : {0.0, 1.1, 3.0, 5.9}) {
        for (double y : {-0.9, -0.2, 0.0, 0.4, 0.95}) {
            const double c = std::cos(kPi * std::sin(x / 2));
            const double e1 = 1 + std::exp(3 / (y * y - 1) + 4);
            const double e2 = 1 + std::exp(3 / (y * y - 1) + 4 - c);
            const double e3 = 1 + std::exp(3 / (y * y - 1) + 4 - y * c);
            CHECK(std::abs(medium_eps1()(x, y) - e1) <= 1e-14 * e1);
            CHECK(std::abs(medium_eps2()(x, y) - e2) <= 1e-14 * e2);
            CHECK(std::abs(medium_eps3()(x, y) - e3) <= 1e-14 * e3);
        }
    }
}

TEST_CASE("x-average") {
    const auto avg = medium_eps2().x_average();
    // fine trapezoid oracle
    const int n = 4000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::exp(-std::cos(kPi * std::sin(kPi * i / n)));
    s /= n;
    for (double y : {-0.5, 0.0, 0.7}) CHECK(std::abs(avg(y) - (1.0 + bump(y) * s)) < 1e-13);
    CHECK(std::abs(medium_eps1().x_average()(0.2) - medium_eps1()(1.0, 0.2)) < 1e-14);
}

TEST_CASE("layered and real-valued classification") {
    CHECK(medium_homogeneous().is_layered());
    CHECK(medium_eps1().is_layered());
    CHECK_FALSE(medium_eps2().is_layered());
    CHECK(medium_eps3().is_real_valued());
    CHECK_FALSE(medium_homogeneous(Complex(1.0, 0.1)).is_real_valued());
}

TEST_CASE("sampled grid interpolates") {
    auto f = [](double x, double y) { return Complex(1.0 + 0.3 * std::cos(x) * (1 - y * y), 0.1 * std::sin(2 * x) * y * (1 - y * y)); };
    const int nx = 16, ny = 17;
    CMatrix v(ny, nx);
    for (int m = 0; m < ny; ++m)
        for (int i = 0; i < nx; ++i) v(m, i) = f(2 * kPi * i / nx, std::cos(m * kPi / (ny - 1)));
    MediumSpec g(SampledGrid{v});
    CHECK(std::abs(g(2 * kPi * 3 / nx, std::cos(5 * kPi / (ny - 1))) - v(5, 3)) < 1e-14);
    for (double x : {0.37, 2.2, 6.1})
        for (double y : {-0.81, 0.13, 0.66}) CHECK(std::abs(g(x, y) - f(x, y)) < 1e-13);
    // varies right up to y = +-1
    CHECK_THROWS_AS(validate_medium(g, IncidentWave{}), MediumMismatchError);
    MediumSpec flat(SampledGrid{CMatrix::Ones(ny, nx)});
    CHECK(validate_medium(flat, IncidentWave{}) == doctest::Approx(1.0));
}

TEST_CASE("registry and table media") {
    CHECK(medium_names().size() == 4);
    CHECK(medium_by_name("eps2").name() == "eps2");
    CHECK_THROWS_AS(medium_by_name("eps4"), ValidationError);
    std::vector<double> ys;
    std::vector<Complex> vals;
    for (int i = 0; i <= 20; ++i) {
        const double y = -1.0 + 0.1 * i;
        ys.push_back(y);
        vals.push_back(1.0 + y * y * (1 - y * y));
    }
    const auto t = layered_from_table(ys, vals);
    CHECK(t.is_layered());
    CHECK(std::abs(t(0.0, 0.35) - (1.0 + 0.35 * 0.35 * (1 - 0.35 * 0.35))) < 1e-12);
    CHECK_THROWS_AS(layered_from_table({0.0, 2.0}, {1.0, 1.0}), ValidationError);
}
