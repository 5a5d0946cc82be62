#include "qpscatter/presets.hpp"

#include <algorithm>
#include <cmath>

#include "qpscatter/chebyshev.hpp"
#include "qpscatter/errors.hpp"

namespace qps {

namespace {

double x_factor(double x) { return std::cos(kPi * std::sin(0.5 * x)); }

}  // namespace

double bump(double y) {
    const double s = 1.0 - y * y;
    if (s <= 0.0) return 0.0;
    return std::exp(4.0 - 3.0 / s);
}

MediumSpec medium_homogeneous(Complex value) { return MediumSpec(Homogeneous{value}, "homogeneous"); }

MediumSpec medium_eps1() {
    return MediumSpec(Layered{[](double y) { return Complex{1.0 + bump(y), 0.0}; }}, "eps1");
}

MediumSpec medium_eps2() {
    SeparableSum sum;
    sum.terms.push_back({[](double) { return Complex{1.0}; }, [](double) { return Complex{1.0}; }});
    sum.terms.push_back({[](double x) { return Complex{std::exp(-x_factor(x))}; }, [](double y) { return Complex{bump(y)}; }});
    return MediumSpec(std::move(sum), "eps2");
}

MediumSpec medium_eps3() {
    return MediumSpec(GeneralMedium{[](double x, double y) {
                          const double s = 1.0 - y * y;
                          if (s <= 0.0) return Complex{1.0};
                          return Complex{1.0 + std::exp(4.0 - 3.0 / s - y * x_factor(x))};
                      }},
                      "eps3");
}

std::vector<std::string> medium_names() { return {"homogeneous", "eps1", "eps2", "eps3"}; }

MediumSpec medium_by_name(const std::string& name) {
    if (name == "homogeneous") return medium_homogeneous();
    if (name == "eps1") return medium_eps1();
    if (name == "eps2") return medium_eps2();
    if (name == "eps3") return medium_eps3();
    throw ValidationError("unknown medium '" + name + "'");
}

MediumSpec layered_from_table(const std::vector<double>& ys, const std::vector<Complex>& values) {
    if (ys.size() != values.size() || ys.empty()) throw ValidationError("layered table: need matching, non-empty y and eps columns");
    for (double y : ys)
        if (!(y >= -1.0 && y <= 1.0)) throw ValidationError("layered table: y outside [-1, 1]");
    const int n = static_cast<int>(ys.size());
    const int degree = std::min(n - 1, 32);
    RMatrix T(n, degree + 1);
    CVector b(n);
    for (int r = 0; r < n; ++r) {
        const double y = ys[static_cast<std::size_t>(r)];
        double t0 = 1.0, t1 = y;
        for (int i = 0; i <= degree; ++i) {
            T(r, i) = t0;
            const double t2 = 2.0 * y * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
        b(r) = values[static_cast<std::size_t>(r)];
    }
    ChebCoeffs fit;
    fit.coeffs = T.cast<Complex>().colPivHouseholderQr().solve(b);
    return MediumSpec(Layered{[fit](double y) { return fit(y); }}, "table");
}

}  // namespace qps
