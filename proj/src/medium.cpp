#include "qpscatter/medium.hpp"

#include <cmath>
#include <vector>

#include "qpscatter/chebyshev.hpp"
#include "qpscatter/errors.hpp"
#include "qpscatter/fft.hpp"
#include "qpscatter/problem.hpp"

namespace qps {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Row m of the result holds the FFT of row m of the samples, scaled by 1/nx.
CMatrix row_trig_coeffs(const CMatrix& values) {
    CMatrix out(values.rows(), values.cols());
    std::vector<Complex> buf(static_cast<std::size_t>(values.cols()));
    for (Eigen::Index m = 0; m < values.rows(); ++m) {
        for (Eigen::Index i = 0; i < values.cols(); ++i) buf[static_cast<std::size_t>(i)] = values(m, i);
        fft_forward(buf);
        for (Eigen::Index i = 0; i < values.cols(); ++i)
            out(m, i) = buf[static_cast<std::size_t>(i)] / static_cast<double>(values.cols());
    }
    return out;
}

// Trigonometric interpolant of one row of FFT-ordered coefficients; the
// Nyquist term of an even grid is split symmetrically.
Complex eval_row(const CMatrix& coeffs, Eigen::Index m, double x) {
    const auto n = static_cast<int>(coeffs.cols());
    Complex sum = 0.0;
    for (int k = 0; k < n; ++k) {
        int j = k <= (n - 1) / 2 ? k : k - n;
        if (n % 2 == 0 && k == n / 2) {
            sum += coeffs(m, k) * std::cos(0.5 * n * x);
            continue;
        }
        sum += coeffs(m, k) * std::exp(kI * (static_cast<double>(j) * x));
    }
    return sum;
}

Complex eval_grid(const CMatrix& coeffs, double x, double y) {
    const int M = static_cast<int>(coeffs.rows()) - 1;
    if (M == 0) return eval_row(coeffs, 0, x);
    const RMatrix w = cheb_interpolation_matrix(M, {y});
    Complex sum = 0.0;
    for (int m = 0; m <= M; ++m) {
        if (w(0, m) != 0.0) sum += w(0, m) * eval_row(coeffs, m, x);
    }
    return sum;
}

}  // namespace

MediumSpec::MediumSpec() : variant_(Homogeneous{}), name_("homogeneous") {}

MediumSpec::MediumSpec(Variant v, std::string name) : variant_(std::move(v)), name_(std::move(name)) {
    if (const auto* g = std::get_if<SampledGrid>(&variant_)) {
        if (g->values.rows() < 2 || g->values.cols() < 1)
            throw ValidationError("sampled grid needs at least 2 Chebyshev rows and 1 column");
        grid_coeffs_ = std::make_shared<const CMatrix>(row_trig_coeffs(g->values));
    }
}

Complex MediumSpec::operator()(double x, double y) const {
    return std::visit(Overloaded{
                          [](const Homogeneous& h) { return h.value; },
                          [y](const Layered& l) { return l.profile(y); },
                          [x, y](const SeparableSum& s) {
                              Complex sum = 0.0;
                              for (const auto& t : s.terms) sum += t.phi(x) * t.psi(y);
                              return sum;
                          },
                          [this, x, y](const SampledGrid&) { return eval_grid(*grid_coeffs_, x, y); },
                          [x, y](const GeneralMedium& g) { return g.function(x, y); },
                      },
                      variant_);
}

bool MediumSpec::is_layered() const {
    return std::holds_alternative<Homogeneous>(variant_) || std::holds_alternative<Layered>(variant_);
}

bool MediumSpec::is_real_valued() const {
    if (const auto* h = std::get_if<Homogeneous>(&variant_)) return h->value.imag() == 0.0;
    const auto ys = cheb_points(32);
    for (int i = 0; i < 32; ++i) {
        const double x = 2.0 * kPi * i / 32.0;
        for (double y : ys) {
            const Complex e = (*this)(x, y);
            if (std::abs(e.imag()) > 1e-14 * std::max(1.0, std::abs(e))) return false;
        }
    }
    return true;
}

Univariate MediumSpec::layered_profile() const {
    if (const auto* h = std::get_if<Homogeneous>(&variant_)) {
        const Complex v = h->value;
        return [v](double) { return v; };
    }
    if (const auto* l = std::get_if<Layered>(&variant_)) return l->profile;
    throw ValidationError("medium '" + name_ + "' is not layered");
}

Univariate MediumSpec::x_average() const {
    if (is_layered()) return layered_profile();
    auto self = *this;
    return [self](double y) {
        constexpr int n = 128;
        Complex sum = 0.0;
        for (int i = 0; i < n; ++i) sum += self(2.0 * kPi * i / n, y);
        return sum / static_cast<double>(n);
    };
}

double validate_medium(const MediumSpec& medium, const IncidentWave& wave) {
    constexpr int kCandidates = 64;
    constexpr int kNx = 64;
    constexpr int kNy = 16;
    constexpr double kTol = 1e-10;
    for (int k = kCandidates; k >= 1; --k) {
        const double delta = static_cast<double>(k) / kCandidates;
        bool ok = true;
        for (int iy = 0; iy < kNy && ok; ++iy) {
            const double s = delta / 2.0 * iy / (kNy - 1);
            const double y_top = 1.0 - s;
            const double y_bot = -1.0 + s;
            for (int ix = 0; ix < kNx; ++ix) {
                const double x = 2.0 * kPi * ix / kNx;
                if (std::abs(medium(x, y_top) - wave.eps_plus) > kTol ||
                    std::abs(medium(x, y_bot) - wave.eps_minus) > kTol) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return delta;
    }
    throw MediumMismatchError("permittivity of medium '" + medium.name() +
                              "' does not match eps+/eps- near y = +-1");
}

}  // namespace qps
