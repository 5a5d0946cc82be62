#include "qpscatter/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qpscatter/chebyshev.hpp"
#include "qpscatter/errors.hpp"
#include "qpscatter/fourier.hpp"
#include "qpscatter/kernels.hpp"

namespace qps {

namespace {

constexpr double kGuard = 30.0;

bool is_real(Complex z) { return z.imag() == 0.0; }

}  // namespace

std::pair<CVector, CVector> boundary_traces(const SolutionField& s) {
    const int N = s.N();
    if (s.representation == Representation::Values) {
        const Eigen::Index last = s.V.rows() - 1;
        return {trig_coefficients(s.V.row(0).transpose(), s.modes.q),
                trig_coefficients(s.V.row(last).transpose(), s.modes.q)};
    }
    CVector top = CVector::Zero(N), bottom = CVector::Zero(N);
    for (Eigen::Index i = 0; i < s.V.rows(); ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        top += s.V.row(i).transpose();
        bottom += sign * s.V.row(i).transpose();
    }
    return {top, bottom};
}

RayleighCoefficients rayleigh_coefficients(const SolutionField& s) {
    const auto& modes = s.modes;
    const auto [top, bottom] = boundary_traces(s);
    const Complex b0 = modes.wave.beta0();
    RayleighCoefficients rt;
    rt.q = modes.q;
    const auto N = static_cast<std::size_t>(modes.N);
    rt.r.assign(N, 0.0);
    rt.t.assign(N, 0.0);
    rt.r_guarded.assign(N, false);
    rt.t_guarded.assign(N, false);
    for (std::size_t p = 0; p < N; ++p) {
        const int j = modes.mode(static_cast<int>(p));
        const Complex beta = modes.betas[p];
        const Complex gamma = modes.gammas[p];
        const Complex incident = (j == 0) ? std::exp(-kI * b0) : Complex{};
        if (beta.imag() > kGuard)
            rt.r_guarded[p] = true;
        else
            rt.r[p] = (top(static_cast<Eigen::Index>(p)) - incident) * std::exp(-kI * beta);
        if (gamma.imag() > kGuard)
            rt.t_guarded[p] = true;
        else
            rt.t[p] = bottom(static_cast<Eigen::Index>(p)) * std::exp(-kI * gamma);
    }
    return rt;
}

double energy_balance(const RayleighCoefficients& rt, const ModeConstants& modes) {
    double flux = 0.0;
    for (int j : modes.propagating_up) {
        if (!modes.contains(j)) continue;
        flux += modes.beta(j).real() * std::norm(rt.r_at(j));
    }
    for (int j : modes.propagating_down) {
        if (!modes.contains(j)) continue;
        flux += modes.gamma(j).real() * std::norm(rt.t_at(j));
    }
    return flux / modes.wave.beta0().real();
}

CMatrix evaluate_field(const SolutionField& s, const std::vector<double>& xs, const std::vector<double>& ys,
                       bool reconstruct_u) {
    const int q = s.modes.q;
    CMatrix out;
    if (s.representation == Representation::Coefficients) {
        out = kernels::parallel::evaluate_coefficients(s.V, q, xs, ys);
    } else {
        const int M = static_cast<int>(s.V.rows()) - 1;
        const RMatrix I = cheb_interpolation_matrix(M, ys);
        const CMatrix rows = I.cast<Complex>() * s.V;  // ys x Fourier nodes
        CMatrix coeffs(rows.rows(), rows.cols());
        for (Eigen::Index r = 0; r < rows.rows(); ++r) coeffs.row(r) = trig_coefficients(rows.row(r).transpose(), q).transpose();
        CMatrix E(s.N(), static_cast<Eigen::Index>(xs.size()));
        for (std::size_t c = 0; c < xs.size(); ++c)
            for (int k = 0; k < s.N(); ++k)
                E(k, static_cast<Eigen::Index>(c)) = std::exp(kI * (static_cast<double>(k + 1 - q) * xs[c]));
        out = coeffs * E;
    }
    if (reconstruct_u) {
        const Complex a0 = s.modes.wave.alpha0();
        for (std::size_t c = 0; c < xs.size(); ++c) out.col(static_cast<Eigen::Index>(c)) *= std::exp(kI * a0 * xs[c]);
    }
    return out;
}

double compare_methods(const SolutionField& a, const SolutionField& b, const std::vector<double>& xs,
                       const std::vector<double>& ys) {
    return (evaluate_field(a, xs, ys, true) - evaluate_field(b, xs, ys, true)).cwiseAbs().maxCoeff();
}

CMatrix spectral_coefficients(const SolutionField& s) {
    if (s.representation == Representation::Coefficients) return s.V;
    const CMatrix c = ChebTransform(s.M).to_coeffs(s.V);
    CMatrix out(c.rows(), c.cols());
    for (Eigen::Index m = 0; m < c.rows(); ++m) out.row(m) = trig_coefficients(CVector(c.row(m).transpose()), s.modes.q).transpose();
    return out;
}

double coefficient_tail(const SolutionField& s) {
    const CMatrix c = spectral_coefficients(s);
    const double top = c.cwiseAbs().maxCoeff();
    if (top == 0.0) return 0.0;
    const Eigen::Index rows = std::min<Eigen::Index>(2, c.rows());
    const Eigen::Index cols = std::min<Eigen::Index>(2, c.cols());
    double tail = c.bottomRows(rows).cwiseAbs().maxCoeff();
    tail = std::max(tail, c.leftCols(cols).cwiseAbs().maxCoeff());
    tail = std::max(tail, c.rightCols(cols).cwiseAbs().maxCoeff());
    return tail / top;
}

std::vector<double> uniform_points(double lo, double hi, int n) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return p;
}

DiagnosticsReport diagnose(const SolutionField& solution, const ProblemSpec& problem,
                           const std::optional<KrylovLog>& krylov) {
    DiagnosticsReport rep;
    rep.coefficients = rayleigh_coefficients(solution);
    const auto& w = problem.wave;
    if (problem.medium.is_real_valued() && is_real(w.eps_plus) && is_real(w.eps_minus))
        rep.energy_defect = std::abs(energy_balance(rep.coefficients, solution.modes) - 1.0);
    rep.propagating_up = solution.modes.propagating_up;
    rep.propagating_down = solution.modes.propagating_down;
    rep.method = solution.method;
    rep.N = solution.N();
    rep.M = solution.M;
    rep.q = solution.modes.q;
    rep.krylov = krylov;
    return rep;
}

}  // namespace qps
