#include "qpscatter/collocation.hpp"

#include <cmath>
#include <stdexcept>

#include "qpscatter/chebyshev.hpp"
#include "qpscatter/dtn.hpp"
#include "qpscatter/errors.hpp"
#include "qpscatter/fourier.hpp"
#include "dense_lu.hpp"

namespace qps {

namespace {

void check_sizes(int N, int M) {
    if (N < 2) throw ValidationError("collocation: N >= 2 required");
    if (M < 2) throw ValidationError("collocation: M >= 2 required");
}

}  // namespace

CMatrix collocation_x_operator(const IncidentWave& wave, int N) {
    const auto d = fourier_diff_matrices(N);
    const Complex a0 = wave.alpha0();
    CMatrix k = d.dxx.cast<Complex>() + 2.0 * kI * a0 * d.dx.cast<Complex>();
    k.diagonal().array() -= a0 * a0;
    return k;
}

CollocationSystem assemble_collocation(const ProblemSpec& problem, int N, int M, const CollocationOptions& options) {
    check_sizes(N, M);
    validate_medium(problem.medium, problem.wave);
    CollocationSystem sys;
    sys.modes = mode_constants(problem.wave, N, options.q, options.truncation);
    sys.M = M;

    const int stride = M + 1;
    const Eigen::Index size = static_cast<Eigen::Index>(N) * stride;
    if (size > kCollocationCap)
        throw SizeCapError("collocation: " + std::to_string(size) + " unknowns exceed the dense cap " + std::to_string(kCollocationCap));
    sys.A = CMatrix::Zero(size, size);
    sys.g = CVector::Zero(size);

    const RMatrix dy = cheb_diff_matrix(M);
    const RMatrix dyy = dy * dy;
    const auto bc = bc_rows_collocation(sys.modes, M, dy);
    sys.A.topRows(N) = bc.top;
    sys.A.bottomRows(N) = bc.bottom;
    sys.g.head(N) = bc.rhs_top;

    const CMatrix kx = collocation_x_operator(problem.wave, N);
    const double w2mu = problem.wave.omega * problem.wave.omega * problem.wave.mu;
    const auto xs = fourier_points(N);
    const auto ys = cheb_points(M);
    for (int n = 0; n < N; ++n) {
        for (int mi = 0; mi < M - 1; ++mi) {
            const int m = mi + 1;
            const Eigen::Index row = N + static_cast<Eigen::Index>(n) * (M - 1) + mi;
            for (int c = 0; c < N; ++c) sys.A(row, sys.unknown(m, c)) += kx(n, c);
            for (int k = 0; k <= M; ++k) sys.A(row, sys.unknown(k, n)) += dyy(m, k);
            sys.A(row, sys.unknown(m, n)) +=
                w2mu * problem.medium(xs[static_cast<std::size_t>(n)], ys[static_cast<std::size_t>(m)]);
        }
    }
    return sys;
}

SolutionField solve_collocation(CollocationSystem system) {
    const int N = system.N();
    const int M = system.M;
    const CVector v = detail::lu_solve(system.A, system.g);
    SolutionField sol;
    sol.representation = Representation::Values;
    sol.V = Eigen::Map<const CMatrix>(v.data(), M + 1, N);
    sol.modes = std::move(system.modes);
    sol.M = M;
    sol.method = "collocation";
    return sol;
}

SolutionField solve_layered_collocation(const ProblemSpec& problem, int N, int M, const CollocationOptions& options) {
    check_sizes(N, M);
    if (!problem.medium.is_layered()) throw ValidationError("solve_layered_collocation: medium is not layered");
    validate_medium(problem.medium, problem.wave);
    auto modes = mode_constants(problem.wave, N, options.q, options.truncation);
    const auto profile = problem.medium.layered_profile();

    const RMatrix dy = cheb_diff_matrix(M);
    const RMatrix dyy = dy * dy;
    const auto ys = cheb_points(M);
    const double w2mu = problem.wave.omega * problem.wave.omega * problem.wave.mu;
    const Complex a0 = problem.wave.alpha0();

    // Zero-frequency system: only mode 0 carries the incident trace.
    CMatrix a = CMatrix::Zero(M + 1, M + 1);
    a.row(0) = dy.row(0).cast<Complex>();
    a(0, 0) -= kI * modes.beta(0);
    for (int m = 1; m < M; ++m) {
        a.row(m) = dyy.row(m).cast<Complex>();
        a(m, m) += w2mu * profile(ys[static_cast<std::size_t>(m)]) - a0 * a0;
    }
    a.row(M) = dy.row(M).cast<Complex>();
    a(M, M) += kI * modes.gamma(0);

    CVector rhs = CVector::Zero(M + 1);
    rhs(0) = incident_trace(problem.wave) * std::sqrt(static_cast<double>(N));
    const CVector vhat = detail::lu_solve(a, rhs);

    SolutionField sol;
    sol.representation = Representation::Values;
    sol.V = (vhat / std::sqrt(static_cast<double>(N))).replicate(1, N);
    sol.modes = std::move(modes);
    sol.M = M;
    sol.method = "collocation-layered";
    return sol;
}

}  // namespace qps
