#include "qpscatter/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "qpscatter/errors.hpp"
#include "qpscatter/kernels.hpp"
#include "qpscatter/lowrank.hpp"
#include "qpscatter/ultraspherical.hpp"
#include "dense_lu.hpp"

namespace qps {

namespace {

void check_sizes(int M, int N) {
    if (N < 1) throw ValidationError("tensor: N >= 1 required");
    if (M < 3) throw ValidationError("tensor: M >= 3 required");
}

// (ij)^2 + 2 i alpha0 (ij) - alpha0^2, the symbol of the x-operator for mode j.
Complex x_symbol(Complex a0, int j) {
    const Complex ij = kI * static_cast<double>(j);
    return ij * ij + 2.0 * kI * a0 * ij - a0 * a0;
}

BandedOperator conversion_s1s0(int M) { return multiply(conversion_operator(1, M), conversion_operator(0, M)); }

// Q S_1 S_0 M_0[psi] Q^T, formed at padded size so truncation is exact.
BandedOperator q_psi(const ChebCoeffs& psi, int M) {
    const int P = M + 8;
    return multiply(conversion_s1s0(P), mult_operator_cheb(psi, P)).truncated(M - 2, M);
}

double omega2mu(const IncidentWave& wave) { return wave.omega * wave.omega * wave.mu; }

ChebCoeffs add_cheb(const ChebCoeffs& a, const ChebCoeffs& b, Complex scale) {
    const int n = std::max(a.size(), b.size());
    ChebCoeffs out;
    out.coeffs = CVector::Zero(n);
    for (int i = 0; i < n; ++i) out.coeffs(i) = a.at(i) + scale * b.at(i);
    return out;
}

SolutionField layered_solution(ModeConstants modes, int M, double w2mu, const ChebCoeffs& profile) {
    const auto ops = layered_operators(profile, M, w2mu);
    const auto bc = bc_rows_tensor(modes, M);
    const int p0 = modes.q - 1;
    const auto sys = layered_mode_system(ops, bc, modes, p0);
    const CVector col = solve_almost_banded(sys);

    SolutionField sol;
    sol.representation = Representation::Coefficients;
    sol.V = CMatrix::Zero(M, modes.N);
    sol.V.col(p0) = col;
    sol.modes = std::move(modes);
    sol.M = M;
    sol.method = "tensor-layered";
    return sol;
}

SolutionField coefficient_solution(const TensorSystem& system, const CVector& x, const char* method) {
    SolutionField sol;
    sol.representation = Representation::Coefficients;
    sol.V = Eigen::Map<const CMatrix>(x.data(), system.M, system.N());
    sol.modes = system.modes;
    sol.M = system.M;
    sol.method = method;
    return sol;
}

}  // namespace

bool SeparableMedium::layered() const {
    return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.phi.degree() == 0; });
}

ChebCoeffs SeparableMedium::x_average() const {
    ChebCoeffs out = ChebCoeffs::constant(0.0);
    for (const auto& t : terms) out = add_cheb(out, t.psi, t.phi.at(0));
    return out;
}

Complex SeparableMedium::operator()(double x, double y) const {
    Complex s = 0.0;
    for (const auto& t : terms) s += t.phi(x) * t.psi(y);
    return s;
}

SeparableMedium resolve_medium(const MediumSpec& medium, const ResolveOptions& options) {
    SeparableMedium out;
    const auto one = TrigCoeffs::constant(1.0);
    const auto& v = medium.variant();
    if (const auto* h = std::get_if<Homogeneous>(&v)) {
        out.terms.push_back({one, ChebCoeffs::constant(h->value)});
    } else if (const auto* l = std::get_if<Layered>(&v)) {
        out.terms.push_back({one, cheb_resolve(l->profile, options.tol)});
    } else if (const auto* s = std::get_if<SeparableSum>(&v)) {
        for (const auto& t : s->terms)
            out.terms.push_back({trig_resolve(t.phi, options.tol), cheb_resolve(t.psi, options.tol)});
    } else {
        const auto lr = gecp_lowrank([&medium](double x, double y) { return medium(x, y); }, options.tol,
                                     options.max_rank);
        for (const auto& t : lr.terms) {
            ChebCoeffs psi = t.psi;
            psi.coeffs *= t.weight;
            out.terms.push_back({t.phi, psi});
        }
    }
    return out;
}

TensorSystem assemble_tensor(const ProblemSpec& problem, int M, int N, const SeparableMedium& medium,
                             const TensorOptions& options) {
    check_sizes(M, N);
    validate_medium(problem.medium, problem.wave);
    TensorSystem sys;
    sys.modes = mode_constants(problem.wave, N, options.q, options.truncation);
    sys.M = M;
    sys.omega2mu = omega2mu(problem.wave);

    const Complex a0 = problem.wave.alpha0();
    sys.X.resize(N);
    for (int p = 0; p < N; ++p) sys.X(p) = x_symbol(a0, sys.modes.mode(p));

    sys.QC = conversion_s1s0(M).truncated(M - 2, M);
    sys.QY = diff_operator(2, M).truncated(M - 2, M);
    for (const auto& t : medium.terms) {
        sys.Phi.push_back(toeplitz_mult(t.phi, N, sys.modes.q));
        sys.QPsi.push_back(q_psi(t.psi, M));
    }
    sys.bc = bc_rows_tensor(sys.modes, M);
    sys.rhs = CVector::Zero(sys.size());
    sys.rhs.head(N) = sys.bc.rhs_top;
    return sys;
}

CVector apply_operator(const TensorSystem& system, const CVector& v) {
    const int M = system.M;
    const int N = system.N();
    const Eigen::Map<const CMatrix> V(v.data(), M, N);
    const CMatrix W = kernels::parallel::tensor_interior(system, V);
    CVector out(system.size());
    out.head(N) = system.bc.apply_top(V);
    out.segment(N, N) = system.bc.apply_bottom(V);
    out.tail(static_cast<Eigen::Index>(M - 2) * N) = Eigen::Map<const CVector>(W.data(), W.size());
    return out;
}

CMatrix materialize(const TensorSystem& system) {
    const int M = system.M;
    const int N = system.N();
    const Eigen::Index n = system.size();
    CMatrix A = CMatrix::Zero(n, n);
    A.topRows(N) = system.bc.top_block();
    A.middleRows(N, N) = system.bc.bottom_block();

    const CMatrix QC = system.QC.to_dense();
    const CMatrix QY = system.QY.to_dense();
    std::vector<CMatrix> QPsi;
    for (const auto& op : system.QPsi) QPsi.push_back(op.to_dense());

    const Eigen::Index base = 2 * static_cast<Eigen::Index>(N);
    for (int j = 0; j < N; ++j) {
        const Eigen::Index r0 = base + static_cast<Eigen::Index>(j) * (M - 2);
        A.block(r0, static_cast<Eigen::Index>(j) * M, M - 2, M) += system.X(j) * QC + QY;
        for (std::size_t k = 0; k < QPsi.size(); ++k) {
            const auto& phi = system.Phi[k];
            for (int l = phi.col_begin(j); l < phi.col_end(j); ++l)
                A.block(r0, static_cast<Eigen::Index>(l) * M, M - 2, M) += system.omega2mu * phi(j, l) * QPsi[k];
        }
    }
    return A;
}

SolutionField solve_tensor_dense(const TensorSystem& system, Eigen::Index dense_cap) {
    if (system.size() > dense_cap)
        throw SizeCapError("tensor: " + std::to_string(system.size()) + " unknowns exceed the dense cap " +
                           std::to_string(dense_cap));
    CMatrix A = materialize(system);
    const CVector x = detail::lu_solve(A, system.rhs);
    return coefficient_solution(system, x, "tensor-dense");
}

LayeredOperators layered_operators(const ChebCoeffs& profile, int M, double w2mu) {
    if (M < 3) throw ValidationError("tensor: M >= 3 required");
    LayeredOperators ops;
    ops.QC = conversion_s1s0(M).truncated(M - 2, M);
    ops.QY = diff_operator(2, M).truncated(M - 2, M);
    ops.QPsi = q_psi(profile, M);
    ops.omega2mu = w2mu;
    return ops;
}

AlmostBandedSystem layered_mode_system(const LayeredOperators& ops, const TensorBcRows& bc, const ModeConstants& modes,
                                       int position) {
    const int M = bc.M;
    AlmostBandedSystem sys;
    sys.dense_rows.resize(2, M);
    sys.dense_rows.row(0) = bc.b1.cast<Complex>().transpose() - bc.diagonals.lambda_beta(position) * bc.a1.cast<Complex>().transpose();
    sys.dense_rows.row(1) = bc.b2.cast<Complex>().transpose() + bc.diagonals.lambda_gamma(position) * bc.a2.cast<Complex>().transpose();
    const Complex x = x_symbol(modes.wave.alpha0(), modes.mode(position));
    sys.body = add(add(ops.QY, ops.QPsi.scaled(ops.omega2mu)), ops.QC.scaled(x));
    sys.rhs = CVector::Zero(M);
    sys.rhs(0) = bc.rhs_top(position);
    return sys;
}

SolutionField solve_layered_tensor(const ProblemSpec& problem, int M, int N, const TensorOptions& options,
                                   const ResolveOptions& resolve) {
    check_sizes(M, N);
    if (!problem.medium.is_layered()) throw ValidationError("solve_layered_tensor: medium is not layered");
    validate_medium(problem.medium, problem.wave);
    auto modes = mode_constants(problem.wave, N, options.q, options.truncation);
    const auto profile = cheb_resolve(problem.medium.layered_profile(), resolve.tol);
    return layered_solution(std::move(modes), M, omega2mu(problem.wave), profile);
}

LayeredPreconditioner::LayeredPreconditioner(const ModeConstants& modes, int M, double w2mu, const ChebCoeffs& profile)
    : M_(M) {
    const auto ops = layered_operators(profile, M, w2mu);
    const auto bc = bc_rows_tensor(modes, M);
    const int N = modes.N;
    factors_.resize(static_cast<std::size_t>(N));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < N; ++p) {
        try {
            const auto sys = layered_mode_system(ops, bc, modes, p);
            factors_[static_cast<std::size_t>(p)] = AlmostBandedQR(sys.dense_rows, sys.body);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

CVector LayeredPreconditioner::apply(const CVector& residual) const {
    const int N = factorization_count();
    const int M = M_;
    CMatrix rhs(M, N);
    const Eigen::Index base = 2 * static_cast<Eigen::Index>(N);
    for (int p = 0; p < N; ++p) {
        rhs(0, p) = residual(p);
        rhs(1, p) = residual(N + p);
        rhs.col(p).tail(M - 2) = residual.segment(base + static_cast<Eigen::Index>(p) * (M - 2), M - 2);
    }
    const CMatrix V = kernels::parallel::solve_modes(factors_, rhs);
    return Eigen::Map<const CVector>(V.data(), V.size());
}

TensorSolveResult solve_tensor(const ProblemSpec& problem, int M, int N, const TensorSolveOptions& options) {
    check_sizes(M, N);
    validate_medium(problem.medium, problem.wave);
    return solve_tensor(problem, M, N, resolve_medium(problem.medium, options.resolve), options);
}

TensorSolveResult solve_tensor(const ProblemSpec& problem, int M, int N, const SeparableMedium& medium,
                               const TensorSolveOptions& options) {
    check_sizes(M, N);
    TensorSolveResult result;
    result.medium = medium;

    if (medium.layered() && options.strategy == TensorStrategy::Auto) {
        validate_medium(problem.medium, problem.wave);
        auto modes = mode_constants(problem.wave, N, options.system.q, options.system.truncation);
        result.solution = layered_solution(std::move(modes), M, omega2mu(problem.wave), medium.x_average());
        result.path = "layered";
        return result;
    }

    const auto system = assemble_tensor(problem, M, N, medium, options.system);
    const bool dense = options.strategy == TensorStrategy::Dense ||
                       (options.strategy == TensorStrategy::Auto && system.size() <= options.dense_cap);
    if (dense) {
        result.solution = solve_tensor_dense(system, options.dense_cap);
        result.path = "dense";
        return result;
    }

    std::optional<LayeredPreconditioner> precond;
    if (options.preconditioner == PreconditionerKind::XAverage) {
        precond.emplace(system.modes, M, system.omega2mu, medium.x_average());
    } else if (options.preconditioner == PreconditionerKind::Custom) {
        if (!options.precond_profile) throw ValidationError("tensor: custom preconditioner needs a profile");
        precond.emplace(system.modes, M, system.omega2mu, cheb_resolve(options.precond_profile, options.resolve.tol));
    }
    LinearMap pmap;
    if (precond) pmap = [&precond](const CVector& r) { return precond->apply(r); };
    auto out = gmres([&system](const CVector& v) { return apply_operator(system, v); }, pmap, system.rhs,
                     options.gmres_tol, options.maxit);
    result.solution = coefficient_solution(system, out.x, "tensor-gmres");
    result.krylov = std::move(out.log);
    result.path = "gmres";
    return result;
}

}  // namespace qps
