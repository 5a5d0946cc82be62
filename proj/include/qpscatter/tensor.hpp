#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpscatter/almost_banded.hpp"
#include "qpscatter/banded.hpp"
#include "qpscatter/chebyshev.hpp"
#include "qpscatter/dtn.hpp"
#include "qpscatter/fourier.hpp"
#include "qpscatter/gmres.hpp"
#include "qpscatter/problem.hpp"
#include "qpscatter/solution.hpp"

namespace qps {

/// eps(x, y) = sum_k phi_k(x) psi_k(y) with resolved factors.
struct SeparableMedium {
    struct Term {
        TrigCoeffs phi;
        ChebCoeffs psi;
    };
    std::vector<Term> terms;

    int rank() const { return static_cast<int>(terms.size()); }
    /// All phi_k constant.
    bool layered() const;
    /// Chebyshev coefficients of the x-average sum_k phi_k,0 psi_k(y).
    ChebCoeffs x_average() const;
    Complex operator()(double x, double y) const;
};

struct ResolveOptions {
    double tol = 1e-13;  ///< relative tolerance for trig/Chebyshev resolution and low-rank compression
    int max_rank = 32;
};

/// Resolves every factor of the medium; sampled and general media are
/// compressed by gecp_lowrank first.
SeparableMedium resolve_medium(const MediumSpec& medium, const ResolveOptions& options = {});

/// Coefficient-space system over vec(V), V of size M x N. Rows: N top
/// boundary rows, N bottom boundary rows, then (M-2) N interior rows (block j
/// holds the interior equations of mode column j):
///   QC V X^T + QY V + omega^2 mu sum_k QPsi_k V Phi_k^T = 0.
struct TensorSystem {
    ModeConstants modes;
    int M = 0;
    double omega2mu = 0.0;
    CVector X;                         ///< diagonal, X(p) = -alpha_{p+1-q}^2
    BandedOperator QC;                 ///< (M-2) x M, rows of S_1 S_0
    BandedOperator QY;                 ///< (M-2) x M, rows of D_2
    std::vector<BandedOperator> Phi;   ///< N x N Toeplitz sections
    std::vector<BandedOperator> QPsi;  ///< (M-2) x M, rows of S_1 S_0 M_0[psi_k]
    TensorBcRows bc;
    CVector rhs;

    int N() const { return modes.N; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(M) * modes.N; }
};

struct TensorOptions {
    std::optional<int> q;
    TruncationCheck truncation = TruncationCheck::Enforce;
};

TensorSystem assemble_tensor(const ProblemSpec& problem, int M, int N, const SeparableMedium& medium,
                             const TensorOptions& options = {});

/// Matrix-free A v in the system's row ordering (parallel kernel).
CVector apply_operator(const TensorSystem& system, const CVector& v);

/// Dense A, for the direct path and for tests.
CMatrix materialize(const TensorSystem& system);

inline constexpr Eigen::Index kDefaultDenseCap = 4096;

/// Dense LU solve. SizeCapError above dense_cap unknowns, SingularSystemError
/// on pivot breakdown.
SolutionField solve_tensor_dense(const TensorSystem& system, Eigen::Index dense_cap = kDefaultDenseCap);

/// Banded pieces shared by every mode system of a layered medium.
struct LayeredOperators {
    BandedOperator QC;
    BandedOperator QY;
    BandedOperator QPsi;
    double omega2mu = 0.0;
};

LayeredOperators layered_operators(const ChebCoeffs& profile, int M, double omega2mu);

/// Almost-banded system of one mode column p (mode j = p + 1 - q):
///   [ b1^T - i beta_j a1^T ; b2^T + i gamma_j a2^T ; Q (Y + omega^2 mu Psi - alpha_j^2 C) ].
AlmostBandedSystem layered_mode_system(const LayeredOperators& ops, const TensorBcRows& bc, const ModeConstants& modes,
                                       int position);

/// Layered fast path: solves the mode-0 column only (all others vanish).
SolutionField solve_layered_tensor(const ProblemSpec& problem, int M, int N, const TensorOptions& options = {},
                                   const ResolveOptions& resolve = {});

/// Inverse of the coefficient matrix of a layered medium, applied by N
/// independent almost-banded solves. Factored once at construction.
class LayeredPreconditioner {
public:
    LayeredPreconditioner(const ModeConstants& modes, int M, double omega2mu, const ChebCoeffs& profile);

    /// Maps a residual in system row ordering to a coefficient vector vec(V).
    CVector apply(const CVector& residual) const;
    int factorization_count() const { return static_cast<int>(factors_.size()); }
    const std::vector<AlmostBandedQR>& factors() const { return factors_; }
    int M() const { return M_; }

private:
    int M_;
    std::vector<AlmostBandedQR> factors_;
};

enum class TensorStrategy { Auto, Dense, Iterative };

enum class PreconditionerKind {
    XAverage,  ///< layered medium from the x-average of eps
    Custom,    ///< user-supplied layered profile
    None
};

struct TensorSolveOptions {
    TensorOptions system;
    ResolveOptions resolve;
    TensorStrategy strategy = TensorStrategy::Auto;
    Eigen::Index dense_cap = kDefaultDenseCap;
    double gmres_tol = 1e-8;
    int maxit = 200;
    PreconditionerKind preconditioner = PreconditionerKind::XAverage;
    Univariate precond_profile;  ///< used with PreconditionerKind::Custom
};

struct TensorSolveResult {
    SolutionField solution;
    SeparableMedium medium;
    std::optional<KrylovLog> krylov;
    std::string path;  ///< "layered", "dense" or "gmres"
};

/// Dispatch: layered fast path for x-independent media, dense below the
/// cap, preconditioned GMRES above it (or as forced by strategy).
TensorSolveResult solve_tensor(const ProblemSpec& problem, int M, int N, const TensorSolveOptions& options = {});

/// Same, with the medium already resolved.
TensorSolveResult solve_tensor(const ProblemSpec& problem, int M, int N, const SeparableMedium& medium,
                               const TensorSolveOptions& options);

}  // namespace qps
