#pragma once

#include <optional>

#include "qpscatter/problem.hpp"
#include "qpscatter/solution.hpp"
#include "qpscatter/types.hpp"

namespace qps {

struct CollocationOptions {
    std::optional<int> q;
    TruncationCheck truncation = TruncationCheck::Enforce;
};

/// Global collocation system A v = g over v = vec(V), V of size (M+1) x N with
/// columns stacked. Rows: N top boundary rows, N(M-1) interior Helmholtz rows
/// (block n holds the interior nodes of column n), N bottom boundary rows.
struct CollocationSystem {
    CMatrix A;
    CVector g;
    ModeConstants modes;
    int M = 0;

    int N() const { return modes.N; }
    /// Index of V(m, n) in vec(V).
    Eigen::Index unknown(int m, int n) const { return static_cast<Eigen::Index>(n) * (M + 1) + m; }
};

/// Largest dense system assembled (N (M+1) unknowns); the matrix alone is 2.3 GB.
inline constexpr Eigen::Index kCollocationCap = 12000;

/// Validates the medium and assembles the dense system. N >= 2, M >= 2.
/// SizeCapError above kCollocationCap unknowns.
CollocationSystem assemble_collocation(const ProblemSpec& problem, int N, int M, const CollocationOptions& options = {});

/// x-direction symbol block D_xx + 2 i alpha0 D_x - alpha0^2 I_N.
CMatrix collocation_x_operator(const IncidentWave& wave, int N);

/// Dense LU with partial pivoting. Throws SingularSystemError when a pivot
/// falls below 1e-14 max|A|.
SolutionField solve_collocation(CollocationSystem system);

/// Layered fast path: after the block DFT in x only the zero-frequency
/// system of order M+1 has a nonzero right-hand side; solves it and returns
/// the (x-independent) field.
SolutionField solve_layered_collocation(const ProblemSpec& problem, int N, int M, const CollocationOptions& options = {});

}  // namespace qps
