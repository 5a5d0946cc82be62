#pragma once

#include <functional>
#include <vector>

#include "qpscatter/types.hpp"

namespace qps {

using LinearMap = std::function<CVector(const CVector&)>;

struct KrylovLog {
    int iterations = 0;
    bool converged = false;
    /// Relative (preconditioned) residual norms, entry 0 is the initial guess.
    std::vector<double> residuals;

    double final_residual() const { return residuals.empty() ? 1.0 : residuals.back(); }
};

struct GmresResult {
    CVector x;
    KrylovLog log;
};

/// Full (unrestarted) GMRES from the zero vector with optional left
/// preconditioning. Stops when ||P(b - A x)|| <= tol ||P b|| or after maxit
/// iterations (log.converged = false). An Arnoldi vector of norm below 1e-14
/// is a lucky breakdown when the least-squares residual already meets tol;
/// otherwise BreakdownError is thrown.
GmresResult gmres(const LinearMap& apply, const LinearMap& precond, const CVector& rhs, double tol, int maxit);

}  // namespace qps
