#include "qpscatter/gmres.hpp"

#include <algorithm>
#include <cmath>

#include "qpscatter/errors.hpp"

namespace qps {

GmresResult gmres(const LinearMap& apply, const LinearMap& precond, const CVector& rhs, double tol, int maxit) {
    if (!(tol > 0.0)) throw ValidationError("gmres: tol must be positive");
    if (maxit < 1) throw ValidationError("gmres: maxit must be positive");
    auto P = [&precond](const CVector& v) { return precond ? precond(v) : v; };

    GmresResult out;
    out.x = CVector::Zero(rhs.size());
    out.log.residuals.push_back(1.0);

    const CVector r0 = P(rhs);
    const double beta = r0.norm();
    if (beta == 0.0) {
        out.log.converged = true;
        return out;
    }

    // Krylov basis as columns; capacity grows by doubling.
    const Eigen::Index n = rhs.size();
    CMatrix basis(n, std::min(maxit + 1, 32));
    basis.col(0) = r0 / beta;
    CMatrix H = CMatrix::Zero(maxit + 1, maxit);
    std::vector<double> cs(static_cast<std::size_t>(maxit));
    std::vector<Complex> sn(static_cast<std::size_t>(maxit));
    CVector g = CVector::Zero(maxit + 1);
    g(0) = beta;

    for (int k = 0; k < maxit; ++k) {
        CVector w = P(apply(basis.col(k)));
        // classical Gram-Schmidt, applied twice
        for (int pass = 0; pass < 2; ++pass) {
            const CVector h = basis.leftCols(k + 1).adjoint() * w;
            H.col(k).head(k + 1) += h;
            w.noalias() -= basis.leftCols(k + 1) * h;
        }
        const double hnext = w.norm();
        H(k + 1, k) = hnext;

        for (int i = 0; i < k; ++i) {
            const Complex a = H(i, k), b = H(i + 1, k);
            H(i, k) = cs[i] * a + sn[i] * b;
            H(i + 1, k) = -std::conj(sn[i]) * a + cs[i] * b;
        }
        const Complex a = H(k, k);
        const double r = std::hypot(std::abs(a), hnext);
        if (std::abs(a) == 0.0) {
            cs[k] = 0.0;
            sn[k] = 1.0;
        } else {
            cs[k] = std::abs(a) / r;
            sn[k] = (a / std::abs(a)) * hnext / r;
        }
        H(k, k) = cs[k] * a + sn[k] * hnext;
        H(k + 1, k) = 0.0;
        g(k + 1) = -std::conj(sn[k]) * g(k);
        g(k) = cs[k] * g(k);

        const double res = std::abs(g(k + 1)) / beta;
        out.log.residuals.push_back(res);
        out.log.iterations = k + 1;
        if (res <= tol) {
            out.log.converged = true;
            break;
        }
        if (hnext < 1e-14 * beta) throw BreakdownError("gmres: Arnoldi breakdown before convergence");
        if (basis.cols() < k + 2) basis.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(2 * basis.cols(), maxit + 1));
        basis.col(k + 1) = w / hnext;
    }

    const int m = out.log.iterations;
    const CVector y = H.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(g.head(m));
    out.x.noalias() = basis.leftCols(m) * y;
    return out;
}

}  // namespace qps
