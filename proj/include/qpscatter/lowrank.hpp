#pragma once

#include <vector>

#include "qpscatter/chebyshev.hpp"
#include "qpscatter/errors.hpp"
#include "qpscatter/fourier.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// f(x, y) ~ sum_k weight_k phi_k(x) psi_k(y).
struct LowRankMedium {
    struct Term {
        TrigCoeffs phi;
        ChebCoeffs psi;
        Complex weight;
        double x_pivot = 0.0;
        double y_pivot = 0.0;
    };
    std::vector<Term> terms;
    /// max |f - approximant| on the final pivot grid.
    double residual_estimate = 0.0;
    /// max |f| on the pivot grid.
    double scale = 0.0;
    /// max|residual| on the pivot grid before each step, then after the last.
    std::vector<double> history;
    int grid_x = 0;
    int grid_y = 0;

    int rank() const { return static_cast<int>(terms.size()); }
    Complex operator()(double x, double y) const;
};

class RankExceededError : public Error {
public:
    RankExceededError(const std::string& what, LowRankMedium best) : Error(what), best_(std::move(best)) {}
    const LowRankMedium& best() const { return best_; }

private:
    LowRankMedium best_;
};

struct LowRankOptions {
    int initial_x = 65;  ///< trig points x_i = 2 pi i / nx
    int initial_y = 65;  ///< Chebyshev points, degree ny - 1
    int max_grid = 1025;
};

/// Gaussian elimination with complete pivoting on a trig x Chebyshev sample
/// grid. Each step takes the largest residual entry as pivot and adds the
/// cross residual(x, y*) residual(x*, y) / residual(x*, y*), with both slices
/// resolved as functions; the residual is always f minus the resolved sum.
/// Stops at max|residual| <= tol max|f| or at an exact-zero pivot. The grid
/// is doubled when a twice-finer check grid shows a residual above 3x the
/// estimate.
LowRankMedium gecp_lowrank(const Bivariate& f, double tol, int max_rank, const LowRankOptions& options = {});

}  // namespace qps
