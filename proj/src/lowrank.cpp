#include "qpscatter/lowrank.hpp"

#include <algorithm>
#include <cmath>

namespace qps {

namespace {

struct GridRun {
    LowRankMedium medium;
    bool exceeded = false;
};

std::vector<double> trig_grid(int nx) {
    std::vector<double> xs(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) xs[static_cast<std::size_t>(i)] = 2.0 * kPi * i / nx;
    return xs;
}

CMatrix sample(const Bivariate& f, const std::vector<double>& xs, const std::vector<double>& ys) {
    CMatrix F(static_cast<Eigen::Index>(ys.size()), static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t m = 0; m < ys.size(); ++m)
            F(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i)) = f(xs[i], ys[m]);
    return F;
}

GridRun run_on_grid(const Bivariate& f, double tol, int max_rank, int nx, int ny) {
    const auto xs = trig_grid(nx);
    const auto ys = cheb_points(ny - 1);
    const CMatrix F = sample(f, xs, ys);

    GridRun run;
    auto& lr = run.medium;
    lr.grid_x = nx;
    lr.grid_y = ny;
    lr.scale = F.cwiseAbs().maxCoeff();
    if (lr.scale == 0.0) return run;

    CMatrix R = F;
    while (true) {
        Eigen::Index m, i;
        const double pmag = R.cwiseAbs().maxCoeff(&m, &i);
        lr.residual_estimate = pmag;
        lr.history.push_back(pmag);
        if (pmag <= tol * lr.scale || pmag < 1e-15 * lr.scale) return run;
        if (lr.rank() >= max_rank) {
            run.exceeded = true;
            return run;
        }
        const double xp = xs[static_cast<std::size_t>(i)];
        const double yp = ys[static_cast<std::size_t>(m)];
        const Complex pivot = R(m, i);
        const LowRankMedium current = lr;

        const Univariate column = [&](double y) { return f(xp, y) - current(xp, y); };
        const Univariate row = [&](double x) { return f(x, yp) - current(x, yp); };
        const double slice_tol = std::clamp(0.01 * tol * lr.scale / pmag, 1e-14, 1e-3);

        LowRankMedium::Term t;
        t.psi = cheb_resolve(column, slice_tol);
        t.phi = trig_resolve(row, slice_tol);
        t.weight = 1.0 / pivot;
        t.x_pivot = xp;
        t.y_pivot = yp;

        CVector pv(static_cast<Eigen::Index>(ys.size()));
        for (std::size_t r = 0; r < ys.size(); ++r) pv(static_cast<Eigen::Index>(r)) = t.psi(ys[r]);
        CVector fv(static_cast<Eigen::Index>(xs.size()));
        for (std::size_t c = 0; c < xs.size(); ++c) fv(static_cast<Eigen::Index>(c)) = t.phi(xs[c]);
        R.noalias() -= t.weight * pv * fv.transpose();
        lr.terms.push_back(std::move(t));
    }
}

double check_residual(const Bivariate& f, const LowRankMedium& lr, int nx, int ny) {
    const auto xs = trig_grid(nx);
    const auto ys = cheb_points(ny - 1);
    double worst = 0.0;
    for (double x : xs)
        for (double y : ys) worst = std::max(worst, std::abs(f(x, y) - lr(x, y)));
    return worst;
}

}  // namespace

Complex LowRankMedium::operator()(double x, double y) const {
    Complex s = 0.0;
    for (const auto& t : terms) s += t.weight * t.phi(x) * t.psi(y);
    return s;
}

LowRankMedium gecp_lowrank(const Bivariate& f, double tol, int max_rank, const LowRankOptions& options) {
    if (!(tol > 0.0)) throw ValidationError("gecp_lowrank: tol must be positive");
    if (max_rank < 1) throw ValidationError("gecp_lowrank: max_rank must be positive");
    int nx = options.initial_x;
    int ny = options.initial_y;
    while (true) {
        GridRun run = run_on_grid(f, tol, max_rank, nx, ny);
        auto& lr = run.medium;
        const double fine = check_residual(f, lr, 2 * nx, 2 * ny - 1);
        const bool refine = fine > 3.0 * lr.residual_estimate && fine > tol * lr.scale;
        const bool at_cap = 2 * nx > options.max_grid || 2 * ny - 1 > options.max_grid;
        if (!refine || at_cap) {
            // The check grid is part of what the estimate has seen.
            lr.residual_estimate = std::max(lr.residual_estimate, fine);
            if (run.exceeded)
                throw RankExceededError("gecp_lowrank: tolerance not met at rank " + std::to_string(max_rank), lr);
            return lr;
        }
        nx *= 2;
        ny = 2 * ny - 1;
    }
}

}  // namespace qps
