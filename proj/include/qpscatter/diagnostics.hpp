#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpscatter/gmres.hpp"
#include "qpscatter/problem.hpp"
#include "qpscatter/solution.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// Reflection and transmission coefficients over the mode window; entry k
/// belongs to mode j = k + 1 - q.
struct RayleighCoefficients {
    std::vector<Complex> r;
    std::vector<Complex> t;
    /// Modes whose coefficient was set to 0 because Im beta_j (or gamma_j) > 30.
    std::vector<bool> r_guarded;
    std::vector<bool> t_guarded;
    int q = 1;

    Complex r_at(int j) const { return r[static_cast<std::size_t>(j + q - 1)]; }
    Complex t_at(int j) const { return t[static_cast<std::size_t>(j + q - 1)]; }
};

/// Fourier coefficients of v at y = 1 (first) and y = -1 (second).
std::pair<CVector, CVector> boundary_traces(const SolutionField& solution);

RayleighCoefficients rayleigh_coefficients(const SolutionField& solution);

/// (sum_up beta_j |r_j|^2 + sum_down gamma_j |t_j|^2) / beta_0.
double energy_balance(const RayleighCoefficients& rt, const ModeConstants& modes);

/// Field on the tensor grid xs x ys; result(r, c) is at (xs[c], ys[r]).
/// With reconstruct_u the values are u = v exp(i alpha0 x).
CMatrix evaluate_field(const SolutionField& solution, const std::vector<double>& xs, const std::vector<double>& ys,
                       bool reconstruct_u = true);

/// Max |u_a - u_b| over the grid.
double compare_methods(const SolutionField& a, const SolutionField& b, const std::vector<double>& xs,
                       const std::vector<double>& ys);

/// Chebyshev x Fourier coefficients of v, (M+1) x N for value-space
/// solutions; coefficient-space solutions are returned as stored.
CMatrix spectral_coefficients(const SolutionField& solution);

/// Largest coefficient in the last two Chebyshev rows or the two outermost
/// mode columns on either side, relative to the largest coefficient.
double coefficient_tail(const SolutionField& solution);

/// n uniformly spaced points on [lo, hi] inclusive.
std::vector<double> uniform_points(double lo, double hi, int n);

struct DiagnosticsReport {
    RayleighCoefficients coefficients;
    /// |E - 1|; empty when the medium is lossy.
    std::optional<double> energy_defect;
    std::vector<int> propagating_up;
    std::vector<int> propagating_down;
    std::string method;
    int N = 0;
    int M = 0;
    int q = 0;
    std::optional<KrylovLog> krylov;
};

/// Rayleigh coefficients plus the energy defect when eps, eps+ and eps- are real.
DiagnosticsReport diagnose(const SolutionField& solution, const ProblemSpec& problem,
                           const std::optional<KrylovLog>& krylov = std::nullopt);

}  // namespace qps
