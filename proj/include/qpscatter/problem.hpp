#pragma once

#include <optional>
#include <vector>

#include "qpscatter/medium.hpp"
#include "qpscatter/types.hpp"

namespace qps {

/// Plane wave exp(i alpha0 x - i beta0 y) incident from y > 1.
struct IncidentWave {
    double omega = 10.0;
    double theta = 3.0 * kPi / 7.0;
    Complex eps_plus{1.0, 0.0};
    Complex eps_minus{1.0, 0.0};
    double mu = 1.0;

    /// omega * sqrt(eps+- * mu), principal root.
    Complex wavenumber_plus() const;
    Complex wavenumber_minus() const;
    Complex alpha0() const;
    Complex beta0() const;

    /// Throws ValidationError on omega <= 0, |theta| >= pi/2 or mu <= 0.
    void validate() const;
};

/// Square root on the branch Im >= 0; a real result is taken positive.
Complex upper_branch_sqrt(Complex z);

/// Quasi-periodic mode data for the index window j = 1-q .. N-q.
///
/// Storage position k = 0..N-1 corresponds to mode j = k + 1 - q, so position
/// q-1 always holds mode 0.
struct ModeConstants {
    IncidentWave wave;
    int N = 0;
    int q = 0;
    std::vector<Complex> alphas;
    std::vector<Complex> betas;
    std::vector<Complex> gammas;
    std::vector<int> propagating_up;
    std::vector<int> propagating_down;

    int j_min() const { return 1 - q; }
    int j_max() const { return N - q; }
    bool contains(int j) const { return j >= j_min() && j <= j_max(); }
    int position(int j) const { return j + q - 1; }
    int mode(int position) const { return position + 1 - q; }

    Complex alpha(int j) const { return alphas[static_cast<std::size_t>(position(j))]; }
    Complex beta(int j) const { return betas[static_cast<std::size_t>(position(j))]; }
    Complex gamma(int j) const { return gammas[static_cast<std::size_t>(position(j))]; }
};

enum class TruncationCheck {
    Enforce,  ///< TruncationError when a propagating mode falls outside the window
    Skip      ///< accept any window (exact single-mode problems, operator tests)
};

/// Default offset: centres the window on j = 0.
inline int auto_offset(int N) { return N / 2 + 1; }

/// Offset whose window is centred on the propagating range (union of both
/// half-spaces), clamped to [1, N]. Equals auto_offset when that range is
/// symmetric about j = 0.
int centred_offset(const IncidentWave& wave, int N);

/// Number of distinct propagating indices over both half-spaces.
int propagating_count(const IncidentWave& wave);

/// Computes alpha_j, beta_j, gamma_j and the propagating sets.
///
/// Throws ResonanceError when |beta_j| or |gamma_j| < 1e-10 omega inside the
/// window, TruncationError when a propagating mode lies outside it.
ModeConstants mode_constants(const IncidentWave& wave, int N, std::optional<int> q = std::nullopt,
                             TruncationCheck check = TruncationCheck::Enforce);

/// All j in Z with real positive beta_j (up) / gamma_j (down).
std::vector<int> propagating_indices(const IncidentWave& wave, bool upper);

/// Scattering problem: incident wave plus the permittivity in the strip.
struct ProblemSpec {
    IncidentWave wave;
    MediumSpec medium;
};

}  // namespace qps
