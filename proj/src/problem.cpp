#include "qpscatter/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpscatter/errors.hpp"

namespace qps {

Complex IncidentWave::wavenumber_plus() const { return omega * std::sqrt(eps_plus * mu); }
Complex IncidentWave::wavenumber_minus() const { return omega * std::sqrt(eps_minus * mu); }
Complex IncidentWave::alpha0() const { return wavenumber_plus() * std::sin(theta); }
Complex IncidentWave::beta0() const { return wavenumber_plus() * std::cos(theta); }

void IncidentWave::validate() const {
    if (!(omega > 0.0)) throw ValidationError("omega must be positive");
    if (!(std::abs(theta) < kPi / 2)) throw ValidationError("incidence angle must satisfy |theta| < pi/2");
    if (!(mu > 0.0)) throw ValidationError("mu must be positive");
}

Complex upper_branch_sqrt(Complex z) {
    // +0 imaginary part so that negative reals map to +i sqrt(|z|)
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
    Complex s = std::sqrt(z);
    if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
    return s;
}

namespace {

bool is_propagating(Complex root) {
    return root.real() > 0.0 && std::abs(root.imag()) <= 1e-12 * std::abs(root);
}

}  // namespace

std::vector<int> propagating_indices(const IncidentWave& wave, bool upper) {
    const Complex k = upper ? wave.wavenumber_plus() : wave.wavenumber_minus();
    const Complex k2 = upper ? wave.omega * wave.omega * wave.eps_plus * wave.mu
                             : wave.omega * wave.omega * wave.eps_minus * wave.mu;
    const double a0 = wave.alpha0().real();
    const double reach = std::abs(k) + 1.0;
    const int lo = static_cast<int>(std::floor(-reach - a0));
    const int hi = static_cast<int>(std::ceil(reach - a0));
    std::vector<int> out;
    for (int j = lo; j <= hi; ++j) {
        const Complex a = wave.alpha0() + static_cast<double>(j);
        if (is_propagating(upper_branch_sqrt(k2 - a * a))) out.push_back(j);
    }
    return out;
}

namespace {

std::vector<int> propagating_union(const IncidentWave& wave) {
    auto all = propagating_indices(wave, true);
    const auto down = propagating_indices(wave, false);
    all.insert(all.end(), down.begin(), down.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

}  // namespace

int centred_offset(const IncidentWave& wave, int N) {
    wave.validate();
    if (N < 1) throw ValidationError("N must be >= 1");
    const auto prop = propagating_union(wave);
    if (prop.empty()) return auto_offset(N);
    // the window [1-q, N-q] has midpoint (N+1)/2 - q
    const int mid = static_cast<int>(std::floor(0.5 * (prop.front() + prop.back())));
    return std::clamp(auto_offset(N) - mid, 1, N);
}

int propagating_count(const IncidentWave& wave) { return static_cast<int>(propagating_union(wave).size()); }

ModeConstants mode_constants(const IncidentWave& wave, int N, std::optional<int> q, TruncationCheck check) {
    wave.validate();
    if (N < 1) throw ValidationError("N must be >= 1");
    const int offset = q.value_or(auto_offset(N));
    if (offset < 1 || offset > N) throw ValidationError("q must satisfy 1 <= q <= N");

    ModeConstants m;
    m.wave = wave;
    m.N = N;
    m.q = offset;
    const Complex kp2 = wave.omega * wave.omega * wave.eps_plus * wave.mu;
    const Complex km2 = wave.omega * wave.omega * wave.eps_minus * wave.mu;
    const Complex a0 = wave.alpha0();
    m.alphas.reserve(static_cast<std::size_t>(N));
    m.betas.reserve(static_cast<std::size_t>(N));
    m.gammas.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        const int j = m.mode(k);
        const Complex a = a0 + static_cast<double>(j);
        const Complex b = upper_branch_sqrt(kp2 - a * a);
        const Complex g = upper_branch_sqrt(km2 - a * a);
        if (std::abs(b) < 1e-10 * wave.omega || std::abs(g) < 1e-10 * wave.omega) {
            std::ostringstream msg;
            msg << "resonant mode j = " << j << " (beta_j or gamma_j vanishes)";
            throw ResonanceError(msg.str());
        }
        m.alphas.push_back(a);
        m.betas.push_back(b);
        m.gammas.push_back(g);
    }

    const auto up = propagating_indices(wave, true);
    const auto down = propagating_indices(wave, false);
    for (int j : up) {
        if (m.contains(j)) m.propagating_up.push_back(j);
    }
    for (int j : down) {
        if (m.contains(j)) m.propagating_down.push_back(j);
    }
    if (check == TruncationCheck::Enforce &&
        (m.propagating_up.size() != up.size() || m.propagating_down.size() != down.size())) {
        std::ostringstream msg;
        msg << "propagating modes outside the window [" << m.j_min() << ", " << m.j_max() << "]";
        if (!up.empty()) msg << "; upper propagating range [" << up.front() << ", " << up.back() << "]";
        if (!down.empty()) msg << "; lower propagating range [" << down.front() << ", " << down.back() << "]";
        throw TruncationError(msg.str());
    }
    return m;
}

}  // namespace qps
