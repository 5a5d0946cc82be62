#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qpscatter/types.hpp"

namespace qps {

struct IncidentWave;

/// Permittivity constant over the whole strip.
struct Homogeneous {
    Complex value{1.0, 0.0};
};

/// Permittivity depending on y only.
struct Layered {
    Univariate profile;
};

/// One separable term phi(x) * psi(y); phi must be 2pi-periodic.
struct SeparableTerm {
    Univariate phi;
    Univariate psi;
};

/// Finite sum of separable terms.
struct SeparableSum {
    std::vector<SeparableTerm> terms;
};

/// Samples on the tensor grid x_i = 2 pi i / nx (i = 0..nx-1) and
/// y_m = cos(m pi / (ny-1)) (m = 0..ny-1). values(m, i) = eps(x_i, y_m).
/// Evaluated by trigonometric interpolation in x and barycentric
/// Chebyshev interpolation in y.
struct SampledGrid {
    CMatrix values;
};

/// Arbitrary bivariate permittivity (compressed to a separable sum by the
/// tensor method).
struct GeneralMedium {
    Bivariate function;
};

/// Permittivity eps(x, y) on [0, 2pi] x [-1, 1].
class MediumSpec {
public:
    using Variant = std::variant<Homogeneous, Layered, SeparableSum, SampledGrid, GeneralMedium>;

    MediumSpec();
    MediumSpec(Variant v, std::string name = {});

    Complex operator()(double x, double y) const;

    const Variant& variant() const { return variant_; }
    const std::string& name() const { return name_; }

    bool is_homogeneous() const { return std::holds_alternative<Homogeneous>(variant_); }
    /// Homogeneous or Layered: eps independent of x.
    bool is_layered() const;

    /// True when eps takes real values on a sampling grid (1e-14 relative).
    bool is_real_valued() const;

    /// The y-profile of a layered medium (the constant for Homogeneous).
    Univariate layered_profile() const;

    /// x-average (1/2pi) int eps(x, y) dx, evaluated by trapezoidal sums on
    /// 128 points (exact for trig polynomials of degree < 128).
    Univariate x_average() const;

private:
    Variant variant_;
    std::string name_;
    // Precomputed trig coefficients of each grid row, for SampledGrid only.
    std::shared_ptr<const CMatrix> grid_coeffs_;
};

/// Largest delta on the search grid {k/64 : k = 1..64} such that eps is
/// within 1e-10 of eps+ for y in [1 - delta/2, 1] and of eps- for
/// y in [-1, delta/2 - 1], sampled on 64 x 16 boundary-layer points.
/// Throws MediumMismatchError if even the smallest delta fails.
double validate_medium(const MediumSpec& medium, const IncidentWave& wave);

}  // namespace qps
