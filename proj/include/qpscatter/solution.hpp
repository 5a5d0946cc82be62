#pragma once

#include <string>

#include "qpscatter/problem.hpp"
#include "qpscatter/types.hpp"

namespace qps {

enum class Representation {
    Values,       ///< V(m, n) = v(x_n, y_m) on the collocation grid, (M+1) x N
    Coefficients  ///< V(i, k) multiplies T_i(y) exp(i j x), j = k + 1 - q, M x N
};

/// Discrete solution v = u exp(-i alpha0 x) in either representation.
struct SolutionField {
    Representation representation = Representation::Values;
    CMatrix V;
    ModeConstants modes;
    int M = 0;  ///< Chebyshev degree (values) or coefficient count (coefficients)
    std::string method;

    int N() const { return modes.N; }
};

}  // namespace qps
