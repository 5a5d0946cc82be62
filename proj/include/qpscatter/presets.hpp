#pragma once

#include <string>
#include <vector>

#include "qpscatter/medium.hpp"
#include "qpscatter/problem.hpp"

namespace qps {

/// exp(3 / (y^2 - 1) + 4) for |y| < 1, zero elsewhere.
double bump(double y);

/// 1 + bump(y).
MediumSpec medium_eps1();
/// 1 + bump(y) exp(-cos(pi sin(x/2))), as an exact two-term separable sum.
MediumSpec medium_eps2();
/// 1 + exp(3 / (y^2 - 1) + 4 - y cos(pi sin(x/2))), a general bivariate medium.
MediumSpec medium_eps3();
MediumSpec medium_homogeneous(Complex value = 1.0);

/// Registry lookup: "homogeneous", "eps1", "eps2", "eps3". ValidationError otherwise.
MediumSpec medium_by_name(const std::string& name);
std::vector<std::string> medium_names();

/// Layered medium from (y, eps) pairs, least-squares Chebyshev fit of degree
/// min(count - 1, 32).
MediumSpec layered_from_table(const std::vector<double>& ys, const std::vector<Complex>& values);

}  // namespace qps
