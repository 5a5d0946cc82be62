#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qps {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Univariate complex-valued function (a profile in y or a periodic factor in x).
using Univariate = std::function<Complex(double)>;
/// Bivariate complex-valued function on [0, 2pi] x [-1, 1].
using Bivariate = std::function<Complex(double, double)>;

}  // namespace qps
