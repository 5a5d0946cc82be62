#include "qpscatter/ultraspherical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qps {

namespace {

// ln(i!) for i = 0..n-1 in extended precision.
std::vector<long double> log_factorials(int n) {
    std::vector<long double> t(static_cast<std::size_t>(std::max(n, 1)));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = std::lgamma(static_cast<long double>(i) + 1.0L);
    return t;
}

// Coefficient of C_{m+n-2s} in the product C_m C_n (all C^(lambda)).
double linearization(int m, int n, int s, int lambda, const std::vector<long double>& lf) {
    auto L = [&lf](int i) { return lf[static_cast<std::size_t>(i)]; };
    // (x)_k = (x + k - 1)! / (x - 1)! for integer x >= 1
    auto lpoch = [&L](int x, int k) { return L(x + k - 1) - L(x - 1); };
    const long double log_value = lpoch(lambda, s) + lpoch(lambda, m - s) + lpoch(lambda, n - s) - L(s) - L(m - s) -
                                  L(n - s) + lpoch(2 * lambda, m + n - s) - lpoch(lambda, m + n - s) + L(m + n - 2 * s) -
                                  lpoch(2 * lambda, m + n - 2 * s);
    const double ratio = static_cast<double>(m + n + lambda - 2 * s) / static_cast<double>(m + n + lambda - s);
    return ratio * static_cast<double>(std::exp(log_value));
}

int coeff_degree(const CVector& a) {
    for (auto i = static_cast<int>(a.size()) - 1; i > 0; --i) {
        if (a(i) != Complex{}) return i;
    }
    return 0;
}

}  // namespace

BandedOperator diff_operator(int lambda, int M) {
    if (lambda < 1 || lambda >= M) throw std::invalid_argument("diff_operator: need 1 <= lambda < M");
    double prefactor = std::pow(2.0, lambda - 1);
    for (int k = 2; k < lambda; ++k) prefactor *= k;
    BandedOperator d(M, M, 0, lambda);
    for (int k = 0; k + lambda < M; ++k) d.ref(k, k + lambda) = prefactor * (k + lambda);
    return d;
}

BandedOperator conversion_operator(int lambda, int M) {
    if (lambda < 0 || M < 1) throw std::invalid_argument("conversion_operator: need lambda >= 0, M >= 1");
    BandedOperator s(M, M, 0, 2);
    for (int k = 0; k < M; ++k) {
        if (lambda == 0) {
            s.ref(k, k) = (k == 0) ? 1.0 : 0.5;
            if (k + 2 < M) s.ref(k, k + 2) = -0.5;
        } else {
            const double l = lambda;
            s.ref(k, k) = l / (l + k);
            if (k + 2 < M) s.ref(k, k + 2) = -l / (l + k + 2);
        }
    }
    return s;
}

BandedOperator mult_operator_cheb(const ChebCoeffs& a, int M) {
    const int n = a.degree();
    BandedOperator op(M, M, n, n);
    for (int i = 0; i < M; ++i) {
        for (int j = op.col_begin(i); j < op.col_end(i); ++j) {
            Complex v = (i == j) ? a.at(0) : 0.5 * a.at(std::abs(i - j));
            if (i >= 1) v += 0.5 * a.at(i + j);
            op.ref(i, j) = v;
        }
    }
    return op;
}

BandedOperator mult_operator_ultra(const CVector& a, int lambda, int M) {
    if (lambda < 1) throw std::invalid_argument("mult_operator_ultra: lambda >= 1 required");
    const int n = coeff_degree(a);
    const auto lf = log_factorials(2 * (M + n) + 2 * lambda + 4);
    BandedOperator op(M, M, n, n);
    for (int k = 0; k < M; ++k) {
        for (int j = op.col_begin(k); j < op.col_end(k); ++j) {
            Complex sum = 0.0;
            const int lo = std::abs(k - j);
            const int hi = std::min(n, j + k);
            for (int m = lo; m <= hi; m += 2) {
                if (a(m) == Complex{}) continue;
                const int s = (m + j - k) / 2;
                sum += a(m) * linearization(m, j, s, lambda, lf);
            }
            op.ref(k, j) = sum;
        }
    }
    return op;
}

CVector chebyshev_to_ultraspherical(const CVector& a, int lambda) {
    CVector out = a;
    const auto len = static_cast<int>(a.size());
    for (int l = 0; l < lambda; ++l) out = conversion_operator(l, len).apply(out);
    return out;
}

RVector ultraspherical_values(int lambda, int degree, double y) {
    RVector c(degree + 1);
    c(0) = 1.0;
    if (degree >= 1) c(1) = 2.0 * lambda * y;
    for (int k = 1; k < degree; ++k)
        c(k + 1) = (2.0 * (k + lambda) * y * c(k) - (k + 2.0 * lambda - 1.0) * c(k - 1)) / (k + 1.0);
    return c;
}

AssembledOde assemble_ode(const ChebCoeffs& a, const ChebCoeffs& b, const ChebCoeffs& c, int M) {
    if (M < 3) throw std::invalid_argument("assemble_ode: M >= 3 required");
    const int pad = 2 * std::max({a.degree(), b.degree(), c.degree()}) + 8;
    const int P = M + pad;

    const BandedOperator S0 = conversion_operator(0, P);
    const BandedOperator S1 = conversion_operator(1, P);
    const BandedOperator S1S0 = multiply(S1, S0);

    const BandedOperator second = multiply(mult_operator_ultra(chebyshev_to_ultraspherical(a.coeffs, 2), 2, P),
                                           diff_operator(2, P));
    const BandedOperator first =
        multiply(S1, multiply(mult_operator_ultra(chebyshev_to_ultraspherical(b.coeffs, 1), 1, P), diff_operator(1, P)));
    const BandedOperator zeroth = multiply(S1S0, mult_operator_cheb(c, P));

    return AssembledOde{add(add(second, first), zeroth).truncated(M, M), S1S0.truncated(M, M)};
}

}  // namespace qps
