#include "qpscatter/kernels.hpp"

#include <cmath>

namespace qps::kernels {

namespace {

long long band_entries(const BandedOperator& op) {
    long long n = 0;
    for (int i = 0; i < op.rows(); ++i) n += std::max(0, op.col_end(i) - op.col_begin(i));
    return n;
}

// T(r, i) = T_i(ys[r]).
RMatrix chebyshev_rows(int M, const std::vector<double>& ys) {
    RMatrix T(static_cast<Eigen::Index>(ys.size()), M);
    for (std::size_t r = 0; r < ys.size(); ++r) {
        const double y = ys[r];
        double t0 = 1.0, t1 = y;
        for (int i = 0; i < M; ++i) {
            T(static_cast<Eigen::Index>(r), i) = t0;
            const double t2 = 2.0 * y * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
    }
    return T;
}

// E(k, c) = exp(i j_k xs[c]).
CMatrix exponential_cols(int N, int q, const std::vector<double>& xs) {
    CMatrix E(N, static_cast<Eigen::Index>(xs.size()));
    for (std::size_t c = 0; c < xs.size(); ++c)
        for (int k = 0; k < N; ++k) E(k, static_cast<Eigen::Index>(c)) = std::exp(kI * (static_cast<double>(k + 1 - q) * xs[c]));
    return E;
}

}  // namespace

namespace serial {

CMatrix tensor_interior(const TensorSystem& s, const CMatrix& V, long long* madds) {
    const int N = s.N();
    CMatrix W = s.QC.apply(V) * s.X.asDiagonal();
    W += s.QY.apply(V);
    long long count = (band_entries(s.QC) + band_entries(s.QY) + (s.M - 2)) * N;
    for (std::size_t k = 0; k < s.Phi.size(); ++k) {
        const CMatrix VPhiT = s.Phi[k].apply(CMatrix(V.transpose())).transpose();
        W += s.omega2mu * s.QPsi[k].apply(VPhiT);
        count += band_entries(s.Phi[k]) * s.M + (band_entries(s.QPsi[k]) + (s.M - 2)) * N;
    }
    if (madds) *madds += count;
    return W;
}

CMatrix solve_modes(const std::vector<AlmostBandedQR>& factors, const CMatrix& rhs) {
    CMatrix out(rhs.rows(), rhs.cols());
    for (Eigen::Index p = 0; p < rhs.cols(); ++p) out.col(p) = factors[static_cast<std::size_t>(p)].solve(rhs.col(p));
    return out;
}

CMatrix evaluate_coefficients(const CMatrix& V, int q, const std::vector<double>& xs, const std::vector<double>& ys) {
    const RMatrix T = chebyshev_rows(static_cast<int>(V.rows()), ys);
    const CMatrix E = exponential_cols(static_cast<int>(V.cols()), q, xs);
    return T.cast<Complex>() * (V * E);
}

}  // namespace serial

namespace parallel {

CMatrix tensor_interior(const TensorSystem& s, const CMatrix& V) {
    const int N = s.N();
    const int M = s.M;
    CMatrix W(M - 2, N);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < N; ++j) {
        const CVector u = V.col(j);
        CVector w = s.X(j) * s.QC.apply(u) + s.QY.apply(u);
        CVector t(M);
        for (std::size_t k = 0; k < s.Phi.size(); ++k) {
            const auto& phi = s.Phi[k];
            t.setZero();
            for (int l = phi.col_begin(j); l < phi.col_end(j); ++l) t += phi(j, l) * V.col(l);
            w += s.omega2mu * s.QPsi[k].apply(t);
        }
        W.col(j) = w;
    }
    return W;
}

CMatrix solve_modes(const std::vector<AlmostBandedQR>& factors, const CMatrix& rhs) {
    CMatrix out(rhs.rows(), rhs.cols());
    const int n = static_cast<int>(rhs.cols());
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < n; ++p) out.col(p) = factors[static_cast<std::size_t>(p)].solve(rhs.col(p));
    return out;
}

CMatrix evaluate_coefficients(const CMatrix& V, int q, const std::vector<double>& xs, const std::vector<double>& ys) {
    const RMatrix T = chebyshev_rows(static_cast<int>(V.rows()), ys);
    const CMatrix E = exponential_cols(static_cast<int>(V.cols()), q, xs);
    const int ny = static_cast<int>(ys.size());
    CMatrix out(ny, static_cast<Eigen::Index>(xs.size()));
#pragma omp parallel for schedule(static)
    for (int r = 0; r < ny; ++r) {
        const Eigen::RowVectorXcd a = T.row(r).cast<Complex>() * V;
        out.row(r) = a * E;
    }
    return out;
}

}  // namespace parallel

}  // namespace qps::kernels
