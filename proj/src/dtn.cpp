#include "qpscatter/dtn.hpp"

#include <stdexcept>

#include "qpscatter/fourier.hpp"

namespace qps {

DtnDiagonals dtn_diagonals(const ModeConstants& modes) {
    DtnDiagonals d{CVector(modes.N), CVector(modes.N)};
    for (int k = 0; k < modes.N; ++k) {
        d.lambda_beta(k) = kI * modes.betas[static_cast<std::size_t>(k)];
        d.lambda_gamma(k) = kI * modes.gammas[static_cast<std::size_t>(k)];
    }
    return d;
}

DtnMatrices dtn_matrices(const ModeConstants& modes) {
    const auto d = dtn_diagonals(modes);
    const CMatrix G = dft_matrices(modes.N, modes.q).G;
    const CMatrix Gh = G.adjoint();
    return DtnMatrices{Gh * d.lambda_beta.asDiagonal() * G, Gh * d.lambda_gamma.asDiagonal() * G};
}

int fft_order_mode(int position, const ModeConstants& modes) {
    return position <= modes.j_max() ? position : position - modes.N;
}

FftOrderedDiagonals reordered_diagonals(const ModeConstants& modes) {
    FftOrderedDiagonals d{CVector(modes.N), CVector(modes.N)};
    for (int p = 0; p < modes.N; ++p) {
        const int j = fft_order_mode(p, modes);
        d.lambda_S(p) = kI * modes.beta(j);
        d.lambda_T(p) = kI * modes.gamma(j);
    }
    return d;
}

Complex incident_trace(const IncidentWave& wave) {
    const Complex b0 = wave.beta0();
    return -2.0 * kI * b0 * std::exp(-kI * b0);
}

CollocationBcRows bc_rows_collocation(const ModeConstants& modes, int M, const RMatrix& dy) {
    const int N = modes.N;
    if (dy.rows() != M + 1 || dy.cols() != M + 1) throw std::invalid_argument("bc_rows_collocation: D_y must be (M+1)x(M+1)");
    const auto dtn = dtn_matrices(modes);
    const int stride = M + 1;
    CollocationBcRows rows{CMatrix::Zero(N, N * stride), CMatrix::Zero(N, N * stride),
                           CVector::Constant(N, incident_trace(modes.wave))};
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m <= M; ++m) {
            rows.top(n, n * stride + m) += dy(0, m);
            rows.bottom(n, n * stride + m) += dy(M, m);
        }
        for (int c = 0; c < N; ++c) {
            rows.top(n, c * stride) -= dtn.S(n, c);
            rows.bottom(n, c * stride + M) += dtn.T(n, c);
        }
    }
    return rows;
}

TensorBcRows bc_rows_tensor(const ModeConstants& modes, int M) {
    if (M < 2) throw std::invalid_argument("bc_rows_tensor: M >= 2 required");
    TensorBcRows bc;
    bc.M = M;
    bc.N = modes.N;
    bc.q = modes.q;
    bc.b1.resize(M);
    bc.b2.resize(M);
    bc.a1.resize(M);
    bc.a2.resize(M);
    for (int i = 0; i < M; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double sq = static_cast<double>(i) * i;
        bc.b1(i) = sq;
        bc.b2(i) = -sign * sq;
        bc.a1(i) = 1.0;
        bc.a2(i) = sign;
    }
    bc.diagonals = dtn_diagonals(modes);
    bc.rhs_top = CVector::Zero(modes.N);
    bc.rhs_top(modes.q - 1) = incident_trace(modes.wave);
    return bc;
}

CMatrix TensorBcRows::top_block() const {
    CMatrix t = CMatrix::Zero(N, static_cast<Eigen::Index>(M) * N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < M; ++i) t(j, j * M + i) = b1(i) - diagonals.lambda_beta(j) * a1(i);
    return t;
}

CMatrix TensorBcRows::bottom_block() const {
    CMatrix t = CMatrix::Zero(N, static_cast<Eigen::Index>(M) * N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < M; ++i) t(j, j * M + i) = b2(i) + diagonals.lambda_gamma(j) * a2(i);
    return t;
}

CVector TensorBcRows::apply_top(const CMatrix& V) const {
    CVector out(N);
    for (int j = 0; j < N; ++j) {
        out(j) = (b1.cast<Complex>().transpose() * V.col(j)).value() -
                 diagonals.lambda_beta(j) * (a1.cast<Complex>().transpose() * V.col(j)).value();
    }
    return out;
}

CVector TensorBcRows::apply_bottom(const CMatrix& V) const {
    CVector out(N);
    for (int j = 0; j < N; ++j) {
        out(j) = (b2.cast<Complex>().transpose() * V.col(j)).value() +
                 diagonals.lambda_gamma(j) * (a2.cast<Complex>().transpose() * V.col(j)).value();
    }
    return out;
}

}  // namespace qps
