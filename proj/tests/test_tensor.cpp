#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include <qpscatter/errors.hpp>
#include <qpscatter/kernels.hpp>
#include <qpscatter/presets.hpp>
#include <qpscatter/tensor.hpp>

#include "oracles.hpp"

using namespace qps;

namespace {

const TensorOptions kSkip{std::nullopt, TruncationCheck::Skip};

CVector vec(const CMatrix& V) { return Eigen::Map<const CVector>(V.data(), V.size()); }

// plane wave in mode column q-1, zero elsewhere
CMatrix plane_wave_coefficients(const IncidentWave& w, int M, int N, int q) {
    CMatrix V = CMatrix::Zero(M, N);
    V.col(q - 1) = oracle::plane_wave_chebyshev(w.beta0().real(), M);
    return V;
}

}  // namespace

TEST_CASE("X diagonal") {
    const IncidentWave w;
    const auto s = assemble_tensor(ProblemSpec{w, medium_homogeneous()}, 8, 8, resolve_medium(medium_homogeneous()),
                                   TensorOptions{5, TruncationCheck::Skip});
    const double a0 = w.omega * std::sin(w.theta);
    for (int p = 0; p < 8; ++p) {
        const double j = p + 1 - 5;
        CHECK(std::abs(s.X(p) + (a0 + j) * (a0 + j)) <= 1e-12);
    }
}

TEST_CASE("Phi is the identity for a layered medium") {
    const auto medium = resolve_medium(medium_eps1());
    const auto s = assemble_tensor(ProblemSpec{IncidentWave{}, medium_eps1()}, 16, 8, medium, kSkip);
    REQUIRE(!s.Phi.empty());
    for (const auto& phi : s.Phi) {
        const CMatrix d = phi.to_dense();
        const Complex c = d(0, 0);
        CHECK(oracle::max_abs(d - c * CMatrix::Identity(8, 8)) == 0.0);
    }
}

TEST_CASE("materialize: shape and boundary rows") {
    const int M = 6, N = 4;
    const ProblemSpec p{IncidentWave{}, medium_eps2()};
    const auto s = assemble_tensor(p, M, N, resolve_medium(p.medium), kSkip);
    const CMatrix A = materialize(s);
    CHECK(A.rows() == M * N);
    CHECK(A.cols() == M * N);
    CHECK(s.rhs.size() == M * N);
    CHECK(oracle::max_abs(A.topRows(N) - s.bc.top_block()) == 0.0);
    CHECK(oracle::max_abs(A.middleRows(N, N) - s.bc.bottom_block()) == 0.0);
    // only the top row of mode 0 carries data
    CHECK(oracle::max_abs(s.rhs.tail(M * N - N)) == 0.0);
    CHECK(std::abs(s.rhs(s.modes.q - 1)) > 0.0);
}

TEST_CASE("plane wave satisfies the homogeneous operator") {
    const IncidentWave w;
    const int M = 32, N = 8;
    const ProblemSpec p{w, medium_homogeneous()};
    const auto s = assemble_tensor(p, M, N, resolve_medium(p.medium), kSkip);
    const CVector v = vec(plane_wave_coefficients(w, M, N, s.modes.q));
    CHECK(oracle::max_abs(apply_operator(s, v) - s.rhs) <= 1e-9);
}

TEST_CASE("apply_operator agrees with the materialized matrix") {
    for (const auto& medium : {medium_eps2(), medium_eps3()}) {
        for (auto [M, N] : {std::pair{8, 8}, std::pair{16, 32}, std::pair{32, 16}, std::pair{5, 3}}) {
            const ProblemSpec p{IncidentWave{}, medium};
            const auto s = assemble_tensor(p, M, N, resolve_medium(medium), kSkip);
            const CVector v = oracle::random_vector(s.size());
            const CVector dense = materialize(s) * v;
            CHECK(oracle::max_abs(apply_operator(s, v) - dense) <= 1e-11 * oracle::max_abs(dense));
            CHECK(oracle::max_abs(apply_operator(s, CVector::Zero(s.size()))) == 0.0);
        }
    }
}

TEST_CASE("interior cost is linear in N") {
    const ProblemSpec p{IncidentWave{}, medium_eps2()};
    const auto medium = resolve_medium(p.medium);
    std::vector<long long> counts;
    for (int N : {64, 128, 256}) {
        const auto s = assemble_tensor(p, 32, N, medium, kSkip);
        long long madds = 0;
        kernels::serial::tensor_interior(s, oracle::random_matrix(32, N), &madds);
        counts.push_back(madds);
    }
    const double r1 = static_cast<double>(counts[1]) / counts[0];
    const double r2 = static_cast<double>(counts[2]) / counts[1];
    CHECK(r1 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(r2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("dense solve: homogeneous gives a single plane wave column") {
    const IncidentWave w;
    const int M = 32, N = 8;
    const ProblemSpec p{w, medium_homogeneous()};
    const auto s = assemble_tensor(p, M, N, resolve_medium(p.medium), kSkip);
    const auto sol = solve_tensor_dense(s);
    CHECK(sol.representation == Representation::Coefficients);
    const int q = s.modes.q;
    for (int k = 0; k < N; ++k)
        if (k != q - 1) CHECK(oracle::max_abs(sol.V.col(k)) <= 1e-10);
    CHECK(oracle::max_abs(sol.V - plane_wave_coefficients(w, M, N, q)) <= 1e-9);
    CHECK_THROWS_AS(solve_tensor_dense(s, 100), SizeCapError);
}

TEST_CASE("layered fast path") {
    const ProblemSpec p{IncidentWave{}, medium_eps1()};
    const auto fast = solve_layered_tensor(p, 64, 64);
    const auto dense = solve_tensor_dense(assemble_tensor(p, 64, 64, resolve_medium(p.medium)));
    CHECK(oracle::max_abs(fast.V - dense.V) <= 1e-9);
    for (int k = 0; k < 64; ++k)
        if (k != fast.modes.q - 1) CHECK(oracle::max_abs(fast.V.col(k)) == 0.0);

    const IncidentWave w;
    const auto h = solve_layered_tensor(ProblemSpec{w, medium_homogeneous()}, 32, 8, kSkip);
    CHECK(oracle::max_abs(h.V - plane_wave_coefficients(w, 32, 8, h.modes.q)) <= 1e-9);
    CHECK_THROWS_AS(solve_layered_tensor(ProblemSpec{w, medium_eps2()}, 16, 8, kSkip), ValidationError);
}

TEST_CASE("layered fast path scales linearly in M") {
    const ProblemSpec p{IncidentWave{}, medium_eps1()};
    auto timed = [&](int M) {
        double best = 1e9;
        for (int r = 0; r < 5; ++r) {
            const auto t = std::chrono::steady_clock::now();
            solve_layered_tensor(p, M, 64);
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count());
        }
        return best;
    };
    const double t256 = timed(256), t1024 = timed(1024);
    MESSAGE("layered solve: M=256 " << t256 << " s, M=1024 " << t1024 << " s");
    // 4x the size; quadratic growth would give 16x
    CHECK(t1024 / t256 <= 12.0);
}

TEST_CASE("layered preconditioner inverts a layered system") {
    const ProblemSpec p{IncidentWave{}, medium_eps1()};
    const auto medium = resolve_medium(p.medium);
    const int M = 24, N = 16;
    const auto s = assemble_tensor(p, M, N, medium, kSkip);
    const LayeredPreconditioner P(s.modes, M, s.omega2mu, medium.x_average());
    CHECK(P.factorization_count() == N);
    CHECK(P.M() == M);
    const CVector v = oracle::random_vector(s.size());
    CHECK(oracle::max_abs(P.apply(apply_operator(s, v)) - v) <= 1e-10 * oracle::max_abs(v));
}

TEST_CASE("solve_tensor dispatch") {
    const ProblemSpec p1{IncidentWave{}, medium_eps1()};
    CHECK(solve_tensor(p1, 32, 48).path == "layered");

    const ProblemSpec p2{IncidentWave{}, medium_eps2()};
    TensorSolveOptions opts;
    const auto dense = solve_tensor(p2, 32, 48, opts);
    CHECK(dense.path == "dense");
    opts.strategy = TensorStrategy::Iterative;
    opts.gmres_tol = 1e-12;
    opts.maxit = 400;
    const auto it = solve_tensor(p2, 32, 48, opts);
    CHECK(it.path == "gmres");
    REQUIRE(it.krylov.has_value());
    CHECK(it.krylov->converged);
    CHECK(oracle::max_abs(it.solution.V - dense.solution.V) <= 1e-8);

    opts.strategy = TensorStrategy::Dense;
    opts.dense_cap = 1000;
    CHECK_THROWS_AS(solve_tensor(p2, 32, 48, opts), SizeCapError);
}
