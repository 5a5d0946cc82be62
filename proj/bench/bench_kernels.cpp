// Serial reference vs OpenMP kernels. Usage: bench_kernels [repeats]
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include <qpscatter/diagnostics.hpp>
#include <qpscatter/kernels.hpp>
#include <qpscatter/presets.hpp>
#include <qpscatter/tensor.hpp>

using namespace qps;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count());
    }
    return best;
}

CMatrix random_matrix(Eigen::Index r, Eigen::Index c) {
    static std::mt19937 gen(7);
    std::normal_distribution<double> d;
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(d(gen), d(gen));
    return m;
}

void report(const char* name, int M, int N, double serial, double parallel, double diff) {
    std::printf("%-22s M=%-5d N=%-5d serial %9.4f s  parallel %9.4f s  speedup %5.2f  max diff %.1e\n", name, M, N,
                serial, parallel, serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
    const ProblemSpec p{IncidentWave{}, medium_eps3()};
    const auto medium = resolve_medium(p.medium);
    std::printf("eps3 separable rank %d\n", medium.rank());

    for (auto [M, N] : {std::pair{64, 64}, std::pair{128, 128}, std::pair{256, 256}}) {
        const auto s = assemble_tensor(p, M, N, medium);
        const CMatrix V = random_matrix(M, N);
        CMatrix a, b;
        const double ts = best_of(repeats, [&] { a = kernels::serial::tensor_interior(s, V); });
        const double tp = best_of(repeats, [&] { b = kernels::parallel::tensor_interior(s, V); });
        report("tensor_interior", M, N, ts, tp, (a - b).cwiseAbs().maxCoeff());
    }

    for (auto [M, N] : {std::pair{128, 128}, std::pair{512, 256}}) {
        const auto modes = mode_constants(p.wave, N);
        const LayeredPreconditioner P(modes, M, p.wave.omega * p.wave.omega * p.wave.mu, medium.x_average());
        const CMatrix rhs = random_matrix(M, N);
        CMatrix a, b;
        const double ts = best_of(repeats, [&] { a = kernels::serial::solve_modes(P.factors(), rhs); });
        const double tp = best_of(repeats, [&] { b = kernels::parallel::solve_modes(P.factors(), rhs); });
        report("solve_modes", M, N, ts, tp, (a - b).cwiseAbs().maxCoeff());
    }

    {
        const int M = 128, N = 128;
        const CMatrix V = random_matrix(M, N);
        const auto xs = uniform_points(0.0, 2.0 * kPi, 256), ys = uniform_points(-1.0, 1.0, 128);
        CMatrix a, b;
        const double ts = best_of(repeats, [&] { a = kernels::serial::evaluate_coefficients(V, N / 2 + 1, xs, ys); });
        const double tp = best_of(repeats, [&] { b = kernels::parallel::evaluate_coefficients(V, N / 2 + 1, xs, ys); });
        report("evaluate_coefficients", M, N, ts, tp, (a - b).cwiseAbs().maxCoeff());
    }
    return 0;
}
