#include "qpscatter/fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace qps {

namespace {

// FFTW planning is not thread-safe; execution with new-array is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void run(std::span<Complex> data, int sign) {
    if (data.size() <= 1) return;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace

void fft_forward(std::span<Complex> data) { run(data, FFTW_FORWARD); }
void fft_backward(std::span<Complex> data) { run(data, FFTW_BACKWARD); }

}  // namespace qps
