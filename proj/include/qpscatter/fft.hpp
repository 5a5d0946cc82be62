#pragma once

#include <span>

#include "qpscatter/types.hpp"

namespace qps {

/// In-place unnormalized DFT, X_k = sum_n x_n exp(-2 pi i k n / N).
void fft_forward(std::span<Complex> data);
/// In-place unnormalized inverse DFT, x_n = sum_k X_k exp(+2 pi i k n / N).
void fft_backward(std::span<Complex> data);

}  // namespace qps
