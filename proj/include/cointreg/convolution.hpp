#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cointreg {

/// out[i] = sum_k taps[k] * input[first + i - k] for i in [0, count).
/// Requires first + 1 >= taps.size() and first + count <= input.size().
/// Short filters are applied directly; long ones through an FFTW real
/// transform (planned with FFTW_ESTIMATE, so results are reproducible).
std::vector<double> causal_filter(std::span<const double> input,
                                  std::span<const double> taps,
                                  std::size_t first,
                                  std::size_t count);

} // namespace cointreg
