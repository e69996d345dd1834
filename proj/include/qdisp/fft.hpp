#pragma once

#include <span>
#include <vector>

#include "qdisp/linalg.hpp"

namespace qdisp::fft {

enum class Direction { Forward, Backward };

/// Unnormalized in-place DFT of a row-major array with the given extents.
/// Forward uses exp(-i k x). Backed by FFTW with estimate-mode plans, which
/// are deterministic.
void transform(std::span<cplx> data, std::span<const int> extents, Direction dir);

/// Naive O(N^2) one-dimensional DFT with the same conventions; test oracle.
std::vector<cplx> naive_dft(std::span<const cplx> data, Direction dir);

}  // namespace qdisp::fft
