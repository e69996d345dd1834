#pragma once

#include <cstddef>
#include <span>

#include "qdisp/linalg.hpp"

// Data-parallel inner loops. Each parallel kernel has a plain serial
// reference next to it; the tests hold the two against each other and the
// benchmark in bench/ times them.
//
// Parallel reductions sum fixed-size blocks independently and then add the
// block partials in index order, so results are bit-identical for any thread
// count.

namespace qdisp::kernels {

inline constexpr std::size_t kBlock = 4096;

/// Threads available to the parallel kernels (1 without OpenMP).
int max_threads();
void set_threads(int n);

/// -sum rho ln rho with 0 ln 0 = 0 and non-positive entries skipped.
double entropy_sum(std::span<const double> rho);
double entropy_sum_serial(std::span<const double> rho);

/// sum |psi|^2.
double mass_sum(std::span<const cplx> psi);
double mass_sum_serial(std::span<const cplx> psi);

/// |psi|^2 elementwise.
void density(std::span<const cplx> psi, std::span<double> out);

/// data[i] *= exp(-i angle[i]).
void apply_phase(std::span<cplx> data, std::span<const double> angle);
void apply_phase_serial(std::span<cplx> data, std::span<const double> angle);

/// Entropy sum over the n x n two-particle grid without materialising it:
///   rho_ij = |p1_i p2_j + sign p1_j p2_i|^2 * inv_norm
/// Returns -sum rho ln rho. Uses rho_ij = rho_ji and visits i <= j only.
double joint_entropy_sum(std::span<const cplx> p1, std::span<const cplx> p2, double sign,
                         double inv_norm);

/// Reference for joint_entropy_sum. Visits every cell and builds rho from the
/// expanded form
///   rho1_i rho2_j + rho1_j rho2_i + sign 2 Re(p1_i conj(p2_i) p2_j conj(p1_j)).
double joint_entropy_sum_serial(std::span<const cplx> p1, std::span<const cplx> p2, double sign,
                                double inv_norm);

/// Fill out[i * n + j] with rho_ij as above.
void joint_density(std::span<const cplx> p1, std::span<const cplx> p2, double sign,
                   double inv_norm, std::span<double> out);

}  // namespace qdisp::kernels
