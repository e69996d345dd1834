#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qdisp/dispersion.hpp"
#include "qdisp/field_grid.hpp"
#include "qdisp/grid.hpp"

namespace qdisp {

/// C constant, W decreasing, M increasing, I oscillating.
enum class PartitionClass { C, W, M, I };

std::string_view to_string(PartitionClass c);

/// Default tolerances (nats).
inline constexpr double kAnalyticTolerance = 1e-8;
inline constexpr double kGridTolerance = 1e-4;

/// Sign of each successive difference thresholded at +-tolerance: -1, 0 or +1.
std::vector<int> interval_signs(const EntropyTrajectory& traj);

/// Throws TooFewSamples below three samples.
PartitionClass classify(const EntropyTrajectory& traj);

/// Largest pointwise |rho(t) - rho(0)| over the given times.
double max_density_drift(const GridField& f, const DispersionModel& model,
                         std::span<const double> times);

/// True when the density stays within `tolerance` of its initial value at
/// every time.
bool stationary_density_check(const GridField& f, const DispersionModel& model,
                              std::span<const double> times, double tolerance = 1e-10);

/// Two stationary states c_j A_j(r) exp(i (phi_j(r) + omega_j t)) on a common grid.
struct StationaryPair {
  GridSpec grid;
  std::vector<double> a1, a2;
  std::vector<double> phi1, phi2;
  double omega1 = 0.0;
  double omega2 = 1.0;
  cplx mix1 = 1.0;
  cplx mix2 = 1.0;

  /// Throws InvalidArgument on size mismatch or omega1 == omega2.
  void validate() const;
};

/// Normalized density of the pair at time t.
std::vector<double> superposition_density(const StationaryPair& p, double t);

/// Entropy at `samples` equally spaced times over [0, delta_t].
EntropyTrajectory superposition_trajectory(const StationaryPair& p, double delta_t,
                                           std::size_t samples,
                                           double tolerance = kAnalyticTolerance);

}  // namespace qdisp
