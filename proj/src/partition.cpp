#include "qdisp/partition.hpp"

#include <algorithm>
#include <cmath>

#include "qdisp/error.hpp"
#include "qdisp/kernels.hpp"

namespace qdisp {

std::string_view to_string(PartitionClass c) {
  switch (c) {
    case PartitionClass::C: return "C";
    case PartitionClass::W: return "W";
    case PartitionClass::M: return "M";
    case PartitionClass::I: return "I";
  }
  return "?";
}

std::vector<int> interval_signs(const EntropyTrajectory& traj) {
  const auto& s = traj.entropies();
  std::vector<int> out;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double d = s[i] - s[i - 1];
    out.push_back(d > traj.tolerance() ? 1 : (d < -traj.tolerance() ? -1 : 0));
  }
  return out;
}

PartitionClass classify(const EntropyTrajectory& traj) {
  if (traj.size() < 3) fail(ErrorKind::TooFewSamples, "classification needs at least 3 samples");
  const auto signs = interval_signs(traj);
  const bool up = std::find(signs.begin(), signs.end(), 1) != signs.end();
  const bool down = std::find(signs.begin(), signs.end(), -1) != signs.end();
  if (up && down) return PartitionClass::I;
  if (up) return PartitionClass::M;
  if (down) return PartitionClass::W;
  return PartitionClass::C;
}

double max_density_drift(const GridField& f, const DispersionModel& model,
                         std::span<const double> times) {
  const std::vector<double> rho0 = f.density();
  double drift = 0.0;
  for (double t : times) {
    const std::vector<double> rho = spectral_propagate(f, model, t).density();
    for (std::size_t i = 0; i < rho.size(); ++i) drift = std::max(drift, std::abs(rho[i] - rho0[i]));
  }
  return drift;
}

bool stationary_density_check(const GridField& f, const DispersionModel& model,
                              std::span<const double> times, double tolerance) {
  return max_density_drift(f, model, times) < tolerance;
}

void StationaryPair::validate() const {
  const std::size_t n = grid.size();
  require(a1.size() == n && a2.size() == n && phi1.size() == n && phi2.size() == n,
          ErrorKind::InvalidArgument, "stationary pair arrays must match the grid");
  require(omega1 != omega2, ErrorKind::InvalidArgument, "stationary pair needs omega1 != omega2");
  require(std::isfinite(omega1) && std::isfinite(omega2), ErrorKind::InvalidArgument,
          "frequencies must be finite");
}

std::vector<double> superposition_density(const StationaryPair& p, double t) {
  p.validate();
  const double w1 = std::abs(p.mix1);
  const double w2 = std::abs(p.mix2);
  const double phase0 = std::arg(p.mix1) - std::arg(p.mix2) + (p.omega1 - p.omega2) * t;
  std::vector<double> rho(p.grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double x1 = w1 * p.a1[i];
    const double x2 = w2 * p.a2[i];
    rho[i] = x1 * x1 + x2 * x2 + 2.0 * x1 * x2 * std::cos(p.phi1[i] - p.phi2[i] + phase0);
  }
  double z = 0.0;
  for (double r : rho) z += r;
  z *= p.grid.cell_volume();
  require(z > 0.0 && std::isfinite(z), ErrorKind::NormalizationFailure,
          "superposition has zero norm");
  for (double& r : rho) r /= z;
  return rho;
}

EntropyTrajectory superposition_trajectory(const StationaryPair& p, double delta_t,
                                           std::size_t samples, double tolerance) {
  require(samples >= 2, ErrorKind::InvalidArgument, "need at least two samples");
  require(delta_t > 0.0, ErrorKind::InvalidArgument, "delta_t must be positive");
  std::vector<double> times(samples);
  std::vector<double> s(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    times[i] = delta_t * static_cast<double>(i) / static_cast<double>(samples - 1);
    s[i] = numerical_entropy(superposition_density(p, times[i]), p.grid.cell_volume());
  }
  return EntropyTrajectory(std::move(times), std::move(s), tolerance);
}

}  // namespace qdisp
