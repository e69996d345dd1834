#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qdisp/dispersion.hpp"
#include "qdisp/grid.hpp"

namespace qdisp {

/// Mass tolerance accepted by the entropy functionals.
inline constexpr double kNormTolerance = 1e-9;

/// Differential entropy -sum rho ln rho dV of |f|^2 in nats. Throws
/// NotNormalized when |mass - 1| > 1e-9.
double numerical_entropy(const GridField& f);

/// Same functional on a bare density array with cell volume dV.
double numerical_entropy(std::span<const double> rho, double cell_volume);

/// Spectral propagation phase. ExactOmega uses omega(k) itself;
/// QuadraticTaylor uses its second-order expansion about `k0`.
struct PropagationMode {
  enum class Kind { ExactOmega, QuadraticTaylor } kind = Kind::ExactOmega;
  Vec k0;

  static PropagationMode exact() { return {}; }
  static PropagationMode quadratic(Vec k0) { return {Kind::QuadraticTaylor, std::move(k0)}; }
};

/// Fraction of spectral mass with every |k_a| < 0.9 k_nyquist.
double band_limited_fraction(const GridField& f);

/// Forward DFT, multiply by exp(-i omega(k) t), inverse DFT. Periodic domain.
/// Throws AliasRisk when less than 1 - 1e-6 of the spectral mass lies below
/// 0.9 of the Nyquist wave number, InvalidArgument unless n is a power of two.
GridField spectral_propagate(const GridField& f, const DispersionModel& model, double t,
                             const PropagationMode& mode = PropagationMode::exact());

/// Entropy of |phi(k)|^2 where phi is the continuum-normalized Fourier
/// transform (sum |phi|^2 dk^d = 1).
double momentum_entropy(const GridField& f);

/// Pointwise complex conjugate.
GridField conjugate(const GridField& f);

/// psi -> exp(i H dt) conj(psi): conjugate then propagate by -dt.
GridField involution_F(const GridField& f, const DispersionModel& model, double delta_t);

/// Sampled entropy S(t). Times strictly increasing, tolerance > 0.
class EntropyTrajectory {
 public:
  EntropyTrajectory(std::vector<double> times, std::vector<double> entropies, double tolerance);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& entropies() const { return entropies_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return times_.size(); }

  /// Same samples traversed backwards: S'(t_i) = S(t_{n-1-i}), times
  /// re-expressed as t_0 + t_{n-1} - t.
  EntropyTrajectory reversed() const;

 private:
  std::vector<double> times_;
  std::vector<double> entropies_;
  double tolerance_;
};

/// Uniform sample times 0, dt, ..., t_end (count = round(t_end / dt) + 1).
std::vector<double> uniform_times(double t_end, double dt);

/// Entropy of spectral_propagate(f, model, t) at each time. Samples are
/// independent and evaluated in parallel.
EntropyTrajectory field_entropy_trajectory(const GridField& f, const DispersionModel& model,
                                           std::span<const double> times, double tolerance,
                                           const PropagationMode& mode = PropagationMode::exact());

}  // namespace qdisp
