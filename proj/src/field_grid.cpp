#include "qdisp/field_grid.hpp"

#include <cmath>
#include <exception>
#include <numbers>

#include "qdisp/error.hpp"
#include "qdisp/fft.hpp"
#include "qdisp/kernels.hpp"

namespace qdisp {

namespace {

constexpr double kAliasBand = 0.9;
constexpr double kAliasTolerance = 1e-6;

void require_normalized(double mass) {
  if (!(std::abs(mass - 1.0) <= kNormTolerance)) {
    fail(ErrorKind::NotNormalized, "field mass differs from 1 by more than 1e-9");
  }
}

std::vector<int> extents(const GridSpec& spec) { return std::vector<int>(spec.dim(), spec.n()); }

// Visits every spectral bin with its wave vector.
template <class Fn>
void for_each_mode(const GridSpec& spec, Fn&& fn) {
  const int d = spec.dim();
  const int n = spec.n();
  Vec k(d);
  std::vector<int> idx(d, 0);
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    for (int a = 0; a < d; ++a) k[a] = spec.wave_number(a, idx[a]);
    fn(flat, k);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
}

double band_fraction(const GridSpec& spec, std::span<const cplx> spectrum) {
  double inside = 0.0;
  double total = 0.0;
  for_each_mode(spec, [&](std::size_t i, const Vec& k) {
    const double w = std::norm(spectrum[i]);
    total += w;
    bool ok = true;
    for (int a = 0; a < spec.dim(); ++a) ok = ok && std::abs(k[a]) < kAliasBand * spec.nyquist(a);
    if (ok) inside += w;
  });
  return total > 0.0 ? inside / total : 1.0;
}

std::vector<cplx> forward(const GridField& f) {
  std::vector<cplx> data = f.values();
  const auto ext = extents(f.spec());
  fft::transform(data, ext, fft::Direction::Forward);
  return data;
}

}  // namespace

double numerical_entropy(std::span<const double> rho, double cell_volume) {
  require(cell_volume > 0.0, ErrorKind::InvalidArgument, "cell volume must be positive");
  double mass = 0.0;
  for (double r : rho) mass += r;
  require_normalized(mass * cell_volume);
  return kernels::entropy_sum(rho) * cell_volume;
}

double numerical_entropy(const GridField& f) {
  require_normalized(f.mass());
  return kernels::entropy_sum(f.density()) * f.spec().cell_volume();
}

double band_limited_fraction(const GridField& f) {
  return band_fraction(f.spec(), forward(f));
}

GridField spectral_propagate(const GridField& f, const DispersionModel& model, double t,
                             const PropagationMode& mode) {
  const GridSpec& spec = f.spec();
  require(spec.is_power_of_two(), ErrorKind::InvalidArgument,
          "spectral propagation needs a power-of-two grid");
  require(std::isfinite(t), ErrorKind::InvalidArgument, "time must be finite");
  model.validate();

  std::vector<cplx> data = forward(f);
  if (band_fraction(spec, data) < 1.0 - kAliasTolerance) {
    fail(ErrorKind::AliasRisk, "field has spectral mass near the Nyquist limit");
  }

  std::vector<double> angle(data.size());
  if (mode.kind == PropagationMode::Kind::ExactOmega) {
    for_each_mode(spec, [&](std::size_t i, const Vec& k) {
      angle[i] = omega(model, WaveVector(k)) * t;
    });
  } else {
    require(mode.k0.size() == spec.dim(), ErrorKind::InvalidArgument,
            "expansion point dimension differs from the grid");
    const WaveVector k0(mode.k0);
    const double w0 = omega(model, k0);
    const Vec vg = group_velocity(model, k0);
    const Mat h = hessian(model, k0);
    for_each_mode(spec, [&](std::size_t i, const Vec& k) {
      const Vec dk = k - mode.k0;
      angle[i] = (w0 + vg.dot(dk) + 0.5 * dk.dot(h * dk)) * t;
    });
  }
  kernels::apply_phase(data, angle);

  const auto ext = extents(spec);
  fft::transform(data, ext, fft::Direction::Backward);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (cplx& z : data) z *= scale;
  return GridField(spec, std::move(data));
}

double momentum_entropy(const GridField& f) {
  require_normalized(f.mass());
  const GridSpec& spec = f.spec();
  const std::vector<cplx> data = forward(f);
  // phi(k) = (2 pi)^(-d/2) sum psi_j exp(-i k x_j) dV
  const double scale = spec.cell_volume() * spec.cell_volume() /
                       std::pow(2.0 * std::numbers::pi, spec.dim());
  std::vector<double> rho(data.size());
  kernels::density(data, rho);
  for (double& r : rho) r *= scale;
  return numerical_entropy(rho, spec.k_cell_volume());
}

GridField conjugate(const GridField& f) {
  std::vector<cplx> values(f.values());
  for (cplx& z : values) z = std::conj(z);
  return GridField(f.spec(), std::move(values));
}

GridField involution_F(const GridField& f, const DispersionModel& model, double delta_t) {
  return spectral_propagate(conjugate(f), model, -delta_t);
}

EntropyTrajectory::EntropyTrajectory(std::vector<double> times, std::vector<double> entropies,
                                     double tolerance)
    : times_(std::move(times)), entropies_(std::move(entropies)), tolerance_(tolerance) {
  require(times_.size() == entropies_.size(), ErrorKind::InvalidArgument,
          "trajectory times and entropies differ in length");
  require(tolerance_ > 0.0 && std::isfinite(tolerance_), ErrorKind::InvalidArgument,
          "trajectory tolerance must be positive");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    require(times_[i] > times_[i - 1], ErrorKind::InvalidArgument,
            "trajectory times must be strictly increasing");
  }
}

EntropyTrajectory EntropyTrajectory::reversed() const {
  const std::size_t n = times_.size();
  std::vector<double> t(n);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = times_.front() + times_.back() - times_[n - 1 - i];
    s[i] = entropies_[n - 1 - i];
  }
  return EntropyTrajectory(std::move(t), std::move(s), tolerance_);
}

std::vector<double> uniform_times(double t_end, double dt) {
  require(dt > 0.0 && t_end >= 0.0 && std::isfinite(t_end) && std::isfinite(dt),
          ErrorKind::InvalidArgument, "need dt > 0 and t_end >= 0");
  const auto steps = static_cast<long>(std::llround(t_end / dt));
  std::vector<double> out(static_cast<std::size_t>(steps + 1));
  for (long i = 0; i <= steps; ++i) out[static_cast<std::size_t>(i)] = i * dt;
  return out;
}

EntropyTrajectory field_entropy_trajectory(const GridField& f, const DispersionModel& model,
                                           std::span<const double> times, double tolerance,
                                           const PropagationMode& mode) {
  std::vector<double> s(times.size());
  std::exception_ptr error;
  const auto count = static_cast<long>(times.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      const auto idx = static_cast<std::size_t>(i);
      s[idx] = numerical_entropy(spectral_propagate(f, model, times[idx], mode).normalized());
    } catch (...) {
#pragma omp critical(qdisp_trajectory_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return EntropyTrajectory(std::vector<double>(times.begin(), times.end()), std::move(s),
                           tolerance);
}

}  // namespace qdisp
