#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qdisp/linalg.hpp"

namespace qdisp {

/// Uniform grid with n points per axis in d <= 3 dimensions. Point i along an
/// axis sits at origin + i * spacing; the domain is treated as periodic with
/// period n * spacing by the spectral routines.
class GridSpec {
 public:
  static constexpr std::size_t kMaxPoints = std::size_t{1} << 27;

  GridSpec(int dim, int n, Vec origin, Vec spacing);

  /// Same [lo, hi) interval on every axis.
  static GridSpec box(int dim, int n, double lo, double hi);

  int dim() const { return dim_; }
  int n() const { return n_; }
  const Vec& origin() const { return origin_; }
  const Vec& spacing() const { return spacing_; }
  std::size_t size() const { return size_; }
  double cell_volume() const;
  bool is_power_of_two() const { return (n_ & (n_ - 1)) == 0; }

  double coord(int axis, int i) const { return origin_[axis] + i * spacing_[axis]; }
  double length(int axis) const { return n_ * spacing_[axis]; }
  /// Position of a flat index (row-major, last axis fastest).
  Vec point(std::size_t flat) const;

  /// Angular wave number of FFT bin j along an axis (standard FFT ordering).
  double wave_number(int axis, int j) const;
  /// Largest representable wave number pi / spacing.
  double nyquist(int axis) const;
  /// Volume element in k-space.
  double k_cell_volume() const;

  bool operator==(const GridSpec& other) const = default;

 private:
  int dim_;
  int n_;
  Vec origin_;
  Vec spacing_;
  std::size_t size_;
};

/// Complex amplitude sampled on a GridSpec. Immutable once built.
class GridField {
 public:
  GridField(GridSpec spec, std::vector<cplx> amplitude);

  static GridField sample(const GridSpec& spec, const std::function<cplx(const Vec&)>& f);

  const GridSpec& spec() const { return spec_; }
  std::span<const cplx> amplitude() const { return amplitude_; }
  const std::vector<cplx>& values() const { return amplitude_; }
  /// L2 mass sum |psi|^2 dV, computed at construction.
  double mass() const { return mass_; }

  std::vector<double> density() const;
  /// Copy rescaled to unit mass. Throws NormalizationFailure for a zero field.
  GridField normalized() const;

 private:
  GridSpec spec_;
  std::vector<cplx> amplitude_;
  double mass_;
};

}  // namespace qdisp
