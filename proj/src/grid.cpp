#include "qdisp/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdisp/error.hpp"
#include "qdisp/kernels.hpp"

namespace qdisp {

GridSpec::GridSpec(int dim, int n, Vec origin, Vec spacing)
    : dim_(dim), n_(n), origin_(std::move(origin)), spacing_(std::move(spacing)), size_(1) {
  require(dim_ >= 1 && dim_ <= 3, ErrorKind::InvalidArgument, "grid dimension must be 1, 2 or 3");
  require(n_ >= 8, ErrorKind::InvalidArgument, "grid needs at least 8 points per axis");
  require(origin_.size() == dim_ && spacing_.size() == dim_, ErrorKind::InvalidArgument,
          "grid origin and spacing must match the dimension");
  require(origin_.allFinite(), ErrorKind::InvalidArgument, "grid origin must be finite");
  for (int a = 0; a < dim_; ++a) {
    require(std::isfinite(spacing_[a]) && spacing_[a] > 0.0, ErrorKind::InvalidArgument,
            "grid spacing must be positive");
    size_ *= static_cast<std::size_t>(n_);
    require(size_ <= kMaxPoints, ErrorKind::InvalidArgument,
            "grid exceeds the memory cap of " + std::to_string(kMaxPoints) + " points");
  }
}

GridSpec GridSpec::box(int dim, int n, double lo, double hi) {
  require(hi > lo, ErrorKind::InvalidArgument, "grid interval must have hi > lo");
  return GridSpec(dim, n, Vec::Constant(dim, lo), Vec::Constant(dim, (hi - lo) / n));
}

double GridSpec::cell_volume() const { return spacing_.prod(); }

Vec GridSpec::point(std::size_t flat) const {
  Vec r(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    const auto i = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
    r[a] = coord(a, i);
  }
  return r;
}

double GridSpec::wave_number(int axis, int j) const {
  const int m = j < (n_ + 1) / 2 ? j : j - n_;
  return 2.0 * std::numbers::pi * m / length(axis);
}

double GridSpec::nyquist(int axis) const { return std::numbers::pi / spacing_[axis]; }

double GridSpec::k_cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= 2.0 * std::numbers::pi / length(a);
  return v;
}

GridField::GridField(GridSpec spec, std::vector<cplx> amplitude)
    : spec_(std::move(spec)), amplitude_(std::move(amplitude)) {
  require(amplitude_.size() == spec_.size(), ErrorKind::InvalidArgument,
          "amplitude length does not match the grid");
  mass_ = kernels::mass_sum(amplitude_) * spec_.cell_volume();
}

GridField GridField::sample(const GridSpec& spec, const std::function<cplx(const Vec&)>& f) {
  std::vector<cplx> values(spec.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(spec.point(i));
  return GridField(spec, std::move(values));
}

std::vector<double> GridField::density() const {
  std::vector<double> rho(amplitude_.size());
  kernels::density(amplitude_, rho);
  return rho;
}

GridField GridField::normalized() const {
  require(mass_ > 0.0 && std::isfinite(mass_), ErrorKind::NormalizationFailure,
          "cannot normalize a field with zero or non-finite mass");
  const double scale = 1.0 / std::sqrt(mass_);
  std::vector<cplx> values(amplitude_);
  for (cplx& z : values) z *= scale;
  return GridField(spec_, std::move(values));
}

}  // namespace qdisp
