#include "qdisp/dispersion.hpp"

#include <cmath>
#include <string>

#include "qdisp/error.hpp"

namespace qdisp {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Dirac ? "dirac" : "schrodinger";
}

std::string_view to_string(Branch branch) {
  return branch == Branch::Negative ? "negative" : "positive";
}

DispersionModel DispersionModel::schrodinger(double mass, double hbar) {
  DispersionModel m{ModelKind::Schrodinger, mass, hbar, 1.0, Branch::Positive};
  m.validate();
  return m;
}

DispersionModel DispersionModel::dirac(double mass, double hbar, double c, Branch branch) {
  DispersionModel m{ModelKind::Dirac, mass, hbar, c, branch};
  m.validate();
  return m;
}

void DispersionModel::validate() const {
  require(std::isfinite(mass) && std::isfinite(hbar) && std::isfinite(c),
          ErrorKind::InvalidArgument, "model parameters must be finite");
  require(hbar > 0.0, ErrorKind::InvalidArgument, "hbar must be positive");
  require(c > 0.0, ErrorKind::InvalidArgument, "c must be positive");
  if (kind == ModelKind::Schrodinger) {
    require(mass > 0.0, ErrorKind::InvalidArgument, "Schrodinger mass must be positive");
    require(branch == Branch::Positive, ErrorKind::InvalidArgument,
            "Schrodinger model has only the positive branch");
  } else {
    require(mass >= 0.0, ErrorKind::InvalidArgument, "Dirac mass must be non-negative");
  }
}

WaveVector::WaveVector(Vec components) : k_(std::move(components)) {
  require(k_.size() >= 1 && k_.size() <= 3, ErrorKind::InvalidArgument,
          "wave vector dimension must be 1, 2 or 3");
  require(k_.allFinite(), ErrorKind::InvalidArgument, "wave vector must be finite");
}

WaveVector::WaveVector(std::initializer_list<double> components)
    : WaveVector(Vec(Eigen::Map<const Vec>(components.begin(),
                                           static_cast<Eigen::Index>(components.size())))) {}

WaveVector WaveVector::zero(int dim) { return WaveVector(Vec::Zero(dim)); }

namespace {

// |k|^2 + (mc/hbar)^2
double dirac_energy_sq(const DispersionModel& model, const WaveVector& k) {
  return k.norm_sq() + model.compton_sq();
}

void check_massless_origin(const DispersionModel& model, const WaveVector& k) {
  if (model.kind == ModelKind::Dirac && model.mass == 0.0 && k.norm_sq() == 0.0) {
    fail(ErrorKind::DegenerateInput, "massless Dirac dispersion is not differentiable at k = 0");
  }
}

}  // namespace

double omega(const DispersionModel& model, const WaveVector& k) {
  if (model.kind == ModelKind::Schrodinger) return model.hbar * k.norm_sq() / (2.0 * model.mass);
  return model.sign() * model.c * std::sqrt(dirac_energy_sq(model, k));
}

Vec group_velocity(const DispersionModel& model, const WaveVector& k) {
  check_massless_origin(model, k);
  if (model.kind == ModelKind::Schrodinger) return (model.hbar / model.mass) * k.components();
  return (model.sign() * model.c / std::sqrt(dirac_energy_sq(model, k))) * k.components();
}

Mat hessian(const DispersionModel& model, const WaveVector& k) {
  check_massless_origin(model, k);
  const int d = k.dim();
  if (model.kind == ModelKind::Schrodinger) {
    return (model.hbar / model.mass) * Mat::Identity(d, d);
  }
  // The d-dimensional block of the 3D Hessian with k padded by zeros.
  const double e2 = dirac_energy_sq(model, k);
  const double e1 = std::sqrt(e2);
  const double k2 = k.norm_sq();
  Mat h = Mat::Identity(d, d) / e1;
  if (k2 > 0.0) {
    // Along k the entry is 1/e1 - k^2/e1^3 = (m c / hbar)^2 / e1^3; written
    // directly to avoid cancellation when |k| dominates.
    const Vec u = k.components() / std::sqrt(k2);
    h += (model.compton_sq() / (e2 * e1) - 1.0 / e1) * (u * u.transpose());
  }
  return model.sign() * model.c * h;
}

HessianEigenvalues hessian_eigenvalues(const DispersionModel& model, const WaveVector& k) {
  check_massless_origin(model, k);
  if (model.kind == ModelKind::Schrodinger) {
    const double lam = model.hbar / model.mass;
    return {lam, lam};
  }
  const double e2 = dirac_energy_sq(model, k);
  const double e1 = std::sqrt(e2);
  const double s = model.sign() * model.c;
  return {s * model.compton_sq() / (e2 * e1), s / e1};
}

}  // namespace qdisp
