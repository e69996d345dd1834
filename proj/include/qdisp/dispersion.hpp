#pragma once

#include <string_view>

#include "qdisp/linalg.hpp"

namespace qdisp {

enum class ModelKind { Schrodinger, Dirac };
enum class Branch { Positive, Negative };

std::string_view to_string(ModelKind kind);
std::string_view to_string(Branch branch);

/// Free-particle dispersion model. Natural units (hbar = c = 1) by default;
/// units are documentation only.
struct DispersionModel {
  ModelKind kind = ModelKind::Schrodinger;
  double mass = 1.0;
  double hbar = 1.0;
  double c = 1.0;
  Branch branch = Branch::Positive;

  static DispersionModel schrodinger(double mass, double hbar = 1.0);
  static DispersionModel dirac(double mass, double hbar = 1.0, double c = 1.0,
                               Branch branch = Branch::Positive);

  /// Throws InvalidArgument unless the invariants hold.
  void validate() const;

  /// +1 on the positive branch, -1 on the negative Dirac branch.
  double sign() const { return branch == Branch::Negative ? -1.0 : 1.0; }

  /// (m c / hbar)^2, the squared Compton wave number.
  double compton_sq() const { return (mass * c / hbar) * (mass * c / hbar); }
};

/// A wave vector in 1, 2 or 3 dimensions.
class WaveVector {
 public:
  WaveVector() = default;
  explicit WaveVector(Vec components);
  WaveVector(std::initializer_list<double> components);

  static WaveVector zero(int dim);

  int dim() const { return static_cast<int>(k_.size()); }
  const Vec& components() const { return k_; }
  double norm_sq() const { return k_.squaredNorm(); }
  double operator[](int i) const { return k_[i]; }

 private:
  Vec k_;
};

/// Angular frequency omega(k).
double omega(const DispersionModel& model, const WaveVector& k);

/// Gradient of omega with respect to k.
Vec group_velocity(const DispersionModel& model, const WaveVector& k);

/// Second-derivative matrix of omega with respect to k (d x d).
Mat hessian(const DispersionModel& model, const WaveVector& k);

struct HessianEigenvalues {
  double longitudinal;  ///< multiplicity 1, along k
  double transverse;    ///< multiplicity 2, orthogonal to k
};

/// Closed-form eigenvalues of the (3D-embedded) Hessian.
HessianEigenvalues hessian_eigenvalues(const DispersionModel& model, const WaveVector& k);

}  // namespace qdisp
