#pragma once

#include "qdisp/dispersion.hpp"
#include "qdisp/linalg.hpp"

namespace qdisp {

class GridSpec;
class GridField;

/// Gaussian amplitude N(r; r0, Sigma) exp(i k0 . r), normalized so that
/// |psi|^2 integrates to one. The density covariance is Sigma / 2.
struct CoherentPacket {
  Vec r0;
  Mat sigma;
  Vec k0;

  CoherentPacket(Vec r0, Mat sigma, Vec k0);

  /// Isotropic packet with Sigma = width^2 I.
  static CoherentPacket isotropic(Vec r0, double width, Vec k0);

  int dim() const { return static_cast<int>(r0.size()); }
};

/// Second-order expansion of omega about the packet's centre wave vector.
struct LocalDispersion {
  double omega0 = 0.0;  ///< omega(k0); only enters a global phase
  Vec group_velocity;
  Mat hessian;

  static LocalDispersion from_model(const DispersionModel& model, const Vec& k0);
};

/// Sigma + t^2 H Sigma^-1 H. Throws SingularMatrix when Sigma is not
/// positive definite to working precision.
Mat sigma_t(const Mat& sigma, const Mat& h, double t);

/// Analytic state of a coherent packet after the quadratic dispersion
/// transform: amplitude ~ N(r; r0 + v_g t, Sigma + i t H).
class EvolvedGaussian {
 public:
  EvolvedGaussian(CoherentPacket base, LocalDispersion local, double t);

  const CoherentPacket& base() const { return base_; }
  const LocalDispersion& local() const { return local_; }
  double time() const { return t_; }
  int dim() const { return base_.dim(); }

  const Vec& center() const { return center_; }
  const CMat& complex_cov() const { return complex_cov_; }
  /// Covariance of |psi|^2, i.e. Sigma(t) / 2.
  const Mat& density_cov() const { return density_cov_; }
  const Mat& sigma_t() const { return sigma_t_; }

  /// Amplitude including the carrier exp(i k0.r) and the global phase
  /// exp(-i omega0 t).
  cplx amplitude(const Vec& r) const;
  double density(const Vec& r) const;

 private:
  CoherentPacket base_;
  LocalDispersion local_;
  double t_;
  Vec center_;
  CMat complex_cov_;
  CMat complex_cov_inv_;
  Mat sigma_t_;
  Mat density_cov_;
  Mat density_prec_;
  double density_norm_;
  cplx amplitude_norm_;
};

/// Evolve a packet under the quadratic expansion of `model` about k0.
/// Throws DegenerateInput for massless Dirac with k0 = 0.
EvolvedGaussian evolve_packet(const CoherentPacket& p, const DispersionModel& model, double t);

/// Differential entropy of the packet density in nats:
/// d/2 (1 + ln 2 pi) + 1/2 ln det(density_cov).
double gaussian_entropy(const EvolvedGaussian& g);

/// Same closed form for an arbitrary covariance.
double gaussian_entropy(const Mat& density_cov);

/// Sample an evolved Gaussian's amplitude on a grid.
GridField sample(const EvolvedGaussian& g, const GridSpec& spec);

/// A state that, evolved forward for tau, becomes the real-covariance packet
/// `p` centred at p.r0 + v_g tau. Its amplitude has complex covariance
/// Sigma - i tau H and is centred at p.r0. Throws GridTooCoarse if the
/// packet's spectrum or spatial extent does not fit the grid.
GridField backward_prepared_packet(const CoherentPacket& p, const DispersionModel& model,
                                   double tau, const GridSpec& spec);

}  // namespace qdisp
