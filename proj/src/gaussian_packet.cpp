#include "qdisp/gaussian_packet.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qdisp/error.hpp"
#include "qdisp/grid.hpp"

namespace qdisp {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::LLT<Mat> checked_llt(const Mat& sigma) {
  Eigen::LLT<Mat> llt(sigma);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::SingularMatrix, "covariance is not positive definite");
  }
  // Reject matrices that are positive definite only in name.
  const Vec diag = llt.matrixL().toDenseMatrix().diagonal();
  if (diag.minCoeff() <= 1e-7 * diag.maxCoeff()) {
    fail(ErrorKind::SingularMatrix, "covariance is numerically singular");
  }
  return llt;
}

}  // namespace

CoherentPacket::CoherentPacket(Vec r0_, Mat sigma_, Vec k0_)
    : r0(std::move(r0_)), sigma(std::move(sigma_)), k0(std::move(k0_)) {
  const auto d = r0.size();
  require(d >= 1 && d <= 3, ErrorKind::InvalidArgument, "packet dimension must be 1, 2 or 3");
  require(sigma.rows() == d && sigma.cols() == d && k0.size() == d, ErrorKind::InvalidArgument,
          "packet centre, covariance and wave vector dimensions differ");
  require(r0.allFinite() && sigma.allFinite() && k0.allFinite(), ErrorKind::InvalidArgument,
          "packet parameters must be finite");
  require((sigma - sigma.transpose()).norm() <= 1e-12 * sigma.norm(), ErrorKind::InvalidArgument,
          "packet covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() > 0.0, ErrorKind::InvalidArgument,
          "packet covariance must be positive definite");
}

CoherentPacket CoherentPacket::isotropic(Vec r0, double width, Vec k0) {
  const auto d = r0.size();
  return CoherentPacket(std::move(r0), width * width * Mat::Identity(d, d), std::move(k0));
}

LocalDispersion LocalDispersion::from_model(const DispersionModel& model, const Vec& k0) {
  model.validate();
  const WaveVector k(k0);
  return {omega(model, k), qdisp::group_velocity(model, k), qdisp::hessian(model, k)};
}

Mat sigma_t(const Mat& sigma, const Mat& h, double t) {
  require(sigma.rows() == sigma.cols() && h.rows() == sigma.rows() && h.cols() == sigma.cols(),
          ErrorKind::InvalidArgument, "sigma_t operands must be square and the same size");
  const auto llt = checked_llt(sigma);
  Mat out = sigma + (t * t) * (h * llt.solve(h));
  return 0.5 * (out + out.transpose());
}

EvolvedGaussian::EvolvedGaussian(CoherentPacket base, LocalDispersion local, double t)
    : base_(std::move(base)), local_(std::move(local)), t_(t) {
  const int d = base_.dim();
  require(local_.group_velocity.size() == d && local_.hessian.rows() == d &&
              local_.hessian.cols() == d,
          ErrorKind::InvalidArgument, "dispersion data does not match the packet dimension");
  require(std::isfinite(t_), ErrorKind::InvalidArgument, "time must be finite");

  center_ = base_.r0 + local_.group_velocity * t_;
  complex_cov_ = base_.sigma.cast<cplx>() + cplx(0.0, t_) * local_.hessian.cast<cplx>();
  complex_cov_inv_ = complex_cov_.partialPivLu().inverse();

  sigma_t_ = qdisp::sigma_t(base_.sigma, local_.hessian, t_);
  density_cov_ = 0.5 * sigma_t_;
  const auto llt = checked_llt(density_cov_);
  density_prec_ = llt.solve(Mat::Identity(d, d));
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  density_norm_ = std::exp(-0.5 * (d * std::log(2.0 * kPi) + log_det));

  // det(Sigma + i t H) = det(Sigma) prod(1 + i t lambda_j) with lambda_j the
  // generalized eigenvalues of (H, Sigma). Taking the principal root factor
  // by factor keeps the phase continuous in t.
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(local_.hessian, base_.sigma,
                                                    Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  cplx factor = std::pow((kPi * base_.sigma).determinant(), -0.25);
  for (int j = 0; j < d; ++j) factor /= std::sqrt(cplx(1.0, t_ * ges.eigenvalues()[j]));
  amplitude_norm_ = factor;
}

cplx EvolvedGaussian::amplitude(const Vec& r) const {
  const CVec y = (r - center_).cast<cplx>();
  const cplx q = (y.transpose() * complex_cov_inv_ * y)(0, 0);
  const double carrier = base_.k0.dot(r) - local_.omega0 * t_;
  return amplitude_norm_ * std::exp(-0.5 * q) * std::exp(cplx(0.0, carrier));
}

double EvolvedGaussian::density(const Vec& r) const {
  const Vec y = r - center_;
  return density_norm_ * std::exp(-0.5 * y.dot(density_prec_ * y));
}

EvolvedGaussian evolve_packet(const CoherentPacket& p, const DispersionModel& model, double t) {
  return EvolvedGaussian(p, LocalDispersion::from_model(model, p.k0), t);
}

double gaussian_entropy(const Mat& density_cov) {
  const auto d = static_cast<double>(density_cov.rows());
  const auto llt = checked_llt(density_cov);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return 0.5 * d * (1.0 + std::log(2.0 * kPi)) + 0.5 * log_det;
}

double gaussian_entropy(const EvolvedGaussian& g) { return gaussian_entropy(g.density_cov()); }

GridField sample(const EvolvedGaussian& g, const GridSpec& spec) {
  require(spec.dim() == g.dim(), ErrorKind::InvalidArgument,
          "grid and packet dimensions differ");
  return GridField::sample(spec, [&](const Vec& r) { return g.amplitude(r); });
}

GridField backward_prepared_packet(const CoherentPacket& p, const DispersionModel& model,
                                   double tau, const GridSpec& spec) {
  require(tau > 0.0 && std::isfinite(tau), ErrorKind::InvalidArgument, "tau must be positive");
  require(spec.dim() == p.dim(), ErrorKind::InvalidArgument, "grid and packet dimensions differ");
  const LocalDispersion local = LocalDispersion::from_model(model, p.k0);

  // Momentum density is N(k; k0, Sigma^-1 / 2) at every time.
  const Mat sigma_inv = p.sigma.inverse();
  const Mat prepared_cov = 0.5 * qdisp::sigma_t(p.sigma, local.hessian, tau);
  const Vec final_center = p.r0 + local.group_velocity * tau;
  for (int a = 0; a < p.dim(); ++a) {
    const double k_spread = std::sqrt(0.5 * sigma_inv(a, a));
    if (std::abs(p.k0[a]) + 6.0 * k_spread > 0.9 * spec.nyquist(a)) {
      fail(ErrorKind::GridTooCoarse, "packet bandwidth exceeds the grid Nyquist limit");
    }
    const double lo = spec.coord(a, 0);
    const double hi = lo + spec.length(a);
    const double start_halfwidth = 8.0 * std::sqrt(prepared_cov(a, a));
    const double end_halfwidth = 8.0 * std::sqrt(0.5 * p.sigma(a, a));
    if (p.r0[a] - start_halfwidth < lo || p.r0[a] + start_halfwidth > hi ||
        final_center[a] - end_halfwidth < lo || final_center[a] + end_halfwidth > hi) {
      fail(ErrorKind::GridTooCoarse, "packet does not fit inside the grid domain");
    }
  }

  // Exact backward evolution of a packet that will sit at final_center.
  CoherentPacket target(final_center, p.sigma, p.k0);
  const EvolvedGaussian prepared(target, local, -tau);
  return sample(prepared, spec);
}

}  // namespace qdisp
