#include "qdisp/dirac_spinor.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qdisp/error.hpp"

namespace qdisp::dirac {

namespace {

const cplx I{0.0, 1.0};

Eigen::Vector3d padded(const WaveVector& k) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  out.head(k.dim()) = k.components();
  return out;
}

const Spinor2 kXiUp{1.0, 0.0};
const Spinor2 kXiDown{0.0, 1.0};

Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat4 m;
  m << a, b, c, d;
  return m;
}

}  // namespace

Mat2 pauli(int i) {
  Mat2 s;
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: fail(ErrorKind::InvalidArgument, "Pauli index must be 1, 2 or 3");
  }
  return s;
}

Mat2 sigma_dot(const WaveVector& k) {
  const Eigen::Vector3d v = padded(k);
  Mat2 s;
  s << v[2], cplx(v[0], -v[1]), cplx(v[0], v[1]), -v[2];
  return s;
}

Mat4 gamma0() {
  const Mat2 z = Mat2::Zero();
  const Mat2 id = Mat2::Identity();
  return blocks(z, id, id, z);
}

Mat4 gamma(int i) {
  const Mat2 z = Mat2::Zero();
  const Mat2 s = pauli(i);
  return blocks(z, s, -s, z);
}

Mat4 dirac_matrix(const WaveVector& k, const DiracParams& p) {
  const Mat2 sk = p.c * sigma_dot(k);
  const Mat2 rest = p.rest_frequency() * Mat2::Identity();
  return blocks(sk, rest, rest, -sk);
}

Mat4 adjoint_dirac_matrix(const WaveVector& k, const DiracParams& p) {
  const Mat2 sk = p.c * sigma_dot(k);
  const Mat2 rest = p.rest_frequency() * Mat2::Identity();
  return blocks(sk, -rest, -rest, -sk);
}

double dirac_determinant(const WaveVector& k, const DiracParams& p) {
  const double w0 = p.rest_frequency();
  const double s = w0 * w0 + p.c * p.c * k.norm_sq();
  return s * s;
}

double on_shell_frequency(const WaveVector& k, const DiracParams& p) {
  const double kc = p.mass * p.c / p.hbar;
  return p.c * std::sqrt(k.norm_sq() + kc * kc);
}

Mat2 hermitian_sqrt(const Mat2& m, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  Eigen::Vector2d lam = es.eigenvalues();
  for (int i = 0; i < 2; ++i) {
    if (lam[i] < -tolerance) {
      fail(ErrorKind::OffShell, "matrix under the square root has a negative eigenvalue");
    }
    lam[i] = std::sqrt(std::max(lam[i], 0.0));
  }
  return es.eigenvectors() * lam.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat2 hermitian_sqrt_principal(const Mat2& m) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  Eigen::Vector2cd root;
  for (int i = 0; i < 2; ++i) root[i] = std::sqrt(cplx(es.eigenvalues()[i], 0.0));
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

ChiSpinors chi_spinors(const WaveVector& k, double omega, const DiracParams& p) {
  const Mat2 sk = p.c * sigma_dot(k);
  const Mat2 id = Mat2::Identity();
  // Rounding scales with the size of the entries.
  const double tol = 1e-12 * std::max(1.0, std::abs(omega));
  const Mat2 root_r = hermitian_sqrt(omega * id + sk, tol);
  const Mat2 root_l = hermitian_sqrt(omega * id - sk, tol);
  return {root_r * kXiUp, root_r * kXiDown, root_l * kXiUp, root_l * kXiDown};
}

DiracSolutions dirac_solutions(const WaveVector& k, const DiracParams& p) {
  const double w = on_shell_frequency(k, p);
  const ChiSpinors chi = chi_spinors(k, w, p);
  DiracSolutions s;
  s.mu_plus << chi.plus_l, chi.plus_r;
  s.mu_minus << chi.minus_l, chi.minus_r;
  s.nu_plus << I * chi.plus_r, -I * chi.plus_l;
  s.nu_minus << I * chi.minus_r, -I * chi.minus_l;
  s.omega_pos = w;
  s.omega_neg = -w;
  return s;
}

AntiparticleSpinors antiparticle_spinor(const WaveVector& k, const DiracParams& p) {
  const ChiSpinors chi = chi_spinors(k, on_shell_frequency(k, p), p);
  AntiparticleSpinors a;
  a.plus << chi.plus_l, -chi.plus_r;
  a.minus << chi.minus_l, -chi.minus_r;
  return a;
}

AntiparticleSpinors antiparticle_spinor_via_adjoint(const WaveVector& k, const DiracParams& p) {
  const WaveVector reversed(Vec(-k.components()));
  const double w_neg = -on_shell_frequency(k, p);
  const Mat2 sk = p.c * sigma_dot(reversed);
  const Mat2 id = Mat2::Identity();
  const Mat2 root_r = hermitian_sqrt_principal(w_neg * id + sk);
  const Mat2 root_l = hermitian_sqrt_principal(w_neg * id - sk);
  auto build = [&](const Spinor2& xi) {
    BiSpinor nu;
    nu << I * (root_r * xi), -I * (root_l * xi);
    // nu_A^T = -(nu^dagger gamma^0)  =>  nu_A = -gamma^0 conj(nu)
    return BiSpinor(-(gamma0() * nu.conjugate()));
  };
  return {build(kXiUp), build(kXiDown)};
}

Eigen::Matrix4cd gram_matrix(const DiracSolutions& s) {
  Eigen::Matrix4cd basis;
  const auto all = s.all();
  for (int j = 0; j < 4; ++j) basis.col(j) = all[j].normalized();
  return basis.adjoint() * basis;
}

double max_eigen_residual(const WaveVector& k, const DiracParams& p, const DiracSolutions& s) {
  const Mat4 m = dirac_matrix(k, p);
  const Mat4 g0 = gamma0();
  const auto all = s.all();
  const double freqs[4] = {s.omega_pos, s.omega_pos, s.omega_neg, s.omega_neg};
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) {
    const BiSpinor v = g0 * all[j];
    const double scale = std::max(v.norm(), 1e-300);
    worst = std::max(worst, (m * v - freqs[j] * v).norm() / scale);
  }
  return worst;
}

BiSpinor evolve(const BiSpinor& v, double omega, double t) {
  return v * std::exp(cplx(0.0, -omega * t));
}

}  // namespace qdisp::dirac
