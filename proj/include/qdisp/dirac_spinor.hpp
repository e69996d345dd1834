#pragma once

#include <array>

#include "qdisp/dispersion.hpp"
#include "qdisp/linalg.hpp"

namespace qdisp::dirac {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Spinor2 = Eigen::Vector2cd;
using BiSpinor = Eigen::Vector4cd;

/// Physical constants of the momentum-space Dirac problem.
struct DiracParams {
  double mass = 1.0;
  double hbar = 1.0;
  double c = 1.0;

  /// Rest frequency m c^2 / hbar.
  double rest_frequency() const { return mass * c * c / hbar; }
};

/// Pauli matrix sigma_i for i in {1, 2, 3}.
Mat2 pauli(int i);

/// sigma . k with k padded to three components.
Mat2 sigma_dot(const WaveVector& k);

/// Weyl-basis gamma^0 = [[0, I], [I, 0]].
Mat4 gamma0();

/// Weyl-basis gamma^i = [[0, sigma_i], [-sigma_i, 0]].
Mat4 gamma(int i);

/// The Hermitian momentum-space matrix [[c s.k, w0 I], [w0 I, -c s.k]] with
/// w0 = m c^2 / hbar. Its eigenvectors are gamma^0 times the bi-spinor
/// solutions.
Mat4 dirac_matrix(const WaveVector& k, const DiracParams& p);

/// Matrix acting on the adjoint (row) solutions: off-diagonal blocks negated.
Mat4 adjoint_dirac_matrix(const WaveVector& k, const DiracParams& p);

/// Closed-form determinant ((m c^2 / hbar)^2 + c^2 |k|^2)^2.
double dirac_determinant(const WaveVector& k, const DiracParams& p);

/// Positive on-shell frequency c sqrt(|k|^2 + m^2 c^2 / hbar^2).
double on_shell_frequency(const WaveVector& k, const DiracParams& p);

/// Principal square root of a Hermitian 2x2 matrix. Eigenvalues in
/// [-tolerance, 0) are clamped to zero; anything lower throws OffShell.
Mat2 hermitian_sqrt(const Mat2& m, double tolerance = 1e-12);

/// Square root of a Hermitian matrix using the principal branch on every
/// eigenvalue, so negative eigenvalues map to i sqrt(|lambda|).
Mat2 hermitian_sqrt_principal(const Mat2& m);

struct ChiSpinors {
  Spinor2 plus_r;   ///< sqrt(w + c s.k) xi+
  Spinor2 minus_r;  ///< sqrt(w + c s.k) xi-
  Spinor2 plus_l;   ///< sqrt(w - c s.k) xi+
  Spinor2 minus_l;  ///< sqrt(w - c s.k) xi-
};

/// Two-component spinors for a given frequency. Throws OffShell when
/// w +- c s.k is not positive semidefinite.
ChiSpinors chi_spinors(const WaveVector& k, double omega, const DiracParams& p);

struct DiracSolutions {
  BiSpinor mu_plus;
  BiSpinor mu_minus;
  BiSpinor nu_plus;
  BiSpinor nu_minus;
  double omega_pos;
  double omega_neg;

  /// Solutions in the order mu+, mu-, nu+, nu-.
  std::array<BiSpinor, 4> all() const { return {mu_plus, mu_minus, nu_plus, nu_minus}; }
};

/// Positive-energy mu = (chi_L, chi_R) and negative-energy
/// nu = i (chi_R, -chi_L), with chi evaluated on the positive shell.
DiracSolutions dirac_solutions(const WaveVector& k, const DiracParams& p);

struct AntiparticleSpinors {
  BiSpinor plus;
  BiSpinor minus;
};

/// nu_A = (chi_L(k), -chi_R(k)) in the Weyl basis.
AntiparticleSpinors antiparticle_spinor(const WaveVector& k, const DiracParams& p);

/// The same spinors built the long way: negative-shell nu at -k (principal
/// square roots of negative matrices), then the adjoint nu^dagger gamma^0,
/// negated and transposed. Used to cross-check antiparticle_spinor.
AntiparticleSpinors antiparticle_spinor_via_adjoint(const WaveVector& k, const DiracParams& p);

/// Gram matrix of the four normalized solutions.
Eigen::Matrix4cd gram_matrix(const DiracSolutions& s);

/// Largest ||M (gamma^0 v) - w (gamma^0 v)|| / ||v|| over the four solutions.
double max_eigen_residual(const WaveVector& k, const DiracParams& p, const DiracSolutions& s);

/// Time-evolved spinor v exp(-i w t).
BiSpinor evolve(const BiSpinor& v, double omega, double t);

}  // namespace qdisp::dirac
