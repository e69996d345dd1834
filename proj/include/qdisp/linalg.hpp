#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qdisp {

using cplx = std::complex<double>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Relative Frobenius distance ||a - b|| / max(||b||, tiny).
template <typename A, typename B>
double relative_error(const A& a, const B& b) {
  const double denom = b.norm();
  return (a - b).norm() / (denom > 0.0 ? denom : 1.0);
}

}  // namespace qdisp
