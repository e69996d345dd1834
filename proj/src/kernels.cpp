#include "qdisp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdisp/error.hpp"

namespace qdisp::kernels {

namespace {

using index_t = std::ptrdiff_t;

inline double xlogx(double r) { return r > 0.0 ? r * std::log(r) : 0.0; }

template <typename Partial>
double ordered_block_sum(std::size_t n, Partial&& partial) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> parts(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (index_t b = 0; b < static_cast<index_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    parts[static_cast<std::size_t>(b)] = partial(lo, hi);
  }
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

void check_same_size(std::size_t a, std::size_t b) {
  require(a == b, ErrorKind::InvalidArgument, "kernel operands differ in length");
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

double entropy_sum(std::span<const double> rho) {
  return ordered_block_sum(rho.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s -= xlogx(rho[i]);
    return s;
  });
}

double entropy_sum_serial(std::span<const double> rho) {
  double s = 0.0;
  for (double r : rho) s -= xlogx(r);
  return s;
}

double mass_sum(std::span<const cplx> psi) {
  return ordered_block_sum(psi.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::norm(psi[i]);
    return s;
  });
}

double mass_sum_serial(std::span<const cplx> psi) {
  double s = 0.0;
  for (const cplx& z : psi) s += std::norm(z);
  return s;
}

void density(std::span<const cplx> psi, std::span<double> out) {
  check_same_size(psi.size(), out.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < static_cast<index_t>(psi.size()); ++i) out[i] = std::norm(psi[i]);
}

void apply_phase(std::span<cplx> data, std::span<const double> angle) {
  check_same_size(data.size(), angle.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < static_cast<index_t>(data.size()); ++i) {
    data[i] *= cplx(std::cos(angle[i]), -std::sin(angle[i]));
  }
}

void apply_phase_serial(std::span<cplx> data, std::span<const double> angle) {
  check_same_size(data.size(), angle.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= std::exp(cplx(0.0, -angle[i]));
}

double joint_entropy_sum(std::span<const cplx> p1, std::span<const cplx> p2, double sign,
                         double inv_norm) {
  check_same_size(p1.size(), p2.size());
  const std::size_t n = p1.size();
  std::vector<double> rows(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (index_t ii = 0; ii < static_cast<index_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const cplx a = p1[i];
    const cplx b = sign * p2[i];
    double off = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      off -= xlogx(std::norm(a * p2[j] + p1[j] * b) * inv_norm);
    }
    rows[i] = 2.0 * off - xlogx(std::norm(a * p2[i] + p1[i] * b) * inv_norm);
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

double joint_entropy_sum_serial(std::span<const cplx> p1, std::span<const cplx> p2, double sign,
                                double inv_norm) {
  check_same_size(p1.size(), p2.size());
  const std::size_t n = p1.size();
  std::vector<double> r1(n), r2(n);
  std::vector<cplx> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = std::norm(p1[i]);
    r2[i] = std::norm(p2[i]);
    g[i] = p1[i] * std::conj(p2[i]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double rho =
          (r1[i] * r2[j] + r1[j] * r2[i] + sign * 2.0 * std::real(g[i] * std::conj(g[j]))) *
          inv_norm;
      s -= xlogx(rho);
    }
  }
  return s;
}

void joint_density(std::span<const cplx> p1, std::span<const cplx> p2, double sign,
                   double inv_norm, std::span<double> out) {
  check_same_size(p1.size(), p2.size());
  const std::size_t n = p1.size();
  check_same_size(out.size(), n * n);
#pragma omp parallel for schedule(static)
  for (index_t ii = 0; ii < static_cast<index_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const cplx a = p1[i];
    const cplx b = sign * p2[i];
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = std::norm(a * p2[j] + p1[j] * b) * inv_norm;
    }
  }
}

}  // namespace qdisp::kernels
