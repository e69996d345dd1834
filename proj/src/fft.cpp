#include "qdisp/fft.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "qdisp/error.hpp"

namespace qdisp::fft {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void transform(std::span<cplx> data, std::span<const int> extents, Direction dir) {
  std::size_t total = 1;
  for (int e : extents) total *= static_cast<std::size_t>(e);
  require(total == data.size() && !extents.empty(), ErrorKind::InvalidArgument,
          "FFT extents do not match the data length");

  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), buf, buf, sign,
                         FFTW_ESTIMATE);
  }
  require(plan != nullptr, ErrorKind::InvalidArgument, "FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<cplx> naive_dft(std::span<const cplx> data, Direction dir) {
  const std::size_t n = data.size();
  const double s = dir == Direction::Forward ? -1.0 : 1.0;
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = s * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      acc += data[j] * cplx(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace qdisp::fft
