// Serial reference kernels against their OpenMP versions.
// Usage: qdisp_bench [threads ...]   (default: 1 and the OpenMP maximum)
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include <fmt/core.h>

#include "qdisp/kernels.hpp"

using namespace qdisp;

namespace {

template <class Fn>
double best_ms(Fn&& fn, int reps = 5) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, int threads, double serial, double parallel, double diff) {
  fmt::print("{:<18} {:>7} {:>12.3f} {:>12.3f} {:>8.2f} {:>12.2e}\n", name, threads, serial, parallel,
             serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> threads;
  for (int i = 1; i < argc; ++i) threads.push_back(std::atoi(argv[i]));
  if (threads.empty()) threads = {1, kernels::max_threads()};

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t n1 = std::size_t{1} << 22;
  std::vector<cplx> psi(n1);
  for (cplx& z : psi) z = {g(rng), g(rng)};
  std::vector<double> rho(n1), angle(n1);
  kernels::density(psi, rho);
  for (double& a : angle) a = g(rng);

  const int n2 = 3000;
  std::vector<cplx> a(psi.begin(), psi.begin() + n2), b(psi.begin() + n2, psi.begin() + 2 * n2);

  fmt::print("{:<18} {:>7} {:>12} {:>12} {:>8} {:>12}\n", "kernel", "threads", "serial ms", "parallel ms",
             "speedup", "rel. diff");
  for (int t : threads) {
    if (t < 1) continue;
    kernels::set_threads(t);
    double s = 0, p = 0;
    const double es = best_ms([&] { s = kernels::entropy_sum_serial(rho); });
    const double ep = best_ms([&] { p = kernels::entropy_sum(rho); });
    row("entropy_sum", t, es, ep, std::abs(s - p) / std::abs(s));

    const double ms = best_ms([&] { s = kernels::mass_sum_serial(psi); });
    const double mp = best_ms([&] { p = kernels::mass_sum(psi); });
    row("mass_sum", t, ms, mp, std::abs(s - p) / std::abs(s));

    std::vector<cplx> x = psi, y = psi;
    const double ps = best_ms([&] { kernels::apply_phase_serial(x, angle); }, 1);
    const double pp = best_ms([&] { kernels::apply_phase(y, angle); }, 1);
    double d = 0;
    for (std::size_t i = 0; i < n1; ++i) d = std::max(d, std::abs(x[i] - y[i]));
    row("apply_phase", t, ps, pp, d);

    const double js = best_ms([&] { s = kernels::joint_entropy_sum_serial(a, b, -1.0, 1e-3); }, 2);
    const double jp = best_ms([&] { p = kernels::joint_entropy_sum(a, b, -1.0, 1e-3); }, 2);
    row("joint_entropy_sum", t, js, jp, std::abs(s - p) / std::abs(s));
  }
  return 0;
}
