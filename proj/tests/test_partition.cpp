#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdisp/error.hpp"
#include "qdisp/field_grid.hpp"
#include "qdisp/gaussian_packet.hpp"
#include "qdisp/partition.hpp"

using namespace qdisp;

namespace {

constexpr double kPi = std::numbers::pi;

EntropyTrajectory traj(std::vector<double> s, double tol = 1e-8) {
  std::vector<double> t(s.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
  return EntropyTrajectory(std::move(t), std::move(s), tol);
}

// Two normalized Gaussian amplitude profiles with linear phases.
StationaryPair two_mode_pair(const GridSpec& g) {
  StationaryPair p{g, {}, {}, {}, {}};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    p.a1.push_back(std::exp(-0.5 * (x + 1.0) * (x + 1.0)));
    p.a2.push_back(std::exp(-0.5 * (x - 1.5) * (x - 1.5) / 2.0));
    p.phi1.push_back(0.3 * x);
    p.phi2.push_back(-0.8 * x);
  }
  p.omega1 = 0.5;
  p.omega2 = 1.5;
  return p;
}

}  // namespace

TEST_CASE("classify examples") {
  CHECK(classify(traj({1.0, 1.0, 1.0})) == PartitionClass::C);
  CHECK(classify(traj({1.0, 2.0, 3.0, 3.5})) == PartitionClass::M);
  CHECK(classify(traj({3.0, 2.0, 1.0})) == PartitionClass::W);
  CHECK(classify(traj({1.0, 2.0, 1.5})) == PartitionClass::I);
  // Flat stretches do not change the class.
  CHECK(classify(traj({1.0, 1.0, 2.0, 2.0})) == PartitionClass::M);
  // Differences within the tolerance count as zero.
  CHECK(classify(traj({1.0, 1.0 + 1e-9, 1.0 - 1e-9})) == PartitionClass::C);
  CHECK(classify(traj({1.0, 1.09, 1.05}, 0.1)) == PartitionClass::C);
  CHECK_THROWS_AS(classify(traj({1.0, 2.0})), Error);
  try {
    (void)classify(traj({1.0, 2.0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewSamples);
  }
  CHECK(interval_signs(traj({1.0, 2.0, 2.0, 1.0})) == std::vector<int>{1, 0, -1});
  CHECK(to_string(PartitionClass::I) == "I");
}

TEST_CASE("reversal swaps M and W") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(8);
    const int shape = trial % 4;
    double acc = 0.0;
    for (double& v : s) {
      const double step = std::abs(u(rng)) + 0.01;
      acc += shape == 0 ? step : shape == 1 ? -step : shape == 2 ? 0.0 : u(rng);
      v = acc;
    }
    const auto t = traj(s);
    const PartitionClass c = classify(t);
    const PartitionClass r = classify(t.reversed());
    if (c == PartitionClass::M) CHECK(r == PartitionClass::W);
    if (c == PartitionClass::W) CHECK(r == PartitionClass::M);
    if (c == PartitionClass::C || c == PartitionClass::I) CHECK(r == c);
  }
}

TEST_CASE("stationary density check") {
  const auto model = DispersionModel::schrodinger(1.0);
  const GridSpec g = GridSpec::box(1, 256, 0.0, 64.0);
  const std::vector<double> times{0.5, 1.0, 3.0, 10.0};
  const double k1 = g.wave_number(0, 3);
  const double k2 = g.wave_number(0, 7);
  const GridField single =
      GridField::sample(g, [&](const Vec& r) { return std::exp(cplx(0, k1 * r[0])); }).normalized();
  CHECK(stationary_density_check(single, model, times));
  const GridField mix = GridField::sample(g, [&](const Vec& r) {
                          return std::exp(cplx(0, k1 * r[0])) + std::exp(cplx(0, k2 * r[0]));
                        }).normalized();
  CHECK_FALSE(stationary_density_check(mix, model, times));

  const CoherentPacket p = CoherentPacket::isotropic(Vec::Constant(1, 32.0), 2.0, Vec::Constant(1, 0.5));
  const GridField packet = sample(evolve_packet(p, model, 0.0), g).normalized();
  CHECK(max_density_drift(packet, model, times) > 1e-3);
  CHECK_FALSE(stationary_density_check(packet, model, times));
}

TEST_CASE("fields with time-independent modulus are class C") {
  const GridSpec g = GridSpec::box(1, 512, -10.0, 10.0);
  const auto amplitude = [](double x) { return std::exp(-x * x / 4.0) * (1.0 + 0.3 * std::sin(2.0 * x)); };
  std::vector<double> times, entropies;
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.5 * i;
    const GridField f = GridField::sample(g, [&](const Vec& r) {
                          const double x = r[0];
                          return amplitude(x) * std::exp(cplx(0, std::sin(x * t) + t * t * x));
                        }).normalized();
    times.push_back(t);
    entropies.push_back(numerical_entropy(f));
  }
  CHECK(classify(EntropyTrajectory(times, entropies, kAnalyticTolerance)) == PartitionClass::C);
}

TEST_CASE("superposition of two stationary states") {
  const GridSpec g = GridSpec::box(1, 1024, -20.0, 20.0);
  StationaryPair p = two_mode_pair(g);

  const auto osc = superposition_trajectory(p, 4.0, 41);
  CHECK(classify(osc) == PartitionClass::I);

  // Period 2 pi / |d omega|.
  const double period = 2.0 * kPi / std::abs(p.omega2 - p.omega1);
  for (double t : {0.0, 0.7, 2.9, 5.1}) {
    const auto a = superposition_density(p, t);
    const auto b = superposition_density(p, t + period);
    CHECK(std::abs(numerical_entropy(a, g.cell_volume()) - numerical_entropy(b, g.cell_volume())) < 1e-9);
  }

  // Density formula against a direct sum of the two states.
  const cplx m1{0.6, 0.2}, m2{-0.3, 0.9};
  p.mix1 = m1;
  p.mix2 = m2;
  const double t = 1.3;
  const auto rho = superposition_density(p, t);
  std::vector<double> direct(g.size());
  double z = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx psi = m1 * p.a1[i] * std::exp(cplx(0, p.phi1[i] + p.omega1 * t)) +
                     m2 * p.a2[i] * std::exp(cplx(0, p.phi2[i] + p.omega2 * t));
    direct[i] = std::norm(psi);
    z += direct[i] * g.cell_volume();
  }
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(rho[i] - direct[i] / z));
  CHECK(err < 1e-12);

  StationaryPair single = two_mode_pair(g);
  std::fill(single.a2.begin(), single.a2.end(), 0.0);
  CHECK(classify(superposition_trajectory(single, 4.0, 41)) == PartitionClass::C);

  StationaryPair bad = two_mode_pair(g);
  bad.omega2 = bad.omega1;
  CHECK_THROWS_AS(bad.validate(), Error);
  StationaryPair empty = two_mode_pair(g);
  std::fill(empty.a1.begin(), empty.a1.end(), 0.0);
  std::fill(empty.a2.begin(), empty.a2.end(), 0.0);
  CHECK_THROWS_AS((void)superposition_density(empty, 0.0), Error);
}
