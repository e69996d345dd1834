#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qdisp/error.hpp"
#include "qdisp/field_grid.hpp"
#include "qdisp/gaussian_packet.hpp"
#include "qdisp/grid.hpp"
#include "qdisp/partition.hpp"

using namespace qdisp;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Mat random_spd(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat a(d, d);
  for (int i = 0; i < d * d; ++i) a.data()[i] = n(rng);
  return a * a.transpose() + 0.1 * Mat::Identity(d, d);
}

Mat random_symmetric(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat a(d, d);
  for (int i = 0; i < d * d; ++i) a.data()[i] = n(rng);
  return 0.5 * (a + a.transpose());
}

// 2 [(S + itH)^-1 + (S - itH)^-1]^-1 by direct complex inversion.
Mat sigma_t_oracle(const Mat& s, const Mat& h, double t) {
  const CMat a = s.cast<cplx>() + cplx(0, t) * h.cast<cplx>();
  const CMat b = s.cast<cplx>() - cplx(0, t) * h.cast<cplx>();
  const CMat sum = a.inverse() + b.inverse();
  return (2.0 * sum.inverse()).real();
}

Vec v1(double x) { return Vec::Constant(1, x); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("sigma_t examples") {
  const Mat i3 = Mat::Identity(3, 3);
  CHECK((sigma_t(i3, i3, 2.0) - 5.0 * i3).norm() < 1e-15);
  std::mt19937_64 rng(1);
  const Mat s = random_spd(rng, 3);
  const Mat h = random_symmetric(rng, 3);
  CHECK(sigma_t(s, h, 0.0) == s);
  CHECK(relative_error(sigma_t(s, h, 0.7), sigma_t_oracle(s, h, 0.7)) < 1e-12);
}

TEST_CASE("sigma_t rejects singular covariance") {
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = 1.0;
  try {
    (void)sigma_t(s, Mat::Identity(2, 2), 1.0);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
}

TEST_CASE("covariance growth") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(0.0, 5.0);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 3;
    const Mat s = random_spd(rng, d);
    Mat h = random_symmetric(rng, d);
    h += 0.2 * Mat::Identity(d, d) * (h.determinant() >= 0 ? 1.0 : -1.0);
    double t1 = ut(rng), t2 = ut(rng);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 - t1 < 1e-3) continue;
    REQUIRE(sigma_t(s, h, t1).determinant() < sigma_t(s, h, t2).determinant());
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = n(rng);
    const double lhs = v.dot(sigma_t(s, h, t2) * v);
    const double extra = v.dot(h * s.inverse() * h * v);
    REQUIRE(extra >= -1e-12);
    REQUIRE(lhs == Approx(v.dot(s * v) + t2 * t2 * extra).epsilon(1e-10));
  }
}

TEST_CASE("evolve_packet examples") {
  const auto model = DispersionModel::schrodinger(1.0);
  const CoherentPacket p(v1(0.5), Mat::Identity(1, 1), v1(2.0));
  const EvolvedGaussian g0 = evolve_packet(p, model, 0.0);
  CHECK(g0.density_cov()(0, 0) == 0.5);
  CHECK(g0.center()[0] == 0.5);
  const EvolvedGaussian g1 = evolve_packet(p, model, 1.0);
  CHECK(g1.sigma_t()(0, 0) == Approx(2.0));
  CHECK(g1.density_cov()(0, 0) == Approx(1.0));
  CHECK(g1.center()[0] == Approx(2.5));
  CHECK(g1.complex_cov()(0, 0).real() == 1.0);
  CHECK(g1.complex_cov()(0, 0).imag() == Approx(1.0));
  CHECK_THROWS_AS(evolve_packet(CoherentPacket(Vec::Zero(3), Mat::Identity(3, 3), Vec::Zero(3)),
                                DispersionModel::dirac(0), 1.0),
                  Error);
}

TEST_CASE("packet validation") {
  CHECK_THROWS_AS(CoherentPacket(Vec::Zero(2), Mat::Identity(3, 3), Vec::Zero(2)), Error);
  Mat ns(2, 2);
  ns << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(CoherentPacket(Vec::Zero(2), ns, Vec::Zero(2)), Error);
  CHECK_THROWS_AS(CoherentPacket(Vec::Zero(1), -Mat::Identity(1, 1), Vec::Zero(1)), Error);
  CHECK_THROWS_AS(CoherentPacket(Vec::Zero(4), Mat::Identity(4, 4), Vec::Zero(4)), Error);
}

TEST_CASE("gaussian entropy examples") {
  CHECK(gaussian_entropy(Mat::Identity(1, 1)) == Approx(1.418939).epsilon(1e-6));
  CHECK(gaussian_entropy(Mat::Identity(3, 3)) == Approx(4.256816).epsilon(1e-6));
  const auto model = DispersionModel::schrodinger(1.0);
  const CoherentPacket p(v1(0.0), Mat::Identity(1, 1), v1(0.0));
  const double ds = gaussian_entropy(evolve_packet(p, model, 1.0)) -
                    gaussian_entropy(evolve_packet(p, model, 0.0));
  CHECK(ds == Approx(0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("entropy increases for nonsingular hessians") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    const CoherentPacket p(Vec::Zero(d), random_spd(rng, d), Vec::Zero(d));
    Mat h = random_spd(rng, d);
    const LocalDispersion local{0.0, Vec::Zero(d), h};
    double prev = gaussian_entropy(EvolvedGaussian(p, local, 0.0));
    for (int i = 1; i <= 20; ++i) {
      const double s = gaussian_entropy(EvolvedGaussian(p, local, 0.25 * i));
      REQUIRE(s > prev);
      prev = s;
    }
  }
}

TEST_CASE("amplitude squared is the normalized density") {
  std::mt19937_64 rng(6);
  const CoherentPacket p(Vec::Constant(2, 0.3), random_spd(rng, 2), Vec::Constant(2, 0.8));
  const LocalDispersion local{1.5, Vec::Constant(2, 0.2), random_symmetric(rng, 2)};
  const EvolvedGaussian g(p, local, 2.3);
  for (int i = 0; i < 20; ++i) {
    Vec r(2);
    r << -2 + 0.2 * i, 1 - 0.1 * i;
    CHECK(std::norm(g.amplitude(r)) == Approx(g.density(r)).epsilon(1e-12));
  }
  const GridSpec grid = GridSpec::box(2, 256, -40.0, 40.0);
  CHECK(sample(g, grid).mass() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed-form entropy matches the sampled density") {
  const auto model = DispersionModel::schrodinger(1.0);
  const GridSpec grid = GridSpec::box(1, 4096, -64.0, 64.0);
  for (double t : {0.0, 1.0, 3.0}) {
    const CoherentPacket p(v1(-3.0), Mat::Constant(1, 1, 2.0), v1(1.0));
    const EvolvedGaussian g = evolve_packet(p, model, t);
    CHECK(numerical_entropy(sample(g, grid).normalized()) ==
          Approx(gaussian_entropy(g)).epsilon(1e-3));
  }
}

TEST_CASE("entropy does not depend on position or carrier") {
  const auto model = DispersionModel::schrodinger(2.0);
  const Mat s = Mat::Constant(1, 1, 1.7);
  const double a = gaussian_entropy(evolve_packet(CoherentPacket(v1(0), s, v1(0)), model, 3.0));
  const double b = gaussian_entropy(evolve_packet(CoherentPacket(v1(40), s, v1(7)), model, 3.0));
  CHECK(a == Approx(b).epsilon(1e-14));
}

TEST_CASE("schrodinger packet matches spectral propagation") {
  const auto model = DispersionModel::schrodinger(1.0);
  const GridSpec grid = GridSpec::box(1, 4096, -64.0, 64.0);
  const CoherentPacket p(v1(-5.0), Mat::Identity(1, 1), v1(3.0));
  const GridField f0 = sample(evolve_packet(p, model, 0.0), grid);
  for (double t : {0.5, 2.0, 4.0}) {
    const GridField ft = spectral_propagate(f0, model, t);
    const GridField exact = sample(evolve_packet(p, model, t), grid);
    CHECK(max_abs_diff(ft.density(), exact.density()) < 1e-6);
    double amp = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      amp = std::max(amp, std::abs(ft.values()[i] - exact.values()[i]));
    }
    CHECK(amp < 1e-6);
  }
}

TEST_CASE("dirac packet matches spectral propagation at narrow bandwidth") {
  // Third-order term: k-spread * t * |omega'''| stays well below 0.1.
  const auto model = DispersionModel::dirac(1.0);
  const GridSpec grid = GridSpec::box(1, 4096, -200.0, 200.0);
  const CoherentPacket p(v1(-20.0), Mat::Constant(1, 1, 100.0), v1(0.5));
  const GridField f0 = sample(evolve_packet(p, model, 0.0), grid);
  const double t = 10.0;
  const GridField ft = spectral_propagate(f0, model, t);
  const EvolvedGaussian g = evolve_packet(p, model, t);
  const double peak = g.density(g.center());
  CHECK(max_abs_diff(ft.density(), sample(g, grid).density()) < 1e-2 * peak);
}

TEST_CASE("backward prepared packet") {
  const auto model = DispersionModel::schrodinger(1.0);
  const GridSpec grid = GridSpec::box(1, 4096, -64.0, 64.0);
  const CoherentPacket p(v1(-10.0), Mat::Identity(1, 1), v1(2.0));
  const double tau = 4.0;
  const GridField f0 = backward_prepared_packet(p, model, tau, grid);
  CHECK(f0.mass() == Approx(1.0).epsilon(1e-9));

  // Evolving forward by tau collapses back to the real-covariance packet.
  const GridField ft = spectral_propagate(f0, model, tau);
  const CoherentPacket target(p.r0 + 2.0 * tau * Vec::Ones(1), p.sigma, p.k0);
  const EvolvedGaussian at_rest(target, {0.0, Vec::Zero(1), Mat::Zero(1, 1)}, 0.0);
  CHECK(max_abs_diff(ft.density(), sample(at_rest, grid).density()) < 1e-6);

  // Initial entropy equals the forward packet's entropy at tau.
  CHECK(numerical_entropy(f0) ==
        Approx(gaussian_entropy(evolve_packet(p, model, tau))).epsilon(1e-3));

  const auto times = uniform_times(tau, 0.25);
  CHECK(classify(field_entropy_trajectory(f0, model, times, kGridTolerance)) == PartitionClass::W);
}

TEST_CASE("backward prepared packet needs a fine enough grid") {
  const auto model = DispersionModel::schrodinger(1.0);
  auto kind_of = [&](const GridSpec& grid, const CoherentPacket& p) {
    try {
      (void)backward_prepared_packet(p, model, 4.0, grid);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  // Nyquist pi / 0.5 is too close to k0 = 5.
  CHECK(kind_of(GridSpec::box(1, 256, -64.0, 64.0), CoherentPacket(v1(0), Mat::Identity(1, 1), v1(5.0))) ==
        ErrorKind::GridTooCoarse);
  // Domain too small for the spread packet.
  CHECK(kind_of(GridSpec::box(1, 1024, -8.0, 8.0), CoherentPacket(v1(0), Mat::Identity(1, 1), v1(0.0))) ==
        ErrorKind::GridTooCoarse);
  CHECK_THROWS_AS(backward_prepared_packet(CoherentPacket(v1(0), Mat::Identity(1, 1), v1(0)), model, 0.0,
                                           GridSpec::box(1, 1024, -64.0, 64.0)),
                  Error);
}
