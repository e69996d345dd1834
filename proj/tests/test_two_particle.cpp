#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdisp/error.hpp"
#include "qdisp/gaussian_packet.hpp"
#include "qdisp/partition.hpp"
#include "qdisp/two_particle.hpp"

using namespace qdisp;
using ES = ExchangeStatistics;

namespace {

constexpr double kPi = std::numbers::pi;

GridField packet(const GridSpec& g, double centre, double width, double k) {
  const CoherentPacket p = CoherentPacket::isotropic(Vec::Constant(1, centre), width, Vec::Constant(1, k));
  return sample(EvolvedGaussian(p, {0.0, Vec::Zero(1), Mat::Zero(1, 1)}, 0.0), g).normalized();
}

double mass(const JointDensity& j) {
  double m = 0.0;
  for (double r : j.rho) m += r;
  return m * j.grid.cell_volume();
}

double asymmetry(const JointDensity& j) {
  const int n = j.grid.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(j.rho[static_cast<std::size_t>(i) * n + k] -
                                       j.rho[static_cast<std::size_t>(k) * n + i]));
  return worst;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("exchange sign") {
  CHECK(exchange_sign(ES::Fermion) == -1.0);
  CHECK(exchange_sign(ES::Boson) == 1.0);
  CHECK(to_string(ES::Fermion) == "fermion");
}

TEST_CASE("normalization constant") {
  const GridSpec g = GridSpec::box(1, 1024, -60.0, 60.0);
  const GridField a = packet(g, -30.0, 3.0, 1.0);
  const GridField b = packet(g, 30.0, 3.0, -1.0);
  for (ES s : {ES::Fermion, ES::Boson}) {
    CHECK(std::abs(exchange_norm(a, b, s) - 2.0) < 1e-6);
    CHECK(std::abs(joint_density(a, b, s).c_t - 2.0) < 1e-6);
  }
  // Overlapping packets: C_t = 2 -+ 2 |<b|a>|^2.
  const GridField d = packet(g, -29.0, 3.0, 0.5);
  cplx ov = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) ov += std::conj(d.values()[i]) * a.values()[i];
  ov *= g.cell_volume();
  CHECK(exchange_norm(a, d, ES::Fermion) == doctest::Approx(2.0 - 2.0 * std::norm(ov)).epsilon(1e-12));
  CHECK(exchange_norm(a, d, ES::Boson) == doctest::Approx(2.0 + 2.0 * std::norm(ov)).epsilon(1e-12));

  CHECK(kind_of([&] { (void)joint_density(a, a, ES::Fermion); }) == ErrorKind::DegenerateState);
  CHECK(kind_of([&] { (void)joint_entropy(a, a, ES::Fermion); }) == ErrorKind::DegenerateState);
  CHECK(joint_density(a, a, ES::Boson).c_t == doctest::Approx(4.0));

  const GridField other = packet(GridSpec::box(1, 512, -60.0, 60.0), 0.0, 3.0, 0.0);
  CHECK(kind_of([&] { (void)exchange_norm(a, other, ES::Boson); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("joint density symmetry and mass") {
  const GridSpec g = GridSpec::box(1, 300, -30.0, 30.0);
  const GridField a = packet(g, -2.0, 2.0, 1.0);
  const GridField b = packet(g, 3.0, 3.0, -0.5);
  const JointDensity f = joint_density(a, b, ES::Fermion);
  const JointDensity bo = joint_density(a, b, ES::Boson);
  CHECK(asymmetry(f) < 1e-12);
  CHECK(asymmetry(bo) < 1e-12);
  CHECK(std::abs(mass(f) - 1.0) < 1e-9);
  CHECK(std::abs(mass(bo) - 1.0) < 1e-9);

  // Explicit formula at a few cells.
  const auto pa = a.values();
  const auto pb = b.values();
  for (auto [i, j] : {std::pair{10, 200}, {150, 151}, {77, 77}}) {
    const double r1 = std::norm(pa[i]) * std::norm(pb[j]) + std::norm(pa[j]) * std::norm(pb[i]);
    const double cross = 2.0 * std::real(pa[i] * std::conj(pb[i]) * pb[j] * std::conj(pa[j]));
    CHECK(f.rho[i * 300 + j] == doctest::Approx((r1 - cross) / f.c_t).epsilon(1e-10));
    CHECK(bo.rho[i * 300 + j] == doctest::Approx((r1 + cross) / bo.c_t).epsilon(1e-10));
  }
  CHECK(f.rho[77 * 300 + 77] < 1e-20);

  // The exchange term redistributes mass without creating any.
  double diff = 0.0;
  for (std::size_t i = 0; i < f.rho.size(); ++i) diff += f.rho[i] - bo.rho[i];
  CHECK(std::abs(diff * f.grid.cell_volume()) < 1e-9);
  double spread = 0.0;
  for (std::size_t i = 0; i < f.rho.size(); ++i) spread = std::max(spread, std::abs(f.rho[i] - bo.rho[i]));
  CHECK(spread > 1e-3);
}

TEST_CASE("joint entropy") {
  // Product of two unit-variance Gaussian densities.
  const int n = 400;
  const GridSpec g = GridSpec::box(1, n, -10.0, 10.0);
  const GridField u = packet(g, 0.0, std::sqrt(2.0), 0.0);
  const auto rho1 = u.density();
  std::vector<double> prod(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) prod[static_cast<std::size_t>(i) * n + j] = rho1[i] * rho1[j];
  const GridSpec g2 = GridSpec::box(2, n, -10.0, 10.0);
  CHECK(std::abs(joint_entropy(prod, g2) - 2.837877) < 1e-4);
  CHECK(std::abs(product_entropy(u, u) - (1.0 + std::log(2.0 * kPi))) < 1e-4);

  std::vector<double> bad(prod);
  for (double& r : bad) r *= 1.01;
  CHECK(kind_of([&] { (void)joint_entropy(bad, g2); }) == ErrorKind::NotNormalized);

  // Materialized and streamed entropies agree.
  const GridSpec h = GridSpec::box(1, 256, -20.0, 20.0);
  const GridField a = packet(h, -1.0, 2.0, 1.0);
  const GridField b = packet(h, 2.0, 3.0, -1.0);
  for (ES s : {ES::Fermion, ES::Boson}) {
    const JointDensity j = joint_density(a, b, s);
    CHECK(joint_entropy(a, b, s) == doctest::Approx(joint_entropy(j.rho, j.grid)).epsilon(1e-12));
  }
}

TEST_CASE("separated packets lose their exchange interference") {
  const GridSpec g = GridSpec::box(1, 1200, -60.0, 60.0);
  const double width = 2.0;
  const GridField a = packet(g, -6.0 * width, width, 1.0);
  const GridField b = packet(g, 6.0 * width, width, -1.0);
  const double sf = joint_entropy(a, b, ES::Fermion);
  const double sb = joint_entropy(a, b, ES::Boson);
  CHECK(std::abs(sf - sb) < 1e-5);
  const double incoherent = incoherent_entropy(a, b);
  CHECK(std::abs(sf - incoherent) < 1e-4);
  CHECK(std::abs(sb - incoherent) < 1e-4);
  CHECK(std::abs(incoherent - product_entropy(a, b) - std::log(2.0)) < 1e-4);

  // Overlapping packets keep a visible interference contribution.
  const GridField c = packet(g, -1.0, width, 1.0);
  const GridField d = packet(g, 1.0, width, -1.0);
  CHECK(std::abs(joint_entropy(c, d, ES::Fermion) - joint_entropy(c, d, ES::Boson)) > 1e-3);
}

TEST_CASE("translation invariance") {
  const GridSpec g = GridSpec::box(1, 800, -40.0, 40.0);
  const double shift = 40.0 * 2.0 / 800.0 * 37.0;  // whole number of cells
  for (ES s : {ES::Fermion, ES::Boson}) {
    const double s0 = joint_entropy(packet(g, -3.0, 2.0, 0.7), packet(g, 2.0, 3.0, -0.4), s);
    const double s1 = joint_entropy(packet(g, -3.0 + shift, 2.0, 0.7), packet(g, 2.0 + shift, 3.0, -0.4), s);
    const double s2 = joint_entropy(packet(g, -3.0 - 0.3, 2.0, 0.7), packet(g, 2.0 - 0.3, 3.0, -0.4), s);
    CHECK(std::abs(s0 - s1) < 1e-9);
    CHECK(std::abs(s0 - s2) < 1e-6);
  }
}

TEST_CASE("separation sweep") {
  SweepParams p;
  const std::vector<double> xs{0.0, 50.0, 60.0, 75.0, 90.0, 100.0, 400.0};
  const auto rows = separation_sweep(p, xs);
  REQUIRE(rows.size() == xs.size());
  CHECK(rows.back().s_fermion > rows.front().s_fermion);
  CHECK(rows.back().s_boson > rows.front().s_boson);
  for (const auto& r : rows) {
    if (r.x >= 50.0 && r.x <= 100.0) CHECK(r.s_boson - r.s_fermion > 0.0);
    CHECK(std::abs(r.s_boson - r.s_fermion) < 1e-2 * r.s_boson);
  }
  const GridSpec g = p.grid(xs);
  CHECK(g.n() == 2000);
  CHECK(g.origin()[0] == doctest::Approx(-600.0));
  CHECK(g.origin()[0] + 2000 * g.spacing()[0] == doctest::Approx(600.0));
  CHECK_THROWS_AS((void)separation_sweep(p, {}), Error);
}

TEST_CASE("collision scenario geometry") {
  CollisionScenario s;
  CHECK(s.closest_approach() == doctest::Approx(75.0));
  CHECK_FALSE(s.under_resolved());
  CollisionScenario coarse = s;
  coarse.grid_n = 200;
  CHECK(coarse.under_resolved());
  CollisionScenario bad = s;
  bad.sigma = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = s;
  bad.stats.clear();
  CHECK_THROWS_AS(bad.validate(), Error);

  CollisionScenario m = s;
  m.model = DispersionModel::schrodinger(1.0);
  m.k = 2.0;
  CHECK(m.local().group_velocity[0] == doctest::Approx(2.0));
  CHECK(m.local().hessian(0, 0) == doctest::Approx(1.0));

  // Mirror packets: equal widths, opposite drift.
  CollisionScenario small;
  small.grid_n = 1200;
  small.grid_min = 600.0;
  small.grid_max = 1200.0;
  const auto [a, b] = collision_amplitudes(small, 10.0);
  double c1 = 0.0, c2 = 0.0;
  const auto r1 = a.density();
  const auto r2 = b.density();
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const double x = a.spec().point(i)[0];
    c1 += x * r1[i] * a.spec().cell_volume();
    c2 += x * r2[i] * b.spec().cell_volume();
  }
  CHECK(c1 == doctest::Approx(770.0).epsilon(1e-9));
  CHECK(c2 == doctest::Approx(1030.0).epsilon(1e-9));
}

TEST_CASE("packets at rest: entropy follows the single-packet theory") {
  CollisionScenario s;
  s.sigma = 3.0;
  s.k = 1.0;
  s.vg = 0.0;
  s.hessian = 10.0;
  s.x1 = 100.0;
  s.x2 = 300.0;
  s.grid_n = 800;
  s.grid_min = 0.0;
  s.grid_max = 400.0;
  s.t_end = 5.0;
  s.dt = 1.0;
  const CollisionResult r = collision_run(s);
  REQUIRE(r.trajectories.size() == 2);
  const CoherentPacket p = CoherentPacket::isotropic(Vec::Constant(1, 0.0), s.sigma, Vec::Constant(1, s.k));
  for (const auto& traj : r.trajectories) {
    CHECK(classify(traj) == PartitionClass::M);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double single = gaussian_entropy(EvolvedGaussian(p, s.local(), traj.times()[i]));
      CHECK(std::abs(traj.entropies()[i] - (2.0 * single + std::log(2.0))) < 1e-6);
    }
  }
  CHECK_THROWS_AS((void)s.closest_approach(), Error);
}

TEST_CASE("small collision keeps mass, symmetry and emits snapshots") {
  CollisionScenario s;
  s.x1 = 120.0;
  s.x2 = 180.0;
  s.grid_n = 600;
  s.grid_min = 0.0;
  s.grid_max = 300.0;
  s.t_end = 20.0;
  s.dt = 2.0;
  s.snapshot_times = {0.0, 16.0};
  s.snapshot_max_points = 100;
  for (double t = 0.0; t <= s.t_end; t += 4.0) {
    const auto [a, b] = collision_amplitudes(s, t);
    for (ES st : {ES::Fermion, ES::Boson}) {
      const JointDensity j = joint_density(a, b, st);
      CHECK(std::abs(mass(j) - 1.0) < 1e-6);
      CHECK(asymmetry(j) < 1e-12);
    }
  }
  const CollisionResult r = collision_run(s);
  CHECK(r.trajectories[0].size() == 11);
  REQUIRE(r.snapshots.size() == 4);
  for (const auto& snap : r.snapshots) {
    CHECK(snap.stride == 6);
    CHECK(snap.density.grid.n() == 100);
    CHECK(std::abs(mass(snap.density) - 1.0) < 1e-6);
    CHECK(asymmetry(snap.density) < 1e-12);
  }
}
