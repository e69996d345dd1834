#include "qdisp/two_particle.hpp"

#include <algorithm>
#include <cmath>

#include "qdisp/error.hpp"
#include "qdisp/kernels.hpp"

namespace qdisp {

namespace {

constexpr double kJointMassTolerance = 1e-6;
constexpr double kDegenerateNorm = 1e-9;

void check_pair(const GridField& psi1, const GridField& psi2) {
  require(psi1.spec().dim() == 1 && psi1.spec() == psi2.spec(), ErrorKind::InvalidArgument,
          "two-particle amplitudes must share a 1D grid");
  for (const GridField* f : {&psi1, &psi2}) {
    if (!(std::abs(f->mass() - 1.0) <= kJointMassTolerance)) {
      fail(ErrorKind::NotNormalized, "single-particle amplitude is not normalized");
    }
  }
}

GridSpec joint_grid(const GridSpec& g) {
  return GridSpec(2, g.n(), Vec::Constant(2, g.origin()[0]), Vec::Constant(2, g.spacing()[0]));
}

double checked_norm(const GridField& psi1, const GridField& psi2, ExchangeStatistics stats) {
  const double c = exchange_norm(psi1, psi2, stats);
  if (c < kDegenerateNorm) {
    fail(ErrorKind::DegenerateState, "exchange-symmetrized state vanishes (C_t < 1e-9)");
  }
  return c;
}

JointDensity block_averaged_density(const GridField& psi1, const GridField& psi2,
                                    ExchangeStatistics stats, int stride) {
  const double c = checked_norm(psi1, psi2, stats);
  const GridSpec& g = psi1.spec();
  const int n = g.n();
  const int m = (n + stride - 1) / stride;
  const GridSpec coarse(2, m, Vec::Constant(2, g.origin()[0]),
                        Vec::Constant(2, g.spacing()[0] * stride));
  JointDensity out{coarse, std::vector<double>(coarse.size(), 0.0), c};
  const auto a = psi1.amplitude();
  const auto b = psi2.amplitude();
  const double sign = exchange_sign(stats);
#pragma omp parallel for schedule(dynamic, 1)
  for (int bi = 0; bi < m; ++bi) {
    for (int bj = 0; bj < m; ++bj) {
      double acc = 0.0;
      int cells = 0;
      for (int i = bi * stride; i < std::min(n, (bi + 1) * stride); ++i) {
        for (int j = bj * stride; j < std::min(n, (bj + 1) * stride); ++j) {
          acc += std::norm(a[i] * b[j] + sign * a[j] * b[i]);
          ++cells;
        }
      }
      out.rho[static_cast<std::size_t>(bi) * m + bj] = acc / (cells * c);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(ExchangeStatistics s) {
  return s == ExchangeStatistics::Fermion ? "fermion" : "boson";
}

double exchange_sign(ExchangeStatistics s) { return s == ExchangeStatistics::Fermion ? -1.0 : 1.0; }

double exchange_norm(const GridField& psi1, const GridField& psi2, ExchangeStatistics stats) {
  check_pair(psi1, psi2);
  const auto a = psi1.amplitude();
  const auto b = psi2.amplitude();
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
  overlap *= psi1.spec().cell_volume();
  return 2.0 * psi1.mass() * psi2.mass() + exchange_sign(stats) * 2.0 * std::norm(overlap);
}

JointDensity joint_density(const GridField& psi1, const GridField& psi2,
                           ExchangeStatistics stats) {
  const double c = checked_norm(psi1, psi2, stats);
  JointDensity out{joint_grid(psi1.spec()), std::vector<double>(psi1.spec().size() *
                                                                psi1.spec().size()),
                   c};
  kernels::joint_density(psi1.amplitude(), psi2.amplitude(), exchange_sign(stats), 1.0 / c,
                         out.rho);
  return out;
}

double joint_entropy(std::span<const double> rho, const GridSpec& grid) {
  require(rho.size() == grid.size(), ErrorKind::InvalidArgument,
          "density length does not match the grid");
  double mass = 0.0;
  for (double r : rho) mass += r;
  mass *= grid.cell_volume();
  if (!(std::abs(mass - 1.0) <= kJointMassTolerance)) {
    fail(ErrorKind::NotNormalized, "joint density mass differs from 1 by more than 1e-6");
  }
  return kernels::entropy_sum(rho) * grid.cell_volume();
}

double joint_entropy(const GridField& psi1, const GridField& psi2, ExchangeStatistics stats) {
  const double c = checked_norm(psi1, psi2, stats);
  const double dx = psi1.spec().spacing()[0];
  return kernels::joint_entropy_sum(psi1.amplitude(), psi2.amplitude(), exchange_sign(stats),
                                    1.0 / c) *
         dx * dx;
}

double product_entropy(const GridField& psi1, const GridField& psi2) {
  check_pair(psi1, psi2);
  return numerical_entropy(psi1.density(), psi1.spec().cell_volume()) +
         numerical_entropy(psi2.density(), psi2.spec().cell_volume());
}

double incoherent_entropy(const GridField& psi1, const GridField& psi2) {
  check_pair(psi1, psi2);
  const std::vector<double> r1 = psi1.density();
  const std::vector<double> r2 = psi2.density();
  const double m = psi1.mass() * psi2.mass();
  const std::size_t n = r1.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double rho = 0.5 * (r1[i] * r2[j] + r1[j] * r2[i]) / m;
      if (rho > 0.0) sum -= rho * std::log(rho);
    }
  }
  const double dx = psi1.spec().spacing()[0];
  return sum * dx * dx;
}

GridSpec SweepParams::grid(const std::vector<double>& distances) const {
  double lo = 0.0;
  double hi = 0.0;
  if (grid_min && grid_max) {
    lo = *grid_min;
    hi = *grid_max;
  } else {
    double far = 0.0;
    for (double x : distances) far = std::max(far, std::abs(x));
    const double half = 0.5 * (8.0 * std::max(sigma1, sigma2) + far);
    lo = grid_min.value_or(-half);
    hi = grid_max.value_or(half);
  }
  return GridSpec::box(1, grid_n, lo, hi);
}

std::vector<SweepRow> separation_sweep(const SweepParams& params,
                                       const std::vector<double>& distances) {
  require(params.sigma1 > 0.0 && params.sigma2 > 0.0, ErrorKind::InvalidArgument,
          "packet widths must be positive");
  require(!distances.empty(), ErrorKind::InvalidArgument, "sweep needs at least one distance");
  const GridSpec grid = params.grid(distances);
  std::vector<SweepRow> rows;
  for (double x : distances) {
    const auto packet = [&](double centre, double sigma, double k) {
      const CoherentPacket p = CoherentPacket::isotropic(Vec::Constant(1, centre), sigma,
                                                         Vec::Constant(1, k));
      const LocalDispersion still{0.0, Vec::Zero(1), Mat::Zero(1, 1)};
      return sample(EvolvedGaussian(p, still, 0.0), grid).normalized();
    };
    const GridField a = packet(-0.5 * x, params.sigma1, params.k1);
    const GridField b = packet(0.5 * x, params.sigma2, params.k2);
    rows.push_back({x, joint_entropy(a, b, ExchangeStatistics::Fermion),
                    joint_entropy(a, b, ExchangeStatistics::Boson)});
  }
  return rows;
}

void CollisionScenario::validate() const {
  require(sigma > 0.0 && std::isfinite(sigma), ErrorKind::InvalidArgument,
          "sigma must be positive");
  require(std::isfinite(k) && std::isfinite(vg) && std::isfinite(hessian) &&
              std::isfinite(x1) && std::isfinite(x2),
          ErrorKind::InvalidArgument, "scenario parameters must be finite");
  require(grid_max > grid_min, ErrorKind::InvalidArgument, "grid_max must exceed grid_min");
  require(dt > 0.0 && t_end >= 0.0, ErrorKind::InvalidArgument, "need dt > 0 and t_end >= 0");
  require(!stats.empty(), ErrorKind::InvalidArgument, "no exchange statistics requested");
  require(tolerance > 0.0, ErrorKind::InvalidArgument, "tolerance must be positive");
  require(snapshot_max_points >= 8, ErrorKind::InvalidArgument,
          "snapshot resolution must be at least 8");
  if (model) model->validate();
  (void)grid();
}

GridSpec CollisionScenario::grid() const { return GridSpec::box(1, grid_n, grid_min, grid_max); }

LocalDispersion CollisionScenario::local() const {
  if (model) return LocalDispersion::from_model(*model, Vec::Constant(1, k));
  return {0.0, Vec::Constant(1, vg), Mat::Constant(1, 1, hessian)};
}

double CollisionScenario::closest_approach() const {
  const double v = local().group_velocity[0];
  require(v != 0.0, ErrorKind::InvalidArgument, "packets at rest never meet");
  return (x2 - x1) / (2.0 * v);
}

bool CollisionScenario::under_resolved() const { return sigma < 3.0 * grid().spacing()[0]; }

std::pair<GridField, GridField> collision_amplitudes(const CollisionScenario& s, double t) {
  const GridSpec grid = s.grid();
  const LocalDispersion l1 = s.local();
  // Mirror image: k -> -k flips the group velocity and keeps the Hessian.
  const LocalDispersion l2{l1.omega0, -l1.group_velocity, l1.hessian};
  const CoherentPacket p1 = CoherentPacket::isotropic(Vec::Constant(1, s.x1), s.sigma,
                                                      Vec::Constant(1, s.k));
  const CoherentPacket p2 = CoherentPacket::isotropic(Vec::Constant(1, s.x2), s.sigma,
                                                      Vec::Constant(1, -s.k));
  return {sample(EvolvedGaussian(p1, l1, t), grid).normalized(),
          sample(EvolvedGaussian(p2, l2, t), grid).normalized()};
}

CollisionResult collision_run(const CollisionScenario& s) {
  s.validate();
  const std::vector<double> times = uniform_times(s.t_end, s.dt);
  std::vector<std::vector<double>> entropies(s.stats.size(), std::vector<double>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto [a, b] = collision_amplitudes(s, times[i]);
    for (std::size_t j = 0; j < s.stats.size(); ++j) {
      entropies[j][i] = joint_entropy(a, b, s.stats[j]);
    }
  }

  CollisionResult out;
  out.stats = s.stats;
  for (std::size_t j = 0; j < s.stats.size(); ++j) {
    out.trajectories.emplace_back(times, std::move(entropies[j]), s.tolerance);
  }

  const int stride = std::max(1, (s.grid_n + s.snapshot_max_points - 1) / s.snapshot_max_points);
  for (double t : s.snapshot_times) {
    const auto [a, b] = collision_amplitudes(s, t);
    for (ExchangeStatistics st : s.stats) {
      out.snapshots.push_back({t, st, stride, block_averaged_density(a, b, st, stride)});
    }
  }
  return out;
}

}  // namespace qdisp
