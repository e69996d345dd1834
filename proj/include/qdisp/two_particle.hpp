#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qdisp/dispersion.hpp"
#include "qdisp/field_grid.hpp"
#include "qdisp/gaussian_packet.hpp"
#include "qdisp/grid.hpp"

namespace qdisp {

/// Fermion pairs antisymmetrize (minus), bosons symmetrize (plus).
enum class ExchangeStatistics { Fermion, Boson };

std::string_view to_string(ExchangeStatistics s);
double exchange_sign(ExchangeStatistics s);

/// rho(r1, r2) on the n x n product of a 1D grid, row index r1.
struct JointDensity {
  GridSpec grid;  // 2D
  std::vector<double> rho;
  double c_t = 0.0;
};

/// Normalization of |psi1(r1) psi2(r2) -+ psi1(r2) psi2(r1)|^2 over the joint
/// grid, computed by quadrature of the overlap. Both fields must share a 1D
/// grid and have unit mass within 1e-6.
double exchange_norm(const GridField& psi1, const GridField& psi2, ExchangeStatistics stats);

/// Throws DegenerateState when C_t < 1e-9.
JointDensity joint_density(const GridField& psi1, const GridField& psi2,
                           ExchangeStatistics stats);

/// -sum rho ln rho dA. Throws NotNormalized unless the mass is 1 within 1e-6.
double joint_entropy(std::span<const double> rho, const GridSpec& grid);

/// Joint entropy evaluated without materializing the n x n density.
double joint_entropy(const GridField& psi1, const GridField& psi2, ExchangeStatistics stats);

/// Entropy of the unsymmetrized product psi1(r1) psi2(r2).
double product_entropy(const GridField& psi1, const GridField& psi2);

/// Entropy of [rho1(r1) rho2(r2) + rho1(r2) rho2(r1)] / 2, the exchange
/// density with the interference term dropped. Equals the product entropy
/// plus ln 2 once the packets no longer overlap.
double incoherent_entropy(const GridField& psi1, const GridField& psi2);

/// Separation sweep: two static packets at -x/2 and +x/2.
struct SweepParams {
  double sigma1 = 50.0;
  double sigma2 = 100.0;
  double k1 = 1.0;
  double k2 = 2.0;
  int grid_n = 2000;
  /// Domain [grid_min, grid_max). Unset bounds default to a symmetric box of
  /// width 8 max(sigma) + max(distance).
  std::optional<double> grid_min;
  std::optional<double> grid_max;

  GridSpec grid(const std::vector<double>& distances) const;
};

struct SweepRow {
  double x;
  double s_fermion;
  double s_boson;
};

std::vector<SweepRow> separation_sweep(const SweepParams& params,
                                       const std::vector<double>& distances);

/// Two 1D packets approaching with opposite momenta and group velocities.
/// Without a model the group speed and Hessian are taken as given; with one
/// they follow from the model at wave number k.
struct CollisionScenario {
  double sigma = 3.0;
  double k = 2.0 * 3.14159265358979323846;
  double vg = 2.0;
  double hessian = 10.0;
  double x1 = 750.0;
  double x2 = 1050.0;
  int grid_n = 6000;
  double grid_min = 0.0;
  double grid_max = 1800.0;
  std::vector<ExchangeStatistics> stats{ExchangeStatistics::Fermion, ExchangeStatistics::Boson};
  double t_end = 70.0;
  double dt = 1.0;
  double tolerance = 1e-4;
  std::optional<DispersionModel> model;
  std::vector<double> snapshot_times;
  int snapshot_max_points = 200;

  void validate() const;
  GridSpec grid() const;
  /// Local dispersion of packet 1; packet 2 mirrors k and v_g.
  LocalDispersion local() const;
  /// Time at which the centres meet, (x2 - x1) / (2 vg).
  double closest_approach() const;
  /// True when sigma < 3 spacing.
  bool under_resolved() const;
};

/// Evolved 1D amplitudes of both packets sampled and renormalized on the grid.
std::pair<GridField, GridField> collision_amplitudes(const CollisionScenario& s, double t);

struct Snapshot {
  double t;
  ExchangeStatistics stats;
  int stride;
  JointDensity density;  // averaged over stride x stride blocks
};

struct CollisionResult {
  std::vector<ExchangeStatistics> stats;
  std::vector<EntropyTrajectory> trajectories;  // one per entry of stats
  std::vector<Snapshot> snapshots;
};

CollisionResult collision_run(const CollisionScenario& s);

}  // namespace qdisp
