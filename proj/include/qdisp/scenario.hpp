#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qdisp/csv.hpp"
#include "qdisp/two_particle.hpp"

namespace qdisp::io {

/// Flat "key = value" text; '#' starts a comment. Duplicate keys and lines
/// without '=' are rejected with ConfigError.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& is);
KeyValues load_key_values(const std::string& path);

/// Collision keys: model (explicit | schrodinger | dirac), sigma, k, vg,
/// hessian, x1, x2, grid_n, grid_min, grid_max, stats (fermion | boson |
/// both), t_end, dt, plus mass, hbar, c, tolerance and snapshots (comma list
/// of times). vg and hessian apply to the explicit model only; mass, hbar and
/// c to the others.
CollisionScenario collision_from_config(const KeyValues& kv);
ConfigLines describe(const CollisionScenario& s);

/// Sweep keys: sigma, sigma2, k, k2, grid_n, grid_min, grid_max, x_min,
/// x_max, x_step.
struct SweepConfig {
  SweepParams params;
  double x_min = 0.0;
  double x_max = 400.0;
  double x_step = 10.0;

  std::vector<double> distances() const;
};

SweepConfig sweep_from_config(const KeyValues& kv);
ConfigLines describe(const SweepConfig& s);

/// Strict numeric parsing shared with the command line. Throws ConfigError.
double parse_real(const std::string& key, const std::string& text);
int parse_int(const std::string& key, const std::string& text);
std::vector<double> parse_real_list(const std::string& key, const std::string& text);

}  // namespace qdisp::io
