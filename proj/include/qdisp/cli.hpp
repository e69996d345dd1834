#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdisp/two_particle.hpp"

namespace qdisp::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalFailure = 3;

/// Entry point of the qdisp tool. `args` excludes the program name. CSV and
/// reports go to `out`, diagnostics to `err`. Thread count is taken from the
/// QDISP_THREADS environment variable when set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Head-on collision used by `figures` (group speed vg) on the [0, 1800]
/// grid. preset is "full" (6000 points) or "quarter" (1500 points).
CollisionScenario preset_scenario(double vg, const std::string& preset);

}  // namespace qdisp::cli
