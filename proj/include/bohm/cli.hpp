#pragma once

// Command-line front end: presets, CSV writers, the check suite, and the
// subcommand dispatcher used by tools/bohmtraj.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bohm/config.hpp"
#include "bohm/diagnostics.hpp"

namespace bohm::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode { kOk = 0, kDiagnosticFailure = 1, kConfigError = 2, kNumericFailure = 3 };

std::vector<std::string> preset_names();
std::optional<RunConfig> preset(std::string_view name);

/// Frame the trajectories are integrated in: the lab for symmetric and
/// paraxial specs, otherwise the positivity frame (the lab again when the
/// spec is not optical).
BoostFrame integration_frame(const RunConfig& cfg);

/// `t,x,re_psi,im_psi,j,rho,V`, row-major over the grid in the boost_v frame.
std::string field_csv(const RunConfig& cfg);
/// `traj_id,t,x,status`. Paths are integrated in integration_frame(cfg) at the
/// grid times and mapped into the boost_v frame.
std::string traj_csv(const RunConfig& cfg);
/// `t,x,vs` in the boost_v frame; `nan` where the velocity is undefined.
std::string metric_csv(const RunConfig& cfg);
/// Positivity frame and the boosted parameters as key=value lines.
std::string boost_frame_text(const RunConfig& cfg);

/// Continuity, density matching, covariance, null metric and positivity.
std::vector<DiagnosticReport> run_checks(const RunConfig& cfg);

/// Full command line, argv[0] included. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bohm::cli
