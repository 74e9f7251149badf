#pragma once

// Flat `key=value` run configuration.

#include <cstdint>
#include <string>
#include <string_view>

#include "bohm/core.hpp"

namespace bohm {

struct RunConfig {
    WavepacketSpec spec;
    GridSpec grid;
    double boost_v = 0.0;
    int n_traj = 40;
    std::uint64_t seed = 0;
    double abs_tol = 1e-8;  // trajectory integrator, absolute
    double rel_tol = 0.0;   // trajectory integrator, relative
    int quad_nodes = 20;    // Gauss-Legendre order per panel
    double quad_tol = 1e-10;
    double optical_ratio = kDefaultOpticalRatio;
    double fd_step = 1e-4;  // differencing step for continuity checks
    int check_traj = 1000;  // ensemble size used by the density-match check

    bool operator==(const RunConfig&) const = default;
};

/// Parses a config document on top of the built-in defaults.
RunConfig parse_config(std::string_view text);

/// Applies the keys in `text` on top of `base` (used for preset + overrides).
RunConfig apply_config(std::string_view text, RunConfig base);

/// Emits every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

}  // namespace bohm
