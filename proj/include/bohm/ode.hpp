#pragma once

// Scalar Dormand-Prince 5(4) integrator for dx/dt = V(t, x) where V may be
// undefined (density nodes). Steps land exactly on the requested output
// times, so no interpolation enters the recorded samples.

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace bohm {

struct OdeOptions {
    double abs_tol = 1e-8;
    double rel_tol = 0.0;
    double h_min = 1e-10;  // below this the solution is declared stalled
    double h_max = 0.0;    // 0: unbounded
    double h_node = 1e-3;  // step cap while |rho| < kRhoNode
    long max_steps = 10'000'000;
    std::optional<std::pair<double, double>> x_domain;
};

struct RhsValue {
    std::optional<double> v;  // nullopt: velocity undefined here
    double rho = 1.0;
};

using Rhs = std::function<RhsValue(double t, double x)>;

enum class OdeStatus { Completed, LeftDomain, StalledAtNode };
std::string_view to_string(OdeStatus s);

struct OdeResult {
    std::vector<double> x;  // one entry per output time reached
    OdeStatus status = OdeStatus::Completed;
    double max_step_error = 0.0;
    long steps = 0;
    long rejected = 0;
    double t_end = 0.0;
    double x_end = 0.0;
};

/// Integrates from (t0, x0) through `outputs`, which must be monotone in the
/// direction of integration (backwards when outputs[0] < t0 or the sequence
/// decreases). An output equal to t0 records x0.
OdeResult integrate_dp45(const Rhs& rhs, double t0, double x0, std::span<const double> outputs,
                         const OdeOptions& opts = {});

}  // namespace bohm
