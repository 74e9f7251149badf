#pragma once

#include <span>
#include <vector>

namespace bohm {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computed by Newton iteration on P_n; cached per order, thread-safe.
const GaussLegendre& gauss_legendre(int order);

/// Composite rule over [k_lo, k_hi]: `panels` equal panels of the given
/// order, with every interior breakpoint forced to be a panel edge.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double k_lo = 0.0;
    double k_hi = 0.0;
};

QuadratureRule make_panel_rule(double k_lo, double k_hi, int panels, int order,
                               std::span<const double> breakpoints = {});

}  // namespace bohm
