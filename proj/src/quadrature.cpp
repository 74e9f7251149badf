#include "bohm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bohm {
namespace {

GaussLegendre compute_gauss_legendre(int n)
{
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        gl.nodes[static_cast<std::size_t>(i)] = -z;
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        gl.weights[static_cast<std::size_t>(i)] = w;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) gl.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order)
{
    if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<GaussLegendre>(compute_gauss_legendre(order));
    return *slot;
}

QuadratureRule make_panel_rule(double k_lo, double k_hi, int panels, int order,
                               std::span<const double> breakpoints)
{
    if (!(k_hi > k_lo) || panels < 1)
        throw std::invalid_argument("make_panel_rule: empty interval or no panels");
    const auto& gl = gauss_legendre(order);

    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(panels) + breakpoints.size() + 1);
    const double width = (k_hi - k_lo) / panels;
    for (int i = 0; i <= panels; ++i) edges.push_back(i == panels ? k_hi : k_lo + i * width);
    for (double b : breakpoints)
        if (b > k_lo && b < k_hi) edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    QuadratureRule rule;
    rule.k_lo = k_lo;
    rule.k_hi = k_hi;
    rule.nodes.reserve((edges.size() - 1) * gl.nodes.size());
    rule.weights.reserve(rule.nodes.capacity());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            rule.nodes.push_back(mid + half * gl.nodes[q]);
            rule.weights.push_back(half * gl.weights[q]);
        }
    }
    return rule;
}

}  // namespace bohm
