#include "bohm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bohm/core.hpp"

namespace bohm {
namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Trial {
    bool ok = false;
    double x5 = 0.0, err = 0.0, k7 = 0.0, rho7 = 1.0;
};

Trial try_step(const Rhs& f, double t, double x, double k1, double h)
{
    Trial r;
    auto eval = [&](double tt, double xx, double& out) {
        const RhsValue v = f(tt, xx);
        if (!v.v) return false;
        out = *v.v;
        return true;
    };
    double k2, k3, k4, k5, k6;
    if (!eval(t + c2 * h, x + h * a21 * k1, k2)) return r;
    if (!eval(t + c3 * h, x + h * (a31 * k1 + a32 * k2), k3)) return r;
    if (!eval(t + c4 * h, x + h * (a41 * k1 + a42 * k2 + a43 * k3), k4)) return r;
    if (!eval(t + c5 * h, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5)) return r;
    if (!eval(t + h, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6)) return r;
    r.x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const RhsValue v7 = f(t + h, r.x5);
    if (!v7.v) return r;
    r.k7 = *v7.v;
    r.rho7 = v7.rho;
    r.err = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * r.k7));
    r.ok = std::isfinite(r.x5) && std::isfinite(r.err);
    return r;
}

}  // namespace

std::string_view to_string(OdeStatus s)
{
    switch (s) {
    case OdeStatus::Completed: return "completed";
    case OdeStatus::LeftDomain: return "left_domain";
    case OdeStatus::StalledAtNode: return "stalled_at_node";
    }
    return "?";
}

OdeResult integrate_dp45(const Rhs& rhs, double t0, double x0, std::span<const double> outputs,
                         const OdeOptions& opts)
{
    OdeResult res;
    res.t_end = t0;
    res.x_end = x0;
    if (outputs.empty()) return res;
    const double last = outputs.back();
    const double dir = (last > t0 || (last == t0 && outputs.front() >= t0)) ? 1.0 : -1.0;
    for (std::size_t i = 1; i < outputs.size(); ++i)
        if (dir * (outputs[i] - outputs[i - 1]) < 0.0)
            throw std::invalid_argument("integrate_dp45: output times not monotone");

    double t = t0, x = x0;
    RhsValue v0 = rhs(t, x);
    if (!v0.v) {
        res.status = OdeStatus::StalledAtNode;
        return res;
    }
    double k1 = *v0.v, rho = v0.rho;
    double h = 1e-2;
    std::size_t next = 0;

    while (next < outputs.size()) {
        if (dir * (outputs[next] - t) <= 0.0) {
            res.x.push_back(x);
            ++next;
            continue;
        }
        if (res.steps + res.rejected >= opts.max_steps) {
            res.status = OdeStatus::StalledAtNode;
            break;
        }
        double step = h;
        if (opts.h_max > 0.0) step = std::min(step, opts.h_max);
        if (std::abs(rho) < kRhoNode) step = std::min(step, opts.h_node);
        const double remaining = dir * (outputs[next] - t);
        const bool landing = step >= remaining;
        if (landing) step = remaining;

        const Trial tr = try_step(rhs, t, x, k1, dir * step);
        const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(x), std::abs(tr.x5));
        if (!tr.ok || tr.err > scale) {
            ++res.rejected;
            h = tr.ok ? step * std::max(0.1, 0.9 * std::pow(scale / tr.err, 0.2)) : 0.25 * step;
            if (h < opts.h_min) {
                res.status = OdeStatus::StalledAtNode;
                break;
            }
            continue;
        }
        ++res.steps;
        res.max_step_error = std::max(res.max_step_error, tr.err);
        t = landing ? outputs[next] : t + dir * step;
        x = tr.x5;
        k1 = tr.k7;
        rho = tr.rho7;
        const double grow = tr.err > 0.0 ? std::min(5.0, 0.9 * std::pow(scale / tr.err, 0.2)) : 5.0;
        // A landing step is often artificially short; do not let it shrink h.
        h = landing ? std::max(h, step * grow) : step * grow;
        if (opts.x_domain && (x < opts.x_domain->first || x > opts.x_domain->second)) {
            res.status = OdeStatus::LeftDomain;
            break;
        }
    }
    res.t_end = t;
    res.x_end = x;
    return res;
}

}  // namespace bohm
