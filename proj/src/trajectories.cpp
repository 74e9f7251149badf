#include "bohm/trajectories.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "bohm/parallel.hpp"
#include "bohm/relativity.hpp"

namespace bohm {

DensityCdf::DensityCdf(const Wavefunction& wf, double t, double x_lo, double x_hi, int n)
    : x_lo_(x_lo), x_hi_(x_hi), dx_((x_hi - x_lo) / (n - 1))
{
    if (!(x_hi > x_lo) || n < 2) throw std::invalid_argument("DensityCdf: empty window");
    std::vector<double> rho(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = i == n - 1 ? x_hi : x_lo + i * dx_;
        rho[static_cast<std::size_t>(i)] = current_density(wf, {t, x}).rho;
    }
    min_rho_ = *std::min_element(rho.begin(), rho.end());
    max_rho_ = *std::max_element(rho.begin(), rho.end());
    cum_.assign(rho.size(), 0.0);
    for (std::size_t i = 1; i < rho.size(); ++i) cum_[i] = cum_[i - 1] + 0.5 * dx_ * (rho[i - 1] + rho[i]);
    if (!(cum_.back() > 0.0)) throw std::invalid_argument("DensityCdf: density integrates to zero");
}

double DensityCdf::quantile(double q) const
{
    const double target = std::clamp(q, 0.0, 1.0) * cum_.back();
    auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
    if (it == cum_.begin()) return x_lo_;
    if (it == cum_.end()) return x_hi_;
    const auto i = static_cast<std::size_t>(it - cum_.begin());
    const double c0 = cum_[i - 1], c1 = cum_[i];
    const double f = c1 > c0 ? (target - c0) / (c1 - c0) : 0.0;
    return x_lo_ + (static_cast<double>(i - 1) + f) * dx_;
}

double DensityCdf::cdf(double x) const
{
    if (x <= x_lo_) return 0.0;
    if (x >= x_hi_) return 1.0;
    const double s = (x - x_lo_) / dx_;
    const auto i = std::min(static_cast<std::size_t>(s), cum_.size() - 2);
    const double f = s - static_cast<double>(i);
    return (cum_[i] + f * (cum_[i + 1] - cum_[i])) / cum_.back();
}

double optical_negativity_bound(const WavepacketSpec& spec)
{
    const double r = std::max(spec.sigmaR / spec.k0R, spec.sigmaL / spec.k0L);
    return r * r;
}

std::vector<double> sample_initial(const Wavefunction& wf, const EnsembleSpec& ens, double x_lo, double x_hi)
{
    if (ens.n_traj < 1) throw std::invalid_argument("sample_initial: n_traj must be positive");
    const auto n = static_cast<std::size_t>(ens.n_traj);
    std::vector<double> xs(n);
    if (ens.sampling == Sampling::UniformWindow) {
        for (std::size_t i = 0; i < n; ++i) xs[i] = x_lo + (x_hi - x_lo) * (i + 0.5) / static_cast<double>(n);
        return xs;
    }
    const DensityCdf cdf(wf, ens.t0, x_lo, x_hi);
    if (cdf.min_rho() < -optical_negativity_bound(wf.spec()) * cdf.max_rho())
        throw NegativeDensityInWindow("density is negative on the seeding window; integrate in the positivity frame");
    if (ens.sampling == Sampling::DensityQuantile) {
        for (std::size_t i = 0; i < n; ++i) xs[i] = cdf.quantile((i + 0.5) / static_cast<double>(n));
    } else {
        std::mt19937_64 rng(ens.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& x : xs) x = cdf.quantile(u(rng));
        std::sort(xs.begin(), xs.end());
    }
    return xs;
}

Trajectory integrate(const Wavefunction& wf, double x0, std::span<const double> times,
                     const IntegratorOptions& opts, int id)
{
    Trajectory tr;
    tr.id = id;
    if (times.empty()) return tr;
    OdeOptions o;
    o.abs_tol = opts.abs_tol;
    o.rel_tol = opts.rel_tol;
    o.x_domain = opts.x_domain;
    const Rhs rhs = [&wf](double t, double x) {
        const Current c = current_density(wf, {t, x});
        const Velocity v = velocity_from_current(c);
        RhsValue r;
        r.rho = c.rho;
        if (v.defined()) r.v = v.value_or_nan();
        return r;
    };
    const OdeResult res = integrate_dp45(rhs, times.front(), x0, times, o);
    tr.samples.reserve(res.x.size());
    for (std::size_t i = 0; i < res.x.size(); ++i) tr.samples.push_back({times[i], res.x[i]});
    tr.status = res.status;
    tr.max_step_error = res.max_step_error;
    return tr;
}

Trajectory integrate(const Wavefunction& wf, double x0, double t0, double t1, const IntegratorOptions& opts)
{
    const double ts[2] = {t0, t1};
    return integrate(wf, x0, ts, opts);
}

std::vector<Trajectory> ensemble(const Wavefunction& wf, const EnsembleSpec& ens, std::span<const double> times,
                                 double x_lo, double x_hi, const IntegratorOptions& opts, unsigned workers)
{
    EnsembleSpec e = ens;
    if (!times.empty()) e.t0 = times.front();
    const auto x0 = sample_initial(wf, e, x_lo, x_hi);
    std::vector<Trajectory> out(x0.size());
    parallel_for(
        x0.size(), [&](std::size_t i) { out[i] = integrate(wf, x0[i], times, opts, static_cast<int>(i)); },
        workers);
    return out;
}

std::vector<Trajectory> map_to_frame(const std::vector<Trajectory>& trajs, BoostFrame f)
{
    std::vector<Trajectory> out = trajs;
    for (auto& tr : out)
        for (auto& s : tr.samples) s = boost_point(s, f);
    return out;
}

std::vector<double> output_times(double t0, double t1, int n)
{
    if (n < 2) return {t0, t1};
    std::vector<double> ts(static_cast<std::size_t>(n));
    const double dt = (t1 - t0) / (n - 1);
    for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = i == n - 1 ? t1 : t0 + i * dt;
    return ts;
}

}  // namespace bohm
