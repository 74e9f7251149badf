#include "bohm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "bohm/metric.hpp"
#include "bohm/parallel.hpp"
#include "bohm/relativity.hpp"
#include "format.hpp"

namespace bohm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<SpacetimePoint> grid_points(const GridSpec& g)
{
    std::vector<SpacetimePoint> pts;
    pts.reserve(static_cast<std::size_t>(g.nt) * static_cast<std::size_t>(g.nx));
    for (int i = 0; i < g.nt; ++i)
        for (int j = 0; j < g.nx; ++j) pts.push_back({g.t(i), g.x(j)});
    return pts;
}

double max_of(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        if (std::isfinite(x)) m = std::max(m, x);
    return m;
}

struct ContinuityTerms {
    double drho_dt = 0.0;
    double residual = 0.0;
};

ContinuityTerms continuity_at(const CurrentField& field, SpacetimePoint p, double h)
{
    const double drho = (field({p.t + h, p.x}).rho - field({p.t - h, p.x}).rho) / (2.0 * h);
    const double dj = (field({p.t, p.x + h}).j - field({p.t, p.x - h}).j) / (2.0 * h);
    return {drho, drho + dj};
}

DiagnosticReport continuity_from_terms(std::string name, const std::vector<ContinuityTerms>& terms, double h,
                                       double tol)
{
    double scale = 0.0, worst = 0.0;
    for (const auto& t : terms) {
        scale = std::max(scale, std::abs(t.drho_dt));
        worst = std::max(worst, std::abs(t.residual));
    }
    const double norm = scale > 0.0 ? worst / scale : worst;
    return make_report(std::move(name), norm, tol,
                       {{"h", h}, {"max_abs_drho_dt", scale}, {"max_abs_residual", worst}});
}

}  // namespace

double DiagnosticReport::detail(const std::string& key) const
{
    for (const auto& [k, v] : details)
        if (k == key) return v;
    return kNaN;
}

DiagnosticReport make_report(std::string name, double residual, double tolerance,
                             std::vector<std::pair<std::string, double>> details)
{
    DiagnosticReport r;
    r.name = std::move(name);
    r.max_residual = residual;
    r.tolerance = tolerance;
    r.pass = residual <= tolerance;  // false for NaN
    r.details = std::move(details);
    return r;
}

std::string serialize_report(const DiagnosticReport& r)
{
    std::string s = "report=" + r.name + "\n";
    s += "max_residual=" + format_double(r.max_residual) + "\n";
    s += "tolerance=" + format_double(r.tolerance) + "\n";
    s += std::string("pass=") + (r.pass ? "true" : "false") + "\n";
    for (const auto& [k, v] : r.details) s += k + "=" + format_double(v) + "\n";
    return s + "\n";
}

DiagnosticReport continuity_check(const CurrentField& field, const GridSpec& grid, double h, double tol,
                                  std::string name)
{
    if (!(h > 0.0)) throw std::invalid_argument("continuity_check: h must be positive");
    const auto pts = grid_points(grid);
    std::vector<ContinuityTerms> terms(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) { terms[k] = continuity_at(field, pts[k], h); });
    return continuity_from_terms(std::move(name), terms, h, tol);
}

DiagnosticReport continuity_check(const Wavefunction& wf, const GridSpec& grid, double h, double tol)
{
    if (wf.regime() != Regime::General)
        return continuity_check([&wf](SpacetimePoint p) { return current_density(wf, p); }, grid, h, tol);

    if (!(h > 0.0)) throw std::invalid_argument("continuity_check: h must be positive");
    const auto pts = grid_points(grid);
    const double kz2 = wf.spec().kz * wf.spec().kz;
    std::vector<ContinuityTerms> terms(pts.size());
    std::vector<double> kg(pts.size()), mag(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        const SpacetimePoint p = pts[k];
        const PsiEval tp = wf({p.t + h, p.x}), tm = wf({p.t - h, p.x});
        const PsiEval xp = wf({p.t, p.x + h}), xm = wf({p.t, p.x - h});
        const PsiEval c = wf(p);
        const double drho = (current_from_psi(wf, tp).rho - current_from_psi(wf, tm).rho) / (2.0 * h);
        const double dj = (current_from_psi(wf, xp).j - current_from_psi(wf, xm).j) / (2.0 * h);
        terms[k] = {drho, drho + dj};
        const cplx ptt = (tp.dpsi_dt - tm.dpsi_dt) / (2.0 * h);
        const cplx pxx = (xp.dpsi_dx - xm.dpsi_dx) / (2.0 * h);
        kg[k] = std::abs(ptt - pxx + kz2 * c.psi);
        mag[k] = std::abs(c.psi);
    });
    DiagnosticReport r = continuity_from_terms("continuity", terms, h, tol);
    // E^2 at the largest centre wavenumber sets the scale of psi_tt.
    const auto& s = wf.local_spec();
    const double kmax = std::max(s.k0R + 12.0 * s.sigmaR, s.k0L + 12.0 * s.sigmaL);
    r.details.emplace_back("kg_residual", max_of(kg) / (max_of(mag) * (kmax * kmax + kz2)));
    return r;
}

DiagnosticReport continuity_slope(const Wavefunction& wf, const GridSpec& grid, double h_coarse, double h_fine)
{
    const auto a = continuity_check(wf, grid, h_coarse);
    const auto b = continuity_check(wf, grid, h_fine);
    const double slope = std::log10(a.max_residual / b.max_residual) / std::log10(h_coarse / h_fine);
    return make_report("continuity_slope", std::abs(slope - 2.0), 0.25,
                       {{"slope", slope}, {"residual_coarse", a.max_residual}, {"residual_fine", b.max_residual}});
}

DiagnosticReport density_match(const Wavefunction& wf, const std::vector<Trajectory>& trajs,
                               std::span<const double> times, double x_lo, double x_hi, double tol)
{
    if (trajs.size() < 100)
        throw InsufficientTrajectories("density_match needs at least 100 trajectories, got " +
                                       std::to_string(trajs.size()));
    const double width = x_hi - x_lo;
    std::vector<std::pair<std::string, double>> details;
    double worst = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const double eps = 1e-9 * std::max(1.0, std::abs(t));
        std::vector<double> xs;
        xs.reserve(trajs.size());
        for (const auto& tr : trajs)
            for (const auto& s : tr.samples)
                if (std::abs(s.t - t) <= eps) {
                    xs.push_back(s.x);
                    break;
                }
        std::sort(xs.begin(), xs.end());
        const DensityCdf cdf(wf, t, x_lo, x_hi);
        double dev = xs.empty() ? kNaN : 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(xs.size());
            dev = std::max(dev, std::abs(xs[i] - cdf.quantile(q)) / width);
        }
        worst = std::isnan(dev) || std::isnan(worst) ? kNaN : std::max(worst, dev);
        const std::string tag = "t" + std::to_string(k);
        details.emplace_back(tag + "_time", t);
        details.emplace_back(tag + "_deviation", dev);
        details.emplace_back(tag + "_paths", static_cast<double>(xs.size()));
    }
    details.emplace_back("n_traj", static_cast<double>(trajs.size()));
    return make_report("density_match", worst, tol, std::move(details));
}

DiagnosticReport weak_value_identity(const Wavefunction& wf, std::span<const SpacetimePoint> points, double tol)
{
    std::vector<double> dev(points.size(), -1.0);
    parallel_for(points.size(), [&](std::size_t k) {
        const SpacetimePoint p = points[k];
        const PsiEval e = wf(p);
        if (!(std::norm(e.psi) > kRhoFloor)) return;
        const Velocity v = velocity(wf, p);
        if (!v.defined()) return;
        const WeakValuePair w = weak_values(e, p);
        const double V = v.value_or_nan();
        dev[k] = std::abs(V - w.k_weak / w.H_weak) / std::max(1.0, std::abs(V));
    });
    double worst = 0.0;
    long used = 0;
    for (double d : dev)
        if (d >= 0.0 || std::isnan(d)) {
            ++used;
            worst = std::isnan(d) ? kNaN : std::max(worst, d);
        }
    return make_report("weak_value_identity", worst, tol,
                       {{"points", static_cast<double>(points.size())}, {"evaluated", static_cast<double>(used)}});
}

DiagnosticReport covariance_check(const Wavefunction& lab, BoostFrame f, std::span<const SpacetimePoint> points,
                                  double tol, double rho_min)
{
    const Wavefunction boosted = lab.boosted(f);
    std::vector<double> dev(points.size(), -1.0);
    parallel_for(points.size(), [&](std::size_t k) {
        const SpacetimePoint p = points[k];
        const Current c = current_density(lab, p);
        const Current cb = current_density(boosted, boost_point(p, f));
        if (!(std::abs(c.rho) > rho_min) || !(std::abs(cb.rho) > rho_min)) return;
        const Velocity mapped = add_velocity(velocity_from_current(c), f);
        if (!mapped.defined()) return;
        const double Vb = cb.j / cb.rho;
        dev[k] = std::abs(mapped.value_or_nan() - Vb) / std::max(1.0, std::abs(Vb));
    });
    double worst = 0.0;
    long used = 0;
    for (double d : dev)
        if (d >= 0.0 || std::isnan(d)) {
            ++used;
            worst = std::isnan(d) ? kNaN : std::max(worst, d);
        }
    return make_report("covariance", worst, tol,
                       {{"v", f.v()},
                        {"points", static_cast<double>(points.size())},
                        {"skipped", static_cast<double>(static_cast<long>(points.size()) - used)}});
}

DiagnosticReport null_metric_grid(const Wavefunction& wf, const GridSpec& grid, double tol)
{
    const auto pts = grid_points(grid);
    std::vector<double> res(pts.size(), 0.0), det(pts.size(), -1.0);
    parallel_for(pts.size(), [&](std::size_t k) {
        const Velocity v = velocity(wf, pts[k]);
        if (!v.defined()) return;
        const MetricSample m = metric_from_velocity(pts[k], v.value_or_nan());
        res[k] = std::abs(null_form(m.v_s, v.value_or_nan()));
        det[k] = metric_determinant(m);
    });
    double worst_det = -1.0;
    for (double d : det) worst_det = std::max(worst_det, d);
    return make_report("null_metric_grid", max_of(res), tol, {{"max_determinant", worst_det}});
}

DiagnosticReport null_metric_ensemble(const Wavefunction& wf, const std::vector<Trajectory>& trajs, double tol)
{
    std::vector<double> res(trajs.size());
    parallel_for(trajs.size(), [&](std::size_t k) { res[k] = null_residual(trajs[k], wf); });
    return make_report("null_metric_ensemble", max_of(res), tol, {{"trajectories", static_cast<double>(trajs.size())}});
}

std::vector<NegativeCell> negative_density_map(const Wavefunction& wf, const GridSpec& grid, unsigned workers)
{
    const auto pts = grid_points(grid);
    std::vector<double> rho(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) { rho[k] = current_density(wf, pts[k]).rho; }, workers);
    std::vector<NegativeCell> out;
    const auto nx = static_cast<std::size_t>(grid.nx);
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (rho[k] < 0.0) out.push_back({static_cast<int>(k / nx), static_cast<int>(k % nx), pts[k], rho[k]});
    return out;
}

NegativityStats negativity_stats(const Wavefunction& wf, const GridSpec& grid, unsigned workers)
{
    WavepacketSpec right = wf.spec(), left = wf.spec();
    right.alpha = 1.0;
    left.alpha = 0.0;
    const Wavefunction wr(right, wf.frame(), wf.quadrature()), wl(left, wf.frame(), wf.quadrature());
    const double ar = std::sqrt(wf.spec().alpha), al = std::sqrt(1.0 - wf.spec().alpha);
    const double peak_r = mover_amplitude(wr.local_spec(), true), peak_l = mover_amplitude(wl.local_spec(), false);
    const double floor = std::exp(-16.0);

    struct Cell {
        double rho = 0.0;
        bool suppressed = false, node = false;
    };
    const auto pts = grid_points(grid);
    std::vector<Cell> cells(pts.size());
    parallel_for(
        pts.size(),
        [&](std::size_t k) {
            const SpacetimePoint p = pts[k];
            Cell c;
            c.rho = current_density(wf, p).rho;
            if (c.rho < 0.0) {
                const double mr = std::abs(wr(p).psi), ml = std::abs(wl(p).psi);
                c.suppressed = mr < floor * peak_r && ml < floor * peak_l;
                c.node = std::abs(wf(p).psi) <= 0.5 * (ar * mr + al * ml);
            }
            cells[k] = c;
        },
        workers);

    NegativityStats st;
    st.eta = optical_negativity_bound(wf.spec());
    for (const auto& c : cells) {
        st.min_rho = std::min(st.min_rho, c.rho);
        st.max_abs_rho = std::max(st.max_abs_rho, std::abs(c.rho));
    }
    for (const auto& c : cells) {
        if (!(c.rho < 0.0)) continue;
        ++st.strict_cells;
        if (c.suppressed) continue;
        ++st.unsuppressed_cells;
        if (c.rho >= -st.eta * st.max_abs_rho) continue;
        ++st.significant_cells;
        if (c.node) ++st.node_cells;
    }
    return st;
}

DiagnosticReport positivity_check(const Wavefunction& wf, const GridSpec& grid)
{
    const NegativityStats st = negativity_stats(wf, grid);
    return make_report("positivity", static_cast<double>(st.significant_cells), 0.0,
                       {{"v", wf.frame().v()},
                        {"strict_negative_cells", static_cast<double>(st.strict_cells)},
                        {"unsuppressed_negative_cells", static_cast<double>(st.unsuppressed_cells)},
                        {"min_rho", st.min_rho},
                        {"max_abs_rho", st.max_abs_rho},
                        {"eta", st.eta}});
}

GridSpec paraxial_comparison_grid(double k0, double kz, int nt, int nx)
{
    GridSpec g;
    g.t_max = 4.0 * kz / k0;
    g.t_min = -g.t_max;
    g.x_min = -6.0;
    g.x_max = 6.0;
    g.nt = nt;
    g.nx = nx;
    return g;
}

double paraxial_deviation(double alpha, double k0, double sigma, double kz, const GridSpec& grid,
                          const QuadratureOptions& quad)
{
    WavepacketSpec gen;
    gen.alpha = alpha;
    gen.k0R = gen.k0L = k0;
    gen.sigmaR = gen.sigmaL = sigma;
    gen.kz = kz;
    gen.regime = Regime::General;
    WavepacketSpec par = gen;
    par.regime = Regime::Paraxial;
    const Wavefunction wg(gen, quad), wp(par);
    const auto pts = grid_points(grid);
    std::vector<double> dev(pts.size(), 0.0);
    parallel_for(pts.size(), [&](std::size_t k) {
        const Current a = current_density(wg, pts[k]);
        const Current b = current_density(wp, pts[k]);
        if (!(std::abs(a.rho) > kRhoFloor) || !(std::abs(b.rho) > kRhoFloor)) return;
        dev[k] = std::abs(a.j / a.rho - b.j / b.rho);
    });
    return max_of(dev);
}

DiagnosticReport paraxial_convergence(double alpha, double k0, double sigma, std::span<const double> kzs, int nt,
                                      int nx, const QuadratureOptions& quad, double tol)
{
    std::vector<std::pair<std::string, double>> details;
    double prev = std::numeric_limits<double>::infinity(), last = kNaN;
    bool monotone = true;
    for (double kz : kzs) {
        const double d = paraxial_deviation(alpha, k0, sigma, kz, paraxial_comparison_grid(k0, kz, nt, nx), quad);
        details.emplace_back("kz_" + format_double(kz), d);
        monotone = monotone && d < prev;
        prev = d;
        last = d;
    }
    details.emplace_back("monotone", monotone ? 1.0 : 0.0);
    // A non-monotone sequence fails regardless of the last value.
    return make_report("paraxial_convergence", monotone ? last : std::numeric_limits<double>::infinity(), tol,
                       std::move(details));
}

std::vector<SpacetimePoint> random_points(const GridSpec& box, int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(box.t_min, box.t_max), ux(box.x_min, box.x_max);
    std::vector<SpacetimePoint> pts(static_cast<std::size_t>(std::max(n, 0)));
    for (auto& p : pts) {
        p.t = ut(rng);
        p.x = ux(rng);
    }
    return pts;
}

}  // namespace bohm
