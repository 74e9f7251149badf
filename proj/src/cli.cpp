#include "bohm/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bohm/metric.hpp"
#include "bohm/relativity.hpp"
#include "format.hpp"

namespace bohm::cli {
namespace {

QuadratureOptions quad_options(const RunConfig& c)
{
    QuadratureOptions q;
    q.order = c.quad_nodes;
    q.tol = c.quad_tol;
    return q;
}

BoostFrame observer_frame(const RunConfig& c)
{
    if (c.spec.regime == Regime::Paraxial && c.boost_v != 0.0)
        throw ConfigError("boost_v: paraxial fields are not Lorentz covariant and cannot be boosted", "boost_v");
    return BoostFrame(c.boost_v);
}

Wavefunction observer_field(const RunConfig& c)
{
    return Wavefunction(c.spec, observer_frame(c), quad_options(c));
}

IntegratorOptions integrator_options(const RunConfig& c)
{
    IntegratorOptions o;
    o.abs_tol = c.abs_tol;
    o.rel_tol = c.rel_tol;
    return o;
}

// Grid used by the check suite; quadrature points are far more expensive.
GridSpec check_grid(const RunConfig& c)
{
    return c.spec.regime == Regime::General ? c.grid.thinned(81, 101) : c.grid;
}

std::string join(std::initializer_list<std::string> cols)
{
    std::string s;
    for (const auto& c : cols) {
        if (!s.empty()) s += ',';
        s += c;
    }
    return s + '\n';
}

struct Ensemble {
    Wavefunction wf;
    std::vector<double> times;
    std::vector<Trajectory> paths;
};

Ensemble integrate_ensemble(const RunConfig& c, int n, double x_lo, double x_hi)
{
    Ensemble e{Wavefunction(c.spec, integration_frame(c), quad_options(c)), c.grid.times(), {}};
    EnsembleSpec es;
    es.n_traj = n;
    es.t0 = c.grid.t_min;
    es.t1 = c.grid.t_max;
    es.seed = c.seed;
    e.paths = ensemble(e.wf, es, e.times, x_lo, x_hi, integrator_options(c));
    return e;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

void write_manifest(const std::string& out_path, const std::string& command, const RunConfig& cfg, double seconds,
                    const std::vector<DiagnosticReport>& reports)
{
    std::string m = "tool=bohmtraj\nversion=" + std::string(kToolVersion) + "\ncommand=" + command +
                    "\nwall_seconds=" + format_double(seconds) + "\noutput=" + out_path + "\n";
    for (const auto& r : reports) m += "diagnostic." + r.name + "=" + (r.pass ? "pass" : "fail") + "\n";
    m += "\n" + serialize_config(cfg);
    write_text(out_path + ".manifest", m);
}

}  // namespace

std::vector<std::string> preset_names()
{
    return {"fig2a", "fig2b", "fig3", "fig4", "fig5", "fig6"};
}

std::optional<RunConfig> preset(std::string_view name)
{
    RunConfig c;
    c.spec.k0R = c.spec.k0L = 15.0;
    c.spec.sigmaR = c.spec.sigmaL = 1.0;
    c.spec.regime = Regime::HeadOn;
    c.grid = GridSpec{-4.0, 4.0, -6.0, 6.0, 201, 601};
    c.n_traj = 40;
    if (name == "fig2a") {
        c.spec.alpha = 1.0;
    } else if (name == "fig2b") {
        c.spec.alpha = 0.5;
    } else if (name == "fig3") {
        c.spec.alpha = 0.5;
        c.boost_v = 0.125;
    } else if (name == "fig6") {
        c.spec.alpha = 0.5;
        c.boost_v = 0.4;
        // Superluminal bursts last ~0.01; coarser output steps average them away.
        c.grid.nt = 801;
        c.grid.nx = 301;
    } else if (name == "fig4") {
        c.spec.alpha = 0.5;
        c.spec.k0R = c.spec.k0L = 6.0;
        c.spec.kz = 24.0;
        c.spec.regime = Regime::General;
        c.grid = GridSpec{-16.0, 16.0, -6.0, 6.0, 161, 301};
        c.check_traj = 100;
    } else if (name == "fig5") {
        c.spec.alpha = 0.5;
        c.spec.k0R = c.spec.k0L = 5.0;
        c.spec.kz = 500.0;
        c.spec.regime = Regime::Paraxial;
        c.grid = GridSpec{-400.0, 400.0, -6.0, 6.0, 201, 301};
    } else {
        return std::nullopt;
    }
    return c;
}

BoostFrame integration_frame(const RunConfig& c)
{
    if (c.spec.regime == Regime::Paraxial || c.spec.symmetric()) return {};
    if (!is_optical(c.spec, c.optical_ratio)) return {};
    return positivity_frame(c.spec, c.optical_ratio);
}

std::string field_csv(const RunConfig& c)
{
    const auto samples = sample_grid(observer_field(c), c.grid);
    std::string s = "t,x,re_psi,im_psi,j,rho,V\n";
    s.reserve(samples.size() * 140);
    for (const auto& f : samples)
        s += join({format_double(f.point.t), format_double(f.point.x), format_double(f.psi.real()),
                   format_double(f.psi.imag()), format_double(f.j), format_double(f.rho),
                   format_double(f.V.value_or_nan())});
    return s;
}

std::string traj_csv(const RunConfig& c)
{
    const BoostFrame obs = observer_frame(c);
    const Ensemble e = integrate_ensemble(c, c.n_traj, c.grid.x_min, c.grid.x_max);
    const auto mapped = map_to_frame(e.paths, relative(integration_frame(c), obs));
    std::string s = "traj_id,t,x,status\n";
    for (const auto& tr : mapped) {
        const std::string id = std::to_string(tr.id), status(to_string(tr.status));
        for (const auto& p : tr.samples) s += join({id, format_double(p.t), format_double(p.x), status});
    }
    return s;
}

std::string metric_csv(const RunConfig& c)
{
    const auto vs = shift_grid(observer_field(c), c.grid);
    std::string s = "t,x,vs\n";
    for (int i = 0; i < c.grid.nt; ++i)
        for (int j = 0; j < c.grid.nx; ++j)
            s += join({format_double(c.grid.t(i)), format_double(c.grid.x(j)),
                       format_double(vs[static_cast<std::size_t>(i) * static_cast<std::size_t>(c.grid.nx) +
                                        static_cast<std::size_t>(j)])});
    return s;
}

std::string boost_frame_text(const RunConfig& c)
{
    const BoostFrame f = positivity_frame(c.spec, c.optical_ratio);
    const WavepacketSpec b = boost_spec(c.spec, f).spec;
    std::string s;
    auto kv = [&](const char* k, double v) { s += std::string(k) + "=" + format_double(v) + "\n"; };
    kv("v", f.v());
    kv("gamma", f.gamma());
    kv("k0R", b.k0R);
    kv("k0L", b.k0L);
    kv("sigmaR", b.sigmaR);
    kv("sigmaL", b.sigmaL);
    s += std::string("optical=") + (is_optical(b, c.optical_ratio) ? "true" : "false") + "\n";
    return s;
}

std::vector<DiagnosticReport> run_checks(const RunConfig& c)
{
    std::vector<DiagnosticReport> out;
    const GridSpec grid = check_grid(c);
    const Wavefunction field = observer_field(c);
    out.push_back(continuity_check(field, grid, c.fd_step));

    // Padded so that dispersing packets keep their mass inside the CDF window.
    const double pad = 0.5 * (c.grid.x_max - c.grid.x_min);
    const double x_lo = c.grid.x_min - pad, x_hi = c.grid.x_max + pad;
    const Ensemble e = integrate_ensemble(c, std::max(c.check_traj, 100), x_lo, x_hi);
    const double span = c.grid.t_max - c.grid.t_min;
    std::vector<double> times;
    for (double q : {0.25, 0.5, 0.75}) {
        // Snap to the nearest output time so every path has a sample there.
        const double t = c.grid.t_min + q * span;
        times.push_back(*std::min_element(e.times.begin(), e.times.end(), [t](double a, double b) {
            return std::abs(a - t) < std::abs(b - t);
        }));
    }
    out.push_back(density_match(e.wf, e.paths, times, x_lo, x_hi));

    if (c.spec.regime != Regime::Paraxial) {
        const BoostFrame f(c.boost_v != 0.0 ? c.boost_v : 0.125);
        const Wavefunction lab(c.spec, quad_options(c));
        const int n = c.spec.regime == Regime::General ? 200 : 2000;
        const auto pts = random_points(grid, n, c.seed);
        out.push_back(covariance_check(lab, f, pts, c.spec.regime == Regime::General ? 1e-6 : 1e-10));
    }

    out.push_back(null_metric_grid(field, grid));
    out.push_back(null_metric_ensemble(e.wf, e.paths));

    if (c.spec.regime == Regime::Paraxial || is_optical(c.spec, c.optical_ratio))
        out.push_back(positivity_check(e.wf, grid));
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bohmian photon trajectories from weak values"};
    app.require_subcommand(1);
    std::string config_path, preset_name, out_path;
    std::vector<std::string> sets;
    bool require_optical = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--preset", preset_name, "fig2a|fig2b|fig3|fig4|fig5|fig6");
        sub->add_option("--set", sets, "extra key=value override, applied last");
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_flag("--require-optical", require_optical, "reject non-optical specs");
    };
    for (const char* name : {"field", "traj", "check", "boost-frame", "metric"}) add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();

    RunConfig cfg;
    try {
        if (!preset_name.empty()) {
            auto p = preset(preset_name);
            if (!p) throw ConfigError("unknown preset '" + preset_name + "'", "preset");
            cfg = *p;
        }
        if (!config_path.empty()) {
            std::ifstream f(config_path, std::ios::binary);
            if (!f) throw ConfigError("cannot read config file " + config_path, "config");
            std::stringstream ss;
            ss << f.rdbuf();
            cfg = apply_config(ss.str(), cfg);
        }
        std::string extra;
        for (const auto& s : sets) extra += s + "\n";
        if (!extra.empty()) cfg = apply_config(extra, cfg);
        if (!is_optical(cfg.spec, cfg.optical_ratio)) {
            if (require_optical)
                throw ConfigError("spec is not optical (k0 < " + format_double(cfg.optical_ratio) + " sigma)",
                                  "optical_ratio");
            err << "warning: spec is not optical; densities may be negative in every frame\n";
        }
        observer_frame(cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        std::string text;
        std::vector<DiagnosticReport> reports;
        int code = kOk;
        if (command == "field") {
            text = field_csv(cfg);
        } else if (command == "traj") {
            text = traj_csv(cfg);
        } else if (command == "metric") {
            text = metric_csv(cfg);
        } else if (command == "boost-frame") {
            text = boost_frame_text(cfg);
        } else {
            reports = run_checks(cfg);
            for (const auto& r : reports) {
                text += serialize_report(r);
                if (!r.pass) code = kDiagnosticFailure;
            }
            text += std::string("overall=") + (code == kOk ? "pass" : "fail") + "\n";
        }
        if (out_path.empty()) {
            out << text;
        } else {
            write_text(out_path, text);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            write_manifest(out_path, command, cfg, secs, reports);
        }
        return code;
    } catch (const NonOpticalSpec& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}

}  // namespace bohm::cli
