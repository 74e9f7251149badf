#include "bohm/core.hpp"

#include <algorithm>

namespace bohm {

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::HeadOn: return "headon";
    case Regime::General: return "general";
    case Regime::Paraxial: return "paraxial";
    }
    return "?";
}

std::optional<Regime> parse_regime(std::string_view s)
{
    if (s == "headon") return Regime::HeadOn;
    if (s == "general") return Regime::General;
    if (s == "paraxial") return Regime::Paraxial;
    return std::nullopt;
}

BoostFrame::BoostFrame(double v) : v_(v)
{
    if (!(std::abs(v) < 1.0))
        throw std::domain_error("boost velocity must satisfy |v| < 1");
    gamma_ = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
}

double Velocity::value() const
{
    if (kind_ != Kind::Finite)
        throw UndefinedAtNode(kind_ == Kind::Divergent ? "velocity diverges" : "velocity undefined at density node");
    return value_;
}

std::vector<double> GridSpec::times() const
{
    std::vector<double> out(static_cast<std::size_t>(nt));
    for (int i = 0; i < nt; ++i) out[static_cast<std::size_t>(i)] = t(i);
    return out;
}

GridSpec GridSpec::thinned(int max_nt, int max_nx) const
{
    GridSpec g = *this;
    g.nt = std::min(nt, std::max(2, max_nt));
    g.nx = std::min(nx, std::max(2, max_nx));
    return g;
}

bool is_optical(const WavepacketSpec& spec, double ratio)
{
    return spec.k0R >= ratio * spec.sigmaR && spec.k0L >= ratio * spec.sigmaL;
}

ValidationReport validate_spec(const WavepacketSpec& spec, double optical_ratio)
{
    ValidationReport report;
    auto fail = [&](std::string key, std::string msg) {
        report.violations.push_back({std::move(key), std::move(msg)});
    };
    auto finite = [](double v) { return std::isfinite(v); };

    if (!finite(spec.alpha) || spec.alpha < 0.0 || spec.alpha > 1.0)
        fail("alpha", "alpha out of range [0, 1]");
    if (!finite(spec.k0R) || spec.k0R <= 0.0) fail("k0R", "k0R must be positive");
    if (!finite(spec.k0L) || spec.k0L <= 0.0) fail("k0L", "k0L must be positive");
    if (!finite(spec.sigmaR) || spec.sigmaR <= 0.0) fail("sigmaR", "sigmaR must be positive");
    if (!finite(spec.sigmaL) || spec.sigmaL <= 0.0) fail("sigmaL", "sigmaL must be positive");
    if (!finite(spec.kz) || spec.kz < 0.0) fail("kz", "kz must be non-negative");
    if (spec.regime == Regime::HeadOn && spec.kz != 0.0)
        fail("kz", "headon regime requires kz = 0");
    if (spec.regime == Regime::Paraxial && !(spec.kz > 0.0))
        fail("kz", "paraxial regime requires kz > 0");

    report.optical = report.valid() && is_optical(spec, optical_ratio);
    return report;
}

std::vector<Violation> validate_grid(const GridSpec& g)
{
    std::vector<Violation> out;
    if (!(g.t_max > g.t_min)) out.push_back({"t_max", "t_max must exceed t_min"});
    if (!(g.x_max > g.x_min)) out.push_back({"x_max", "x_max must exceed x_min"});
    if (g.nt < 2) out.push_back({"nt", "nt must be at least 2"});
    if (g.nx < 2) out.push_back({"nx", "nx must be at least 2"});
    return out;
}

}  // namespace bohm
