#include "bohm/config.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "format.hpp"

namespace bohm {
namespace {

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view value, int line)
{
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out))
        throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) +
                              "' expects a finite number, got '" + std::string(value) + "'",
                          std::string(key), line);
    return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view value, int line)
{
    Int out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) +
                              "' expects an integer, got '" + std::string(value) + "'",
                          std::string(key), line);
    return out;
}

void domain(bool ok, std::string_view key, const std::string& msg)
{
    if (!ok) throw ConfigError(std::string(key) + ": " + msg, std::string(key));
}

void check(const RunConfig& c)
{
    for (const auto& v : validate_spec(c.spec, c.optical_ratio).violations)
        throw ConfigError(v.key + ": " + v.message, v.key);
    for (const auto& v : validate_grid(c.grid))
        throw ConfigError(v.key + ": " + v.message, v.key);
    domain(std::abs(c.boost_v) < 1.0, "boost_v", "must satisfy |boost_v| < 1");
    domain(c.n_traj >= 1, "n_traj", "must be at least 1");
    domain(c.abs_tol > 0.0, "abs_tol", "must be positive");
    domain(c.rel_tol >= 0.0, "rel_tol", "must be non-negative");
    domain(c.quad_nodes >= 2 && c.quad_nodes <= 200, "quad_nodes", "must lie in [2, 200]");
    domain(c.quad_tol > 0.0, "quad_tol", "must be positive");
    domain(c.optical_ratio > 0.0, "optical_ratio", "must be positive");
    domain(c.fd_step > 0.0, "fd_step", "must be positive");
    domain(c.check_traj >= 1, "check_traj", "must be at least 1");
}

}  // namespace

RunConfig apply_config(std::string_view text, RunConfig c)
{
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value", "", line_no);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const int n = line_no;
        auto num = [&] { return to_double(key, value, n); };

        if (key == "alpha") c.spec.alpha = num();
        else if (key == "k0") c.spec.k0R = c.spec.k0L = num();
        else if (key == "k0R") c.spec.k0R = num();
        else if (key == "k0L") c.spec.k0L = num();
        else if (key == "sigma") c.spec.sigmaR = c.spec.sigmaL = num();
        else if (key == "sigmaR") c.spec.sigmaR = num();
        else if (key == "sigmaL") c.spec.sigmaL = num();
        else if (key == "kz") c.spec.kz = num();
        else if (key == "regime") {
            auto r = parse_regime(value);
            if (!r)
                throw ConfigError("line " + std::to_string(n) + ": regime must be headon|general|paraxial",
                                  "regime", n);
            c.spec.regime = *r;
        }
        else if (key == "t_min") c.grid.t_min = num();
        else if (key == "t_max") c.grid.t_max = num();
        else if (key == "x_min") c.grid.x_min = num();
        else if (key == "x_max") c.grid.x_max = num();
        else if (key == "nt") c.grid.nt = to_int<int>(key, value, n);
        else if (key == "nx") c.grid.nx = to_int<int>(key, value, n);
        else if (key == "boost_v") c.boost_v = num();
        else if (key == "n_traj") c.n_traj = to_int<int>(key, value, n);
        else if (key == "seed") c.seed = to_int<std::uint64_t>(key, value, n);
        else if (key == "abs_tol") c.abs_tol = num();
        else if (key == "rel_tol") c.rel_tol = num();
        else if (key == "quad_nodes") c.quad_nodes = to_int<int>(key, value, n);
        else if (key == "quad_tol") c.quad_tol = num();
        else if (key == "optical_ratio") c.optical_ratio = num();
        else if (key == "fd_step") c.fd_step = num();
        else if (key == "check_traj") c.check_traj = to_int<int>(key, value, n);
        else
            throw ConfigError("line " + std::to_string(n) + ": unknown key '" + std::string(key) + "'",
                              std::string(key), n);
    }
    check(c);
    return c;
}

RunConfig parse_config(std::string_view text)
{
    return apply_config(text, RunConfig{});
}

std::string serialize_config(const RunConfig& c)
{
    std::ostringstream out;
    auto kv = [&](std::string_view k, double v) { out << k << '=' << format_double(v) << '\n'; };
    kv("alpha", c.spec.alpha);
    kv("k0R", c.spec.k0R);
    kv("k0L", c.spec.k0L);
    kv("sigmaR", c.spec.sigmaR);
    kv("sigmaL", c.spec.sigmaL);
    kv("kz", c.spec.kz);
    out << "regime=" << to_string(c.spec.regime) << '\n';
    kv("t_min", c.grid.t_min);
    kv("t_max", c.grid.t_max);
    kv("x_min", c.grid.x_min);
    kv("x_max", c.grid.x_max);
    out << "nt=" << c.grid.nt << '\n';
    out << "nx=" << c.grid.nx << '\n';
    kv("boost_v", c.boost_v);
    out << "n_traj=" << c.n_traj << '\n';
    out << "seed=" << c.seed << '\n';
    kv("abs_tol", c.abs_tol);
    kv("rel_tol", c.rel_tol);
    out << "quad_nodes=" << c.quad_nodes << '\n';
    kv("quad_tol", c.quad_tol);
    kv("optical_ratio", c.optical_ratio);
    kv("fd_step", c.fd_step);
    out << "check_traj=" << c.check_traj << '\n';
    return out.str();
}

}  // namespace bohm
