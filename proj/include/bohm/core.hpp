#pragma once

// Domain types shared by every module. Units: hbar = c = 1, lengths and times
// measured in units of 1/sigma_ref (sigma_ref = sigmaR).

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bohm {

using cplx = std::complex<double>;

/// |rho| at or below this value leaves the velocity undefined.
inline constexpr double kRhoFloor = 1e-12;
/// Below this density the trajectory integrator caps its step.
inline constexpr double kRhoNode = 1e-9;
inline constexpr double kDefaultOpticalRatio = 5.0;

// ---------------------------------------------------------------- errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedAtNode : public Error {
public:
    using Error::Error;
};

class QuadratureNotConverged : public Error {
public:
    QuadratureNotConverged(const std::string& what, double change)
        : Error(what), change_(change) {}
    double change() const noexcept { return change_; }

private:
    double change_;
};

class NonOpticalSpec : public Error {
public:
    using Error::Error;
};

class NegativeDensityInWindow : public Error {
public:
    using Error::Error;
};

class InsufficientTrajectories : public Error {
public:
    using Error::Error;
};

/// Raised by the config parser. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key, int line = 0)
        : Error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

// ---------------------------------------------------------------- types

enum class Regime { HeadOn, General, Paraxial };

std::string_view to_string(Regime r);
std::optional<Regime> parse_regime(std::string_view s);

/// Superposition of a right-moving and a left-moving Gaussian wavepacket.
struct WavepacketSpec {
    double alpha = 0.5;   // weight of the right mover, 0 <= alpha <= 1
    double k0R = 15.0;    // centre wavenumber of the right mover (> 0)
    double k0L = 15.0;    // centre wavenumber of the left mover (> 0, packet sits at -k0L)
    double sigmaR = 1.0;
    double sigmaL = 1.0;
    double kz = 0.0;      // transverse wavenumber, acts as a mass
    Regime regime = Regime::HeadOn;

    bool operator==(const WavepacketSpec&) const = default;

    bool symmetric() const { return k0R == k0L && sigmaR == sigmaL; }
    /// Geometric-mean wavenumber; invariant under boosts along x.
    double k_ref() const { return std::sqrt(k0R * k0L); }
};

struct SpacetimePoint {
    double t = 0.0;
    double x = 0.0;
    bool operator==(const SpacetimePoint&) const = default;
};

/// Pure boost along x with velocity v, |v| < 1.
class BoostFrame {
public:
    BoostFrame() = default;
    explicit BoostFrame(double v);

    double v() const { return v_; }
    double gamma() const { return gamma_; }
    bool is_identity() const { return v_ == 0.0; }
    BoostFrame inverse() const { return BoostFrame(-v_); }

    bool operator==(const BoostFrame&) const = default;

private:
    double v_ = 0.0;
    double gamma_ = 1.0;
};

/// Rectangular (t, x) lattice, endpoints included.
struct GridSpec {
    double t_min = -4.0;
    double t_max = 4.0;
    double x_min = -6.0;
    double x_max = 6.0;
    int nt = 201;
    int nx = 601;

    bool operator==(const GridSpec&) const = default;

    double dt() const { return (t_max - t_min) / (nt - 1); }
    double dx() const { return (x_max - x_min) / (nx - 1); }
    double t(int i) const { return i == nt - 1 ? t_max : t_min + i * dt(); }
    double x(int j) const { return j == nx - 1 ? x_max : x_min + j * dx(); }
    std::vector<double> times() const;
    /// Same rectangle with at most max_nt x max_nx nodes.
    GridSpec thinned(int max_nt, int max_nx) const;
};

/// Velocity that may be undefined (density node) or divergent (pole of the
/// velocity-addition rule, carrying the sign of its one-sided limit).
class Velocity {
public:
    static Velocity finite(double v) { return Velocity(Kind::Finite, v, 0); }
    static Velocity undefined() { return Velocity(Kind::Undefined, std::nan(""), 0); }
    static Velocity divergent(int sign) { return Velocity(Kind::Divergent, std::nan(""), sign < 0 ? -1 : 1); }

    bool defined() const { return kind_ == Kind::Finite; }
    bool divergent() const { return kind_ == Kind::Divergent; }
    /// Throws UndefinedAtNode when not finite.
    double value() const;
    double value_or_nan() const { return value_; }
    int divergence_sign() const { return sign_; }

private:
    enum class Kind { Finite, Undefined, Divergent };
    Velocity(Kind k, double v, int s) : kind_(k), value_(v), sign_(s) {}
    Kind kind_;
    double value_;
    int sign_;
};

/// Klein-Gordon current two-vector (j, rho), normalised by 2 k_ref.
struct Current {
    double j = 0.0;
    double rho = 0.0;
};

struct FieldSample {
    SpacetimePoint point;
    cplx psi;
    cplx dpsi_dx;
    cplx dpsi_dt;
    double j = 0.0;
    double rho = 0.0;
    Velocity V = Velocity::undefined();
};

// ---------------------------------------------------------------- validation

struct Violation {
    std::string key;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool optical = false;
    bool valid() const { return violations.empty(); }
};

bool is_optical(const WavepacketSpec& spec, double ratio = kDefaultOpticalRatio);
ValidationReport validate_spec(const WavepacketSpec& spec, double optical_ratio = kDefaultOpticalRatio);
std::vector<Violation> validate_grid(const GridSpec& grid);

}  // namespace bohm
