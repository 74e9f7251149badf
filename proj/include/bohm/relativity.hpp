#pragma once

// Lorentz boosts along x: points, velocities, currents, wavepacket parameters.

#include "bohm/core.hpp"

namespace bohm {

/// Wavepacket parameters as seen from a boosted frame. For the head-on
/// dispersion these describe the boosted state exactly; for kz > 0 they are
/// the Doppler-shifted centre/bandwidth values only.
struct BoostedSpec {
    WavepacketSpec spec;
    BoostFrame frame;
};

/// t' = gamma (t - v x), x' = gamma (x - v t).
SpacetimePoint boost_point(SpacetimePoint p, BoostFrame f);

/// (V - v) / (1 - v V). A vanishing denominator yields Velocity::divergent
/// with the sign of the limit taken from the side where 1 - v V > 0.
Velocity add_velocity(Velocity V, BoostFrame f);
double add_velocity(double V, double v);

/// j' = gamma (j - v rho), rho' = gamma (rho - v j).
Current boost_current(Current c, BoostFrame f);

/// Frame `second` as seen from frame `first`, i.e. the single boost that
/// equals applying `first` and then the relative boost.
BoostFrame compose(BoostFrame first, BoostFrame second);
/// Velocity of frame `to` measured in frame `from`.
BoostFrame relative(BoostFrame from, BoostFrame to);

/// Doppler factor applied to right-mover parameters: sqrt((1 - v) / (1 + v)).
double doppler_right(BoostFrame f);

BoostedSpec boost_spec(const WavepacketSpec& spec, BoostFrame f);

/// Boost that equalises the centre wavenumbers, v = (k0R - k0L) / (k0R + k0L).
/// Throws NonOpticalSpec when the spec fails the optics ratio test.
BoostFrame positivity_frame(const WavepacketSpec& spec, double optical_ratio = kDefaultOpticalRatio);

}  // namespace bohm
