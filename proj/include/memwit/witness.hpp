// witness.hpp: concurrence and the entanglement witness built on the entropic
// uncertainty bound: the witness succeeds while mu < 1.

#pragma once

#include <optional>
#include <string>

#include "memwit/dynamics.hpp"
#include "memwit/numerics.hpp"

namespace memwit {

// Concurrence below this counts as zero when looking for entanglement death.
inline constexpr double kConcurrenceZero = 1e-7;

// Samples that must stay at zero concurrence to confirm death.
inline constexpr std::size_t kDeathConfirmSamples = 10;

struct WitnessReport {
    std::optional<double> t_ew;           // first time mu reaches 1
    std::optional<double> c_ew_threshold; // concurrence at t_ew; C_EW = (threshold, 1]
    bool crossing_found = false;
    double mu_series_max = 0.0;
    std::string notes;

    bool operator==(const WitnessReport&) const = default;
};

// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy).
double concurrence(const CMatrix& rho);

// Closed form for states with only diagonal and anti-diagonal entries.
// Throws NotXState if any other entry exceeds 1e-10 in modulus.
double concurrence_x_state(const CMatrix& rho);

// Fills mu, lhs and concurrence on every sample of traj.
void observe(Trajectory& traj);

enum class CrossingRefinement {
    Interpolate, // monotone cubic interpolation of the sampled mu series
    Reintegrate, // re-run the bracketing interval at a tenth of its spacing
};

// First-crossing report using monotone cubic interpolation. Requires an observed
// trajectory that starts at t = 0; throws EmptyTrajectory when there are no samples.
WitnessReport witness_report(const Trajectory& traj);

// Same report with the crossing located by re-integrating the bracketing interval
// from its stored state under the given reservoirs.
WitnessReport witness_report(const Trajectory& traj, const ReservoirParams& r_a,
                             const ReservoirParams& r_b);

// First sampled time at which concurrence drops to zero and remains there for the
// next kDeathConfirmSamples samples; nullopt when that never happens.
std::optional<double> entanglement_death_time(const Trajectory& traj,
                                              double zero_tolerance = kConcurrenceZero);

} // namespace memwit
