#include "kdi/propagation.hpp"

#include <cmath>

#include "kdi/errors.hpp"

namespace kdi {

LadderWavefunction free_evolve(LadderWavefunction state, const FreeSegment& seg) {
    if (seg.duration < 0.0) throw ConfigError("free segment duration must be >= 0");
    state.require_frame(Frame::Lab, "free_evolve");
    if (seg.duration == 0.0) return state;

    const double t = state.units.to_internal_time(seg.duration);
    for (int n = -state.ladder_max; n <= state.ladder_max; ++n) {
        for (std::size_t k = 0; k < state.columns(); ++k) {
            const double p = state.kbar[k] + 2.0 * n + state.momentum_offset;
            state.at(n, k) *= std::polar(1.0, -0.5 * p * p * t);
        }
    }
    state.time_stamp += t;
    return state;
}

LadderWavefunction accelerated_evolve(LadderWavefunction state,
                                      const AcceleratedSegment& seg) {
    if (seg.duration < 0.0) throw ConfigError("accelerated segment duration must be >= 0");
    state.require_frame(Frame::Lab, "accelerated_evolve");
    if (seg.duration == 0.0) return state;

    const double t = state.units.to_internal_time(seg.duration);
    const double a = state.units.to_internal_acceleration(seg.acceleration);
    const double t2 = 0.5 * a * t * t;
    const double t3 = a * a * t * t * t / 6.0;
    for (int n = -state.ladder_max; n <= state.ladder_max; ++n) {
        for (std::size_t k = 0; k < state.columns(); ++k) {
            const double p = state.kbar[k] + 2.0 * n + state.momentum_offset;
            const double tau = 0.5 * p * p * t + p * t2 + t3;
            state.at(n, k) *= std::polar(1.0, -tau);
        }
    }
    state.momentum_offset += a * t;
    state.time_stamp += t;
    return state;
}

double tau_phase(double p, const AcceleratedSegment& seg) {
    const double m = PhysicalConstants::electron_mass;
    const double T = seg.duration;
    const double a = seg.acceleration;
    return (p * p * T / (2.0 * m) + 0.5 * p * a * T * T + m * a * a * T * T * T / 6.0) /
           PhysicalConstants::hbar;
}

}  // namespace kdi
