#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "kdi/propagation.hpp"
#include "kdi/pulse.hpp"

namespace kdi {

struct SequenceStep {
    std::variant<PulseSpec, FreeSegment, AcceleratedSegment> step;
};

using Sequence = std::vector<SequenceStep>;

// Four-pulse Ramsey-Borde geometry: a splitting pair detuned by -omega_rec,
// an accelerated window T', a recombining pair detuned by +omega_rec, and an
// optional final drift T''. T is the field-off gap inside each pair.
struct RamseyBordeConfig {
    double T = 12.0e-9;             // s
    double T_prime = 10.0e-9;       // s
    double T_doubleprime = 40.0e-9; // s
    double acceleration = 1.0e10;   // m/s^2
    double initial_velocity = 0.0;  // m/s, rigid offset of the whole pattern
    PulseSpec pulse;                // template; delta_omega set per pair
    double omega_rec = 0.0;         // rad/s
    double k_L = 0.0;               // 1/m

    void validate() const;
};

Sequence build_ramsey_borde(const RamseyBordeConfig& cfg);

// Applies the steps in order; enforces an accumulated norm drift < 4e-8.
LadderWavefunction run_sequence(LadderWavefunction state, const Sequence& seq);

// One classical branch of the splitting tree. kick_pattern holds the ladder
// order change at each of the four pulses.
struct ClassicalPath {
    std::array<int, 4> kick_pattern{};
    double final_position = 0.0;  // m, at the end of the sequence
    double final_momentum = 0.0;  // kg m/s
    cdouble amplitude_weight{};   // product of ideal splitter matrix elements
    std::string beam_label;       // "I".."VIII"
};

// Classical trajectories of all partial beams. Pulses act instantaneously on
// the resonant pair; positions use the average of the momentum before and
// after each pulse during its finite duration.
std::vector<ClassicalPath> enumerate_paths(const RamseyBordeConfig& cfg);

struct BeamPrediction {
    std::string label;
    double position = 0.0;  // m
    double momentum = 0.0;  // kg m/s
    int path_count = 0;
};

// Merge paths whose final momenta differ by < momentum_tol and positions by
// < position_tol into beams, ordered by position.
std::vector<BeamPrediction> merge_paths(const std::vector<ClassicalPath>& paths,
                                        double momentum_tol, double position_tol);

// Idealized-model closed-geometry phase prediction 2 w_rec T' - 2 a k_L T T'.
double phase_shift_prediction(const RamseyBordeConfig& cfg);

struct BeamReport {
    std::string label;  // roman label(s); "/"-joined when beams overlap
    double predicted_position = 0.0;  // m
    double measured_position = 0.0;   // m
    double population = 0.0;          // fraction
    double width = 0.0;               // m
};

// Match measured peaks against predicted beams. packet_width sets the peak
// merge scale and the matching tolerance.
std::vector<BeamReport> analyze_beams(const SpatialDensity& density,
                                      const std::vector<BeamPrediction>& beams,
                                      double packet_width);

// Populations of the named beam in `reports`; throws BeamUnresolved when the
// label is absent or shared with another beam.
double beam_population(const std::vector<BeamReport>& reports,
                       const std::string& label);

}  // namespace kdi
