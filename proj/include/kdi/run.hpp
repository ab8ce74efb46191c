#pragma once

#include <string>
#include <vector>

#include "kdi/config.hpp"
#include "kdi/interferometer.hpp"

namespace kdi {

// Everything derived from a RunConfig that the solver needs.
struct SimulationSetup {
    ScaledUnits units{};
    GridSpec grid{};
    GaussianInit init{};
    RamseyBordeConfig rb{};
    double omega_rec = 0.0;       // rad/s
    double g1g2 = 0.0;            // rad/s
    double pulse_duration = 0.0;  // s
    double window_min = 0.0;      // m
    double window_max = 0.0;      // m
};

SimulationSetup make_setup(const RunConfig& cfg);

struct RunResult {
    SimulationSetup setup{};
    SpatialDensity density{};
    std::vector<BeamPrediction> predictions{};
    std::vector<BeamReport> beams{};
    double norm_drift = 0.0;
    double delta_phi_prediction = 0.0;  // rad
};

// Full sequence simulation: initial Gaussian -> four-pulse sequence ->
// spatial density -> beam reports.
RunResult simulate(const RunConfig& cfg);

struct FringePoint {
    double param;
    double pop_I;
    double pop_V;
    double delta_phi;  // rad, idealized-model prediction at this parameter
    double model_I;    // (1/4) cos^2(delta_phi / 2)
    double model_V;    // (1/4) sin^2(delta_phi / 2)
};

enum class SweepParam { Acceleration, TPrime };

// Re-runs the full sequence at each sweep point and extracts the populations
// of the closed-geometry output beams I and V.
std::vector<FringePoint> beam_fringe(const RunConfig& cfg, SweepParam param,
                                     double from, double to, int points);

enum class SplitterScan { Duration, Detuning, Kbar };

struct SplitterPoint {
    double param;
    double p_numeric;    // ladder-ODE transfer probability
    double p_two_level;  // reduced two-level model
};

// Single-pulse transfer probability scans at quasimomentum kbar = 0 (or over
// kbar). from/to of 0,0 select a default range per scan type.
std::vector<SplitterPoint> splitter_scan(const RunConfig& cfg, SplitterScan scan,
                                         double from, double to, int points);

}  // namespace kdi
