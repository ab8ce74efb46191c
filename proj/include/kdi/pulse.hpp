#pragma once

#include <array>
#include <vector>

#include "kdi/state.hpp"

namespace kdi {

struct StepControl {
    double max_step = 0.0;               // s; 0 = use the automatic bound only
    double norm_tolerance = 1e-8;        // allowed norm drift per pulse
    double truncation_tolerance = 1e-6;  // allowed edge-order population
};

// One bichromatic pulse. delta_omega = omega_2 - omega_1; -omega_rec makes
// the n=0 -> n=+1 two-photon process resonant, +omega_rec the n=0 -> n=-1
// process. The field is rectangular: constant couplings for `duration`.
struct PulseSpec {
    double g1 = 0.0;           // s^(-1/2)
    double g2 = 0.0;           // s^(-1/2)
    double delta_omega = 0.0;  // rad/s
    double delta_theta = 0.0;  // rad
    double duration = 0.0;     // s
    int ladder_max = 5;
    StepControl step_control{};

    double g1g2() const { return g1 * g2; }
    double light_shift() const { return g1 * g1 + g2 * g2; }

    void validate() const;  // duration >= 0, ladder_max >= 2

    // informational resonance bookkeeping: |delta_omega| within `tol`
    // (relative) of a nonzero integer multiple of omega_rec
    bool near_resonant_multiple(double omega_rec, double tol = 0.1) const;
};

// Reduced dynamics of one resonant order pair.
struct TwoLevelModel {
    double coupling;  // rad/s, Omega = g1 g2
    double detuning;  // rad/s, delta(kbar) = 2 hbar kbar k_L / m

    bool weak_coupling_ok(double omega_rec) const {
        return coupling < 0.25 * omega_rec;
    }
};

using Mat2 = std::array<cdouble, 4>;  // row-major 2x2

// Exact propagator exp(-i H t) for H = [[0, Omega], [Omega, delta]].
Mat2 two_level_evolution(const TwoLevelModel& model, double t);

// Transfer probability Omega^2/(Omega^2+(delta/2)^2) sin^2(t sqrt(...)).
double two_level_transfer(const TwoLevelModel& model, double t);

enum class FrameDirection { ToRotating, ToLab };

// Diagonal map between the lab frame and the rotating frame of `pulse`,
// evaluated at the state's current time stamp. Phase per (n, kbar):
//   psi_n = exp(i beta_n) psibar_n,
//   beta_n(t) = (n dOmega - (g1^2+g2^2) - kbar^2/2) t - n dTheta.
// This is the transformation that removes the explicit time dependence of
// the bichromatic coupling and leaves the ladder equation
//   i d/dt psibar_n = n (n w_rec + 2 kbar + dOmega) psibar_n
//                     + g1 g2 (psibar_{n-1} + psibar_{n+1}).
LadderWavefunction rotating_frame_map(LadderWavefunction state,
                                      const PulseSpec& pulse,
                                      FrameDirection direction);

// Integrate the rotating-frame ladder ODE for one quasimomentum column with
// classical fixed-step RK4. All arguments in internal units; psi holds
// 2*ladder_max+1 amplitudes (order -N first).
void evolve_ladder_column(std::vector<cdouble>& psi, double kbar,
                          double g_product, double delta_omega,
                          double duration, double max_step = 0.0);

// Full pulse: lab -> rotating at entry time, RK4 per column, rotating -> lab
// at exit time. Enforces the edge-population and norm-drift guards.
LadderWavefunction evolve_pulse(LadderWavefunction state, const PulseSpec& pulse);

enum class SplitterSign { Minus, Plus };

// Idealized instantaneous splitter. Minus acts on the (n=0, n=+1) pair:
//   c_0  -> (c_0 - c_1)/sqrt(2),   c_1  -> (c_0 + c_1)/sqrt(2);
// Plus is the mirror image on (n=0, n=-1). Population outside the coupled
// pair must be below 1e-3.
LadderWavefunction ideal_splitter(LadderWavefunction state, SplitterSign sign);

// Smallest ladder truncation for which all order populations are converged
// to 1e-8 at quasimomentum kbar (SI, 1/m). Doubles N to find a reference,
// then scans upward for the smallest adequate N. Fails above N = 64.
int truncation_convergence(const PulseSpec& pulse, double kbar,
                           const ScaledUnits& units);

}  // namespace kdi
