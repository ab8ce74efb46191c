#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "kdi/units.hpp"

namespace kdi {

using cdouble = std::complex<double>;

enum class Frame { Lab, Rotating };

// Pulse parameters behind the currently applied rotating-frame map, stored so
// the inverse transformation can be checked against them. Internal units.
struct RotatingContext {
    double delta_omega;
    double delta_theta;
    double light_shift;  // g1^2 + g2^2

    bool operator==(const RotatingContext&) const = default;
};

struct GridSpec {
    int kbar_points = 512;
    int ladder_max = 5;       // orders n = -N..N
    double span_sigmas = 6.0;  // grid half-width in units of the momentum std
};

// Electron wavefunction on the (ladder order n, quasimomentum kbar) grid.
// Amplitudes are stored row-major: amp[(n + N) * kbar.size() + k].
// All stored quantities are in internal units (hbar = m = k_L = 1); the
// attached ScaledUnits converts at the interface.
struct LadderWavefunction {
    ScaledUnits units{};
    int ladder_max = 0;
    std::vector<double> kbar;   // uniform grid, strictly inside (-1, 1)
    std::vector<cdouble> amp;
    double momentum_offset = 0.0;  // continuous rigid offset (units of hbar k_L)
    double time_stamp = 0.0;       // internal time
    Frame frame = Frame::Lab;
    std::optional<RotatingContext> rotating;

    int orders() const { return 2 * ladder_max + 1; }
    std::size_t columns() const { return kbar.size(); }
    double dkbar() const;

    cdouble& at(int n, std::size_t k) {
        return amp[static_cast<std::size_t>(n + ladder_max) * kbar.size() + k];
    }
    const cdouble& at(int n, std::size_t k) const {
        return amp[static_cast<std::size_t>(n + ladder_max) * kbar.size() + k];
    }

    // trapezoid-rule weight of column k
    double column_weight(std::size_t k) const {
        return (k == 0 || k + 1 == kbar.size()) ? 0.5 : 1.0;
    }

    double norm() const;             // sum_n integral |psi_n|^2 dkbar
    double edge_population() const;  // population of orders n = +-N
    void require_frame(Frame expected, const char* where) const;
};

struct GaussianInit {
    double width_w = 3.0e-6;     // m, spatial width (position-space std)
    double mean_momentum = 0.0;  // kg m/s, carried by momentum_offset
    // guard: momentum std 1/(2w) must stay below this fraction of k_L
    double max_kbar_std_fraction = 0.25;
};

// psi_0(kbar) = exp(-kbar^2 w^2) 2^(1/4) w^(1/2) pi^(-1/4), other orders empty.
LadderWavefunction init_gaussian(const GaussianInit& cfg, const GridSpec& grid,
                                 const ScaledUnits& units);

struct Observables {
    double norm;
    double mean_momentum;                     // SI, kg m/s
    std::vector<double> ladder_populations;  // index i -> order i - N
};

Observables observables(const LadderWavefunction& state);

struct SpatialDensity {
    std::vector<double> positions;  // m
    std::vector<double> density;    // 1/m
    double z_min = 0.0;             // m
    double z_max = 0.0;             // m

    double total_mass() const;  // trapezoid integral of density
    double centroid() const;
};

// |psi(z)|^2 from the direct double sum over (n, kbar); lab frame only.
SpatialDensity reconstruct_spatial(const LadderWavefunction& state,
                                   double z_min, double z_max, int num_points);

struct Peak {
    double center;  // m
    double mass;    // fraction of the total mass in the window
    double width;   // m, rms
};

struct PeakOptions {
    double threshold_fraction = 1e-4;  // relative to the density maximum
    // a local minimum below split_ratio * min(adjacent maxima) separates peaks
    double split_ratio = 0.5;
    double min_separation = 0.0;  // m; peaks closer than this are merged
    double min_mass = 0.0;        // fraction; fainter peaks are discarded
    // Gaussian pre-smoothing of the density; washes out sub-packet fringes
    // while preserving mass. 0 = off.
    double smooth_sigma = 0.0;  // m
};

// Segment the density into peaks and integrate each watershed region.
std::vector<Peak> peak_analysis(const SpatialDensity& density,
                                const PeakOptions& options = {});

}  // namespace kdi
