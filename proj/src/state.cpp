#include "kdi/state.hpp"

#include <algorithm>
#include <cmath>

#include "kdi/errors.hpp"
#include "kdi/parallel.hpp"

namespace kdi {

double LadderWavefunction::dkbar() const {
    if (kbar.size() < 2) return 1.0;
    return (kbar.back() - kbar.front()) / static_cast<double>(kbar.size() - 1);
}

double LadderWavefunction::norm() const {
    const double dk = dkbar();
    double total = 0.0;
    for (int n = -ladder_max; n <= ladder_max; ++n) {
        for (std::size_t k = 0; k < kbar.size(); ++k) {
            total += column_weight(k) * std::norm(at(n, k));
        }
    }
    return total * dk;
}

double LadderWavefunction::edge_population() const {
    const double dk = dkbar();
    double total = 0.0;
    for (std::size_t k = 0; k < kbar.size(); ++k) {
        total += column_weight(k) *
                 (std::norm(at(-ladder_max, k)) + std::norm(at(ladder_max, k)));
    }
    return total * dk;
}

void LadderWavefunction::require_frame(Frame expected, const char* where) const {
    if (frame != expected) {
        throw FrameMismatch(std::string(where) + ": state is in the " +
                            (frame == Frame::Lab ? "lab" : "rotating") +
                            " frame");
    }
}

LadderWavefunction init_gaussian(const GaussianInit& cfg, const GridSpec& grid,
                                 const ScaledUnits& units) {
    if (!(cfg.width_w > 0.0)) {
        throw WidthNonPositive("wavepacket width w must be > 0");
    }
    if (grid.kbar_points < 2) {
        throw ConfigError("numerics.kbar_points must be >= 2");
    }
    if (grid.ladder_max < 1) {
        throw ConfigError("numerics.ladder_max must be >= 1");
    }

    const double w = units.to_internal_length(cfg.width_w);  // w k_L
    const double sigma_k = 1.0 / (2.0 * w);                  // momentum std, units of k_L
    if (sigma_k >= cfg.max_kbar_std_fraction) {
        throw GridTooNarrow("wavepacket momentum spread 1/(2w) exceeds " +
                            std::to_string(cfg.max_kbar_std_fraction) + " k_L");
    }

    const double half_span = grid.span_sigmas * sigma_k;
    // Gaussian tail mass beyond the grid edge must stay below 1e-6.
    const double clipped = std::erfc(grid.span_sigmas / std::sqrt(2.0));
    if (clipped > 1e-6) {
        throw GridTooNarrow("kbar grid spans only " + std::to_string(grid.span_sigmas) +
                            " sigma; clipped tail mass above 1e-6");
    }
    if (half_span >= 1.0) {
        throw GridTooNarrow("kbar grid would leave the first Brillouin zone");
    }

    LadderWavefunction state;
    state.units = units;
    state.ladder_max = grid.ladder_max;
    state.kbar.resize(grid.kbar_points);
    const double dk = 2.0 * half_span / static_cast<double>(grid.kbar_points - 1);
    for (int k = 0; k < grid.kbar_points; ++k) {
        state.kbar[k] = -half_span + dk * k;
    }
    state.amp.assign(static_cast<std::size_t>(state.orders()) * state.kbar.size(),
                     cdouble{0.0, 0.0});

    // psi_0(kbar) = exp(-kbar^2 w^2) 2^(1/4) sqrt(w) / pi^(1/4)
    const double amp0 = std::pow(2.0, 0.25) * std::sqrt(w) * std::pow(pi, -0.25);
    for (std::size_t k = 0; k < state.kbar.size(); ++k) {
        const double kb = state.kbar[k];
        state.at(0, k) = amp0 * std::exp(-kb * kb * w * w);
    }

    state.momentum_offset = units.to_internal_momentum(cfg.mean_momentum);
    return state;
}

Observables observables(const LadderWavefunction& state) {
    Observables obs;
    obs.ladder_populations.assign(state.orders(), 0.0);
    const double dk = state.dkbar();
    double mean_p = 0.0;
    for (int n = -state.ladder_max; n <= state.ladder_max; ++n) {
        double pop = 0.0;
        double p_weighted = 0.0;
        for (std::size_t k = 0; k < state.kbar.size(); ++k) {
            const double d = state.column_weight(k) * std::norm(state.at(n, k));
            pop += d;
            p_weighted += d * (state.kbar[k] + 2.0 * n + state.momentum_offset);
        }
        obs.ladder_populations[n + state.ladder_max] = pop * dk;
        mean_p += p_weighted * dk;
    }
    obs.norm = 0.0;
    for (double p : obs.ladder_populations) obs.norm += p;
    obs.mean_momentum = state.units.from_internal_momentum(mean_p);
    return obs;
}

double SpatialDensity::total_mass() const {
    if (positions.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
        total += 0.5 * (density[i] + density[i + 1]) * (positions[i + 1] - positions[i]);
    }
    return total;
}

double SpatialDensity::centroid() const {
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
        const double dz = positions[i + 1] - positions[i];
        mass += 0.5 * (density[i] + density[i + 1]) * dz;
        moment += 0.5 * (density[i] * positions[i] + density[i + 1] * positions[i + 1]) * dz;
    }
    if (mass <= 0.0) throw NoPeaksFound("density has no mass");
    return moment / mass;
}

SpatialDensity reconstruct_spatial(const LadderWavefunction& state,
                                   double z_min, double z_max, int num_points) {
    state.require_frame(Frame::Lab, "reconstruct_spatial");
    if (num_points < 2 || !(z_max > z_min)) {
        throw WindowEmpty("spatial window is empty");
    }

    SpatialDensity out;
    out.z_min = z_min;
    out.z_max = z_max;
    out.positions.resize(num_points);
    out.density.resize(num_points);

    const double dz = (z_max - z_min) / static_cast<double>(num_points - 1);
    const double dk = state.dkbar();
    // the discrete kbar grid repeats the pattern with period 2 pi / dkbar
    const double span = state.units.to_internal_length(z_max - z_min);
    if (span >= 2.0 * pi / dk) {
        throw GridTooNarrow(
            "spatial window exceeds the non-repeating span 2 pi / dkbar; "
            "raise kbar_points or shrink the window");
    }
    const std::size_t cols = state.columns();
    const int N = state.ladder_max;
    const double norm_factor = dk / std::sqrt(2.0 * pi);

    parallel_for(static_cast<std::size_t>(num_points), [&](std::size_t i) {
        const double z_si = z_min + dz * static_cast<double>(i);
        const double z = state.units.to_internal_length(z_si);
        // e^{i kbar_j z} by recurrence over the uniform grid
        const cdouble step = std::polar(1.0, dk * z);
        cdouble col_phase = std::polar(1.0, (state.kbar[0] + state.momentum_offset) * z);
        std::vector<cdouble> band(2 * N + 1);
        for (int n = -N; n <= N; ++n) {
            band[n + N] = std::polar(1.0, 2.0 * n * z);
        }
        cdouble psi{0.0, 0.0};
        for (std::size_t k = 0; k < cols; ++k) {
            cdouble column_sum{0.0, 0.0};
            for (int n = -N; n <= N; ++n) {
                column_sum += state.at(n, k) * band[n + N];
            }
            psi += column_sum * col_phase;
            col_phase *= step;
        }
        psi *= norm_factor;
        out.positions[i] = z_si;
        // 1/m: |psi(z)|^2 with z in internal units carries k_L from the measure
        out.density[i] = std::norm(psi) / state.units.length_unit;
    });

    return out;
}

namespace {

struct Region {
    std::size_t begin;  // inclusive
    std::size_t end;    // inclusive
};

}  // namespace

std::vector<Peak> peak_analysis(const SpatialDensity& density,
                                const PeakOptions& options) {
    const auto& z = density.positions;
    if (density.density.empty()) throw NoPeaksFound("empty density");

    std::vector<double> d = density.density;
    if (options.smooth_sigma > 0.0 && z.size() >= 2) {
        const double dz = z[1] - z[0];
        const int half = static_cast<int>(std::ceil(4.0 * options.smooth_sigma / dz));
        std::vector<double> kernel(2 * half + 1);
        double kernel_sum = 0.0;
        for (int j = -half; j <= half; ++j) {
            kernel[j + half] =
                std::exp(-0.5 * std::pow(j * dz / options.smooth_sigma, 2));
            kernel_sum += kernel[j + half];
        }
        for (double& kv : kernel) kv /= kernel_sum;
        std::vector<double> smoothed(d.size(), 0.0);
        const int n = static_cast<int>(d.size());
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = -half; j <= half; ++j) {
                const int src = std::clamp(i + j, 0, n - 1);
                acc += kernel[j + half] * d[src];
            }
            smoothed[i] = acc;
        }
        d = std::move(smoothed);
    }

    const double dmax = *std::max_element(d.begin(), d.end());
    if (!(dmax > 0.0)) throw NoPeaksFound("density is identically zero");
    const double threshold = options.threshold_fraction * dmax;

    // 1. contiguous runs above threshold
    std::vector<Region> regions;
    std::size_t i = 0;
    while (i < d.size()) {
        if (d[i] > threshold) {
            std::size_t j = i;
            while (j + 1 < d.size() && d[j + 1] > threshold) ++j;
            regions.push_back({i, j});
            i = j + 1;
        } else {
            ++i;
        }
    }
    if (regions.empty()) throw NoPeaksFound("no density above threshold");

    // 2. split runs at local minima well below both neighbouring maxima
    std::vector<Region> split;
    for (const Region& r : regions) {
        std::size_t seg_start = r.begin;
        std::size_t left_max = r.begin;
        std::size_t cursor = r.begin + 1;
        while (cursor <= r.end) {
            if (d[cursor] > d[left_max]) left_max = cursor;
            // candidate valley: local minimum strictly inside the run
            if (cursor + 1 <= r.end && d[cursor] <= d[cursor - 1] &&
                d[cursor] <= d[cursor + 1]) {
                // find the next maximum after the valley
                std::size_t right_max = cursor;
                for (std::size_t j = cursor + 1; j <= r.end; ++j) {
                    if (d[j] > d[right_max]) right_max = j;
                    // stop early once we fall below the valley again
                }
                const double lower_peak = std::min(d[left_max], d[right_max]);
                if (d[cursor] < options.split_ratio * lower_peak &&
                    right_max > cursor) {
                    split.push_back({seg_start, cursor});
                    seg_start = cursor + 1;
                    left_max = seg_start;
                }
            }
            ++cursor;
        }
        split.push_back({seg_start, r.end});
    }

    // 3. provisional centroids, then chain-merge runs whose neighbours are
    // closer than min_separation (compared constituent to constituent, so a
    // long fringe train merges without dragging in a distinct beam)
    auto region_centroid = [&](const Region& r) {
        double mass = 0.0, moment = 0.0;
        for (std::size_t k = r.begin; k <= r.end; ++k) {
            mass += d[k];
            moment += d[k] * z[k];
        }
        return mass > 0.0 ? moment / mass : z[r.begin];
    };

    std::vector<Region> merged;
    double last_constituent = 0.0;
    for (const Region& r : split) {
        const double center = region_centroid(r);
        if (!merged.empty() && center - last_constituent < options.min_separation) {
            merged.back().end = r.end;
        } else {
            merged.push_back(r);
        }
        last_constituent = center;
    }

    // 4. watershed mass boundaries: everything between two regions belongs to
    // the side of the inter-region density minimum.
    std::vector<std::size_t> bounds;  // group boundaries, size merged.size()+1
    bounds.push_back(0);
    for (std::size_t g = 0; g + 1 < merged.size(); ++g) {
        std::size_t lo = merged[g].end;
        std::size_t hi = merged[g + 1].begin;
        std::size_t valley = lo;
        for (std::size_t k = lo; k <= hi; ++k) {
            if (d[k] < d[valley]) valley = k;
        }
        bounds.push_back(valley);
    }
    bounds.push_back(d.size() - 1);

    const double total = density.total_mass();
    std::vector<Peak> peaks;
    peaks.reserve(merged.size());
    for (std::size_t g = 0; g < merged.size(); ++g) {
        const std::size_t b0 = bounds[g];
        const std::size_t b1 = bounds[g + 1];
        double mass = 0.0, moment = 0.0;
        for (std::size_t k = b0; k + 1 <= b1; ++k) {
            const double dz = z[k + 1] - z[k];
            mass += 0.5 * (d[k] + d[k + 1]) * dz;
            moment += 0.5 * (d[k] * z[k] + d[k + 1] * z[k + 1]) * dz;
        }
        if (mass <= 0.0) continue;
        const double center = moment / mass;
        double second = 0.0;
        for (std::size_t k = b0; k + 1 <= b1; ++k) {
            const double dz = z[k + 1] - z[k];
            const double a = (z[k] - center);
            const double b = (z[k + 1] - center);
            second += 0.5 * (d[k] * a * a + d[k + 1] * b * b) * dz;
        }
        const double fraction = mass / total;
        if (fraction < options.min_mass) continue;
        peaks.push_back({center, fraction, std::sqrt(second / mass)});
    }
    if (peaks.empty()) throw NoPeaksFound("no density above threshold");
    return peaks;
}

}  // namespace kdi
