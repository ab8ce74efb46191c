#include "kdi/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kdi/errors.hpp"

namespace kdi {

void RamseyBordeConfig::validate() const {
    if (T < 0.0) throw ConfigError("sequence.T_ns must be >= 0");
    if (T_prime < 0.0) throw ConfigError("sequence.T_prime_ns must be >= 0");
    if (T_doubleprime < 0.0) throw ConfigError("sequence.T_doubleprime_ns must be >= 0");
    if (!(omega_rec > 0.0) || !(k_L > 0.0)) {
        throw ConfigError("RamseyBordeConfig: omega_rec and k_L must be > 0");
    }
    pulse.validate();
}

Sequence build_ramsey_borde(const RamseyBordeConfig& cfg) {
    cfg.validate();
    PulseSpec split = cfg.pulse;
    split.delta_omega = -cfg.omega_rec;
    PulseSpec recombine = cfg.pulse;
    recombine.delta_omega = +cfg.omega_rec;

    Sequence seq;
    seq.push_back({split});
    seq.push_back({FreeSegment{cfg.T}});
    seq.push_back({split});
    if (cfg.acceleration == 0.0) {
        seq.push_back({FreeSegment{cfg.T_prime}});
    } else {
        seq.push_back({AcceleratedSegment{cfg.T_prime, cfg.acceleration}});
    }
    seq.push_back({recombine});
    seq.push_back({FreeSegment{cfg.T}});
    seq.push_back({recombine});
    if (cfg.T_doubleprime > 0.0) {
        seq.push_back({FreeSegment{cfg.T_doubleprime}});
    }
    return seq;
}

LadderWavefunction run_sequence(LadderWavefunction state, const Sequence& seq) {
    const double norm_before = state.norm();
    for (const SequenceStep& s : seq) {
        state = std::visit(
            [&](const auto& step) -> LadderWavefunction {
                using T = std::decay_t<decltype(step)>;
                if constexpr (std::is_same_v<T, PulseSpec>) {
                    return evolve_pulse(std::move(state), step);
                } else if constexpr (std::is_same_v<T, FreeSegment>) {
                    return free_evolve(std::move(state), step);
                } else {
                    return accelerated_evolve(std::move(state), step);
                }
            },
            s.step);
    }
    const double drift = std::abs(state.norm() - norm_before);
    if (drift > 4e-8) {
        throw NormDrift("sequence norm drift " + std::to_string(drift) +
                        " exceeds 4e-8");
    }
    return state;
}

namespace {

struct TreePath {
    std::array<int, 4> pattern{};
    int n = 0;
    double z = 0.0;    // m
    double amp = 1.0;  // product of splitter matrix elements (real)
};

const std::map<std::array<int, 4>, const char*> kLabelByPattern = {
    {{0, 0, 0, 0}, "I"},    {{+1, -1, -1, +1}, "I"},
    {{0, 0, 0, -1}, "V"},   {{+1, -1, -1, 0}, "V"},
    {{+1, -1, 0, 0}, "II"}, {{0, 0, -1, +1}, "III"},
    {{+1, -1, 0, -1}, "IV"}, {{0, 0, -1, 0}, "VI"},
    {{0, +1, 0, 0}, "VII"}, {{+1, 0, 0, 0}, "VIII"},
};

int roman_index(const std::string& label) {
    static const std::map<std::string, int> order = {
        {"I", 1}, {"II", 2}, {"III", 3}, {"IV", 4},
        {"V", 5}, {"VI", 6}, {"VII", 7}, {"VIII", 8}};
    const auto it = order.find(label);
    return it == order.end() ? 99 : it->second;
}

}  // namespace

std::vector<ClassicalPath> enumerate_paths(const RamseyBordeConfig& cfg) {
    cfg.validate();
    const double m = PhysicalConstants::electron_mass;
    const double v_kick = 2.0 * PhysicalConstants::hbar * cfg.k_L / m;
    const double tau = cfg.pulse.duration;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // In-pulse motion. A kicked branch moves with the average of its
    // momentum before and after the pulse. A branch that stays in a
    // resonantly coupled pair additionally picks up the group delay of the
    // dressed evolution, (v_kick/2)(tan(Omega tau)/Omega - tau), towards the
    // partner order; this vanishes for instantaneous pulses.
    const double omega = cfg.pulse.g1g2();
    const double stay_delay =
        omega > 0.0 && tau > 0.0
            ? 0.5 * v_kick * (std::tan(omega * tau) / omega - tau)
            : 0.0;

    double v_base = cfg.initial_velocity;  // common to all paths
    std::vector<TreePath> paths{TreePath{}};

    auto velocity = [&](const TreePath& p) { return v_base + p.n * v_kick; };

    auto apply_pulse = [&](int pulse_index) {
        // pulses 0,1 couple (0,+1); pulses 2,3 couple (0,-1)
        const int partner = pulse_index < 2 ? +1 : -1;
        std::vector<TreePath> next;
        next.reserve(2 * paths.size());
        for (const TreePath& p : paths) {
            if (p.n != 0 && p.n != partner) {
                TreePath pass = p;
                pass.z += tau * velocity(p);
                next.push_back(pass);
                continue;
            }
            const int other = p.n == 0 ? partner : 0;
            // 2x2 elements: stay is +1/sqrt2 on both orders, the kick from
            // the partner order back to n=0 carries the minus sign
            const double stay_factor = inv_sqrt2;
            const double kick_factor = p.n == 0 ? inv_sqrt2 : -inv_sqrt2;

            TreePath stay = p;
            stay.z += tau * velocity(p) + (other > p.n ? -stay_delay : +stay_delay);
            stay.amp *= stay_factor;
            next.push_back(stay);

            TreePath kick = p;
            kick.pattern[pulse_index] = other - p.n;
            kick.n = other;
            kick.z += tau * 0.5 * (velocity(p) + (v_base + other * v_kick));
            kick.amp *= kick_factor;
            next.push_back(kick);
        }
        paths = std::move(next);
    };

    auto drift = [&](double duration) {
        for (TreePath& p : paths) p.z += duration * velocity(p);
    };

    apply_pulse(0);
    drift(cfg.T);
    apply_pulse(1);
    // accelerated window: common velocity gain, fields off during pulses
    for (TreePath& p : paths) {
        p.z += velocity(p) * cfg.T_prime +
               0.5 * cfg.acceleration * cfg.T_prime * cfg.T_prime;
    }
    v_base += cfg.acceleration * cfg.T_prime;
    apply_pulse(2);
    drift(cfg.T);
    apply_pulse(3);
    drift(cfg.T_doubleprime);

    std::vector<ClassicalPath> out;
    out.reserve(paths.size());
    for (const TreePath& p : paths) {
        ClassicalPath c;
        c.kick_pattern = p.pattern;
        c.final_position = p.z;
        c.final_momentum = m * velocity(p);
        c.amplitude_weight = cdouble{p.amp, 0.0};
        const auto it = kLabelByPattern.find(p.pattern);
        c.beam_label = it == kLabelByPattern.end() ? "?" : it->second;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ClassicalPath& a, const ClassicalPath& b) {
        return a.final_position < b.final_position;
    });
    return out;
}

std::vector<BeamPrediction> merge_paths(const std::vector<ClassicalPath>& paths,
                                        double momentum_tol, double position_tol) {
    std::vector<BeamPrediction> beams;
    std::vector<double> mom_sum, pos_sum;
    for (const ClassicalPath& p : paths) {
        bool merged = false;
        for (std::size_t b = 0; b < beams.size(); ++b) {
            const double mean_mom = mom_sum[b] / beams[b].path_count;
            const double mean_pos = pos_sum[b] / beams[b].path_count;
            if (std::abs(p.final_momentum - mean_mom) < momentum_tol &&
                std::abs(p.final_position - mean_pos) < position_tol) {
                mom_sum[b] += p.final_momentum;
                pos_sum[b] += p.final_position;
                beams[b].path_count += 1;
                merged = true;
                break;
            }
        }
        if (!merged) {
            beams.push_back({p.beam_label, p.final_position, p.final_momentum, 1});
            mom_sum.push_back(p.final_momentum);
            pos_sum.push_back(p.final_position);
        }
    }
    for (std::size_t b = 0; b < beams.size(); ++b) {
        beams[b].position = pos_sum[b] / beams[b].path_count;
        beams[b].momentum = mom_sum[b] / beams[b].path_count;
    }
    std::sort(beams.begin(), beams.end(), [](const BeamPrediction& a, const BeamPrediction& b) {
        return a.position < b.position;
    });
    return beams;
}

double phase_shift_prediction(const RamseyBordeConfig& cfg) {
    return 2.0 * cfg.omega_rec * cfg.T_prime -
           2.0 * cfg.acceleration * cfg.k_L * cfg.T * cfg.T_prime;
}

std::vector<BeamReport> analyze_beams(const SpatialDensity& density,
                                      const std::vector<BeamPrediction>& beams,
                                      double packet_width) {
    if (beams.empty()) return {};
    const auto& d = density.density;
    const auto& z = density.positions;
    if (d.size() < 3) throw WindowEmpty("density too small for beam analysis");

    // 1. group predicted beams that the packet width cannot resolve
    std::vector<const BeamPrediction*> sorted;
    for (const auto& b : beams) sorted.push_back(&b);
    std::sort(sorted.begin(), sorted.end(),
              [](const BeamPrediction* a, const BeamPrediction* b) {
                  return a->position < b->position;
              });
    std::vector<std::vector<const BeamPrediction*>> grouped;
    for (const BeamPrediction* b : sorted) {
        if (!grouped.empty() &&
            b->position - grouped.back().back()->position < 2.0 * packet_width) {
            grouped.back().push_back(b);
        } else {
            grouped.push_back({b});
        }
    }

    struct Group {
        std::string label;
        double position = 0.0;
    };
    std::vector<Group> groups;
    for (auto& members : grouped) {
        std::sort(members.begin(), members.end(),
                  [](const BeamPrediction* a, const BeamPrediction* b) {
                      return roman_index(a->label) < roman_index(b->label);
                  });
        Group g;
        for (const BeamPrediction* b : members) {
            if (!g.label.empty()) g.label += "/";
            g.label += b->label;
            g.position += b->position;
        }
        g.position /= static_cast<double>(members.size());
        if (g.position > density.z_min && g.position < density.z_max) {
            groups.push_back(std::move(g));
        }
    }
    if (groups.empty()) {
        throw BeamUnresolved("no predicted beam lies inside the spatial window");
    }

    auto index_of = [&](double pos) {
        const auto it = std::lower_bound(z.begin(), z.end(), pos);
        const std::ptrdiff_t i = it - z.begin();
        return static_cast<std::size_t>(
            std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(z.size()) - 1));
    };

    // 2. watershed cells: cut at the density minimum between adjacent groups
    std::vector<std::size_t> bounds;
    bounds.push_back(0);
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        const std::size_t lo = index_of(groups[g].position);
        const std::size_t hi = index_of(groups[g + 1].position);
        std::size_t valley = lo;
        for (std::size_t k = lo; k <= hi; ++k) {
            if (d[k] < d[valley]) valley = k;
        }
        bounds.push_back(valley);
    }
    bounds.push_back(d.size() - 1);

    const double total = density.total_mass();
    std::vector<BeamReport> reports;
    reports.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t b0 = bounds[g];
        const std::size_t b1 = bounds[g + 1];
        double mass = 0.0;
        std::size_t imax = b0;
        for (std::size_t k = b0; k < b1; ++k) {
            mass += 0.5 * (d[k] + d[k + 1]) * (z[k + 1] - z[k]);
            if (d[k] > d[imax]) imax = k;
        }
        if (d[b1] > d[imax]) imax = b1;

        // position and width from the half-maximum core: insensitive to
        // faint leakage structure in the cell wings
        const double half = 0.5 * d[imax];
        std::size_t lo = imax, hi = imax;
        while (lo > b0 && d[lo - 1] > half) --lo;
        while (hi < b1 && d[hi + 1] > half) ++hi;
        double core_mass = 0.0, core_moment = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            const double dz = z[k + 1] - z[k];
            core_mass += 0.5 * (d[k] + d[k + 1]) * dz;
            core_moment += 0.5 * (d[k] * z[k] + d[k + 1] * z[k + 1]) * dz;
        }
        const double center = core_mass > 0.0 ? core_moment / core_mass : z[imax];

        // FWHM edges by linear interpolation; sigma = FWHM / 2.3548 for a
        // Gaussian profile
        double left = z[lo], right = z[hi];
        if (lo > b0 && d[lo] != d[lo - 1]) {
            left = z[lo - 1] +
                   (z[lo] - z[lo - 1]) * (half - d[lo - 1]) / (d[lo] - d[lo - 1]);
        }
        if (hi < b1 && d[hi] != d[hi + 1]) {
            right = z[hi] + (z[hi + 1] - z[hi]) * (d[hi] - half) / (d[hi] - d[hi + 1]);
        }

        BeamReport r;
        r.label = groups[g].label;
        r.predicted_position = groups[g].position;
        r.measured_position = center;
        r.population = mass / total;
        r.width = (right - left) / 2.3548200450309493;
        reports.push_back(std::move(r));
    }
    return reports;
}

double beam_population(const std::vector<BeamReport>& reports,
                       const std::string& label) {
    for (const BeamReport& r : reports) {
        if (r.label == label) return r.population;
        // shared peak: label appears as one '/'-separated token among others
        std::size_t start = 0;
        while (start <= r.label.size()) {
            const std::size_t slash = r.label.find('/', start);
            const std::string token =
                r.label.substr(start, slash == std::string::npos ? std::string::npos
                                                                 : slash - start);
            if (token == label) {
                throw BeamUnresolved("beam " + label + " overlaps another beam (" +
                                     r.label + ")");
            }
            if (slash == std::string::npos) break;
            start = slash + 1;
        }
    }
    throw BeamUnresolved("beam " + label + " not found in the density");
}

}  // namespace kdi
