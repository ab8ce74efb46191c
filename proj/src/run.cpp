#include "kdi/run.hpp"

#include <algorithm>
#include <cmath>

#include "kdi/errors.hpp"

namespace kdi {

SimulationSetup make_setup(const RunConfig& cfg) {
    cfg.validate();
    SimulationSetup s;
    const double k_L = cfg.laser.mean_wavenumber();
    s.units = ScaledUnits::for_wavenumber(k_L);
    s.omega_rec = cfg.laser.recoil();
    s.g1g2 = cfg.laser.g1g2();
    if (!(s.g1g2 > 0.0)) {
        throw ConfigError("laser intensities give zero coupling; no pulse is possible");
    }
    s.pulse_duration = balanced_pulse_duration(s.g1g2);

    s.grid.kbar_points = cfg.numerics.kbar_points;
    s.grid.ladder_max = cfg.numerics.ladder_max;

    s.init.width_w = cfg.wavepacket.width_w_m;
    s.init.mean_momentum =
        PhysicalConstants::electron_mass * cfg.wavepacket.mean_velocity_mps;

    PulseSpec pulse;
    pulse.g1 = cfg.laser.g1();
    pulse.g2 = cfg.laser.g2();
    pulse.delta_theta = cfg.laser.delta_theta();
    pulse.duration = s.pulse_duration;
    pulse.ladder_max = cfg.numerics.ladder_max;

    s.rb.T = cfg.sequence.T_ns * 1e-9;
    s.rb.T_prime = cfg.sequence.T_prime_ns * 1e-9;
    s.rb.T_doubleprime = cfg.sequence.T_doubleprime_ns * 1e-9;
    s.rb.acceleration = cfg.sequence.acceleration_mps2;
    s.rb.initial_velocity = cfg.wavepacket.mean_velocity_mps;
    s.rb.pulse = pulse;
    s.rb.omega_rec = s.omega_rec;
    s.rb.k_L = k_L;

    if (cfg.numerics.window_um > 0.0) {
        s.window_min = -cfg.numerics.window_um * 1e-6;
        s.window_max = +cfg.numerics.window_um * 1e-6;
    } else {
        // auto window: classical beam span padded by 8 packet widths
        const auto paths = enumerate_paths(s.rb);
        double lo = paths.front().final_position;
        double hi = paths.back().final_position;
        s.window_min = lo - 8.0 * s.init.width_w;
        s.window_max = hi + 8.0 * s.init.width_w;
    }
    return s;
}

RunResult simulate(const RunConfig& cfg) {
    RunResult result;
    result.setup = make_setup(cfg);
    const SimulationSetup& s = result.setup;

    LadderWavefunction state = init_gaussian(s.init, s.grid, s.units);
    const double norm_initial = state.norm();
    const Sequence seq = build_ramsey_borde(s.rb);
    state = run_sequence(std::move(state), seq);
    result.norm_drift = std::abs(state.norm() - norm_initial);

    result.density = reconstruct_spatial(state, s.window_min, s.window_max,
                                         cfg.numerics.spatial_points);

    const auto paths = enumerate_paths(s.rb);
    result.predictions = merge_paths(
        paths, 1e-3 * PhysicalConstants::hbar * s.rb.k_L, 1e-2 * s.init.width_w);
    result.beams = analyze_beams(result.density, result.predictions, s.init.width_w);
    result.delta_phi_prediction = phase_shift_prediction(s.rb);
    return result;
}

std::vector<FringePoint> beam_fringe(const RunConfig& cfg, SweepParam param,
                                     double from, double to, int points) {
    if (points < 1) throw ConfigError("sweep points must be >= 1");
    if (points > 1 && !(to > from)) {
        throw ConfigError("sweep range must satisfy to > from");
    }

    std::vector<FringePoint> out;
    out.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double value =
            points == 1 ? from
                        : from + (to - from) * static_cast<double>(i) /
                              static_cast<double>(points - 1);
        RunConfig point_cfg = cfg;
        if (param == SweepParam::Acceleration) {
            point_cfg.sequence.acceleration_mps2 = value;
        } else {
            point_cfg.sequence.T_prime_ns = value * 1e9;  // value in seconds
        }

        RunResult res;
        try {
            res = simulate(point_cfg);
        } catch (const BeamUnresolved& e) {
            throw BeamUnresolved(std::string(e.what()) + " at sweep value " +
                                 std::to_string(value));
        }

        FringePoint p;
        p.param = value;
        try {
            p.pop_I = beam_population(res.beams, "I");
            p.pop_V = beam_population(res.beams, "V");
        } catch (const BeamUnresolved& e) {
            throw BeamUnresolved(std::string(e.what()) + " at sweep value " +
                                 std::to_string(value) + "; increase T''");
        }
        p.delta_phi = res.delta_phi_prediction;
        p.model_I = 0.25 * std::pow(std::cos(0.5 * p.delta_phi), 2);
        p.model_V = 0.25 * std::pow(std::sin(0.5 * p.delta_phi), 2);
        out.push_back(p);
    }
    return out;
}

std::vector<SplitterPoint> splitter_scan(const RunConfig& cfg, SplitterScan scan,
                                         double from, double to, int points) {
    if (points < 2) throw ConfigError("scan points must be >= 2");
    const SimulationSetup s = make_setup(cfg);
    const double omega = s.omega_rec;
    const double g = s.g1g2;
    const double tau = s.pulse_duration;
    const double v_per_kbar = 2.0 * PhysicalConstants::hbar * s.rb.k_L /
                              PhysicalConstants::electron_mass;  // detuning slope

    if (from == 0.0 && to == 0.0) {
        switch (scan) {
            case SplitterScan::Duration:
                from = 0.0;
                to = 4.0 * tau;
                break;
            case SplitterScan::Detuning:
                from = -2.0 * omega;
                to = 0.0;
                break;
            case SplitterScan::Kbar: {
                // quasimomenta with |delta| <= 4 Omega
                const double k_max = 4.0 * g / v_per_kbar;
                from = -k_max;
                to = +k_max;
                break;
            }
        }
    }

    std::vector<SplitterPoint> out;
    out.reserve(points);
    const int N = s.grid.ladder_max;
    for (int i = 0; i < points; ++i) {
        const double value = from + (to - from) * static_cast<double>(i) /
                                 static_cast<double>(points - 1);
        double duration = tau;
        double delta_omega = -omega;
        double kbar = 0.0;
        switch (scan) {
            case SplitterScan::Duration: duration = value; break;
            case SplitterScan::Detuning: delta_omega = value; break;
            case SplitterScan::Kbar: kbar = value; break;
        }

        std::vector<cdouble> psi(2 * N + 1, cdouble{0.0, 0.0});
        psi[N] = 1.0;
        evolve_ladder_column(psi, s.units.to_internal_wavenumber(kbar),
                             s.units.to_internal_rate(g),
                             s.units.to_internal_frequency(delta_omega),
                             s.units.to_internal_time(duration));

        SplitterPoint p;
        p.param = value;
        p.p_numeric = std::norm(psi[N + 1]);  // resonant partner of n=0 at -w_rec
        // two-level detuning of the (0, +1) pair: w_rec + dOmega + 2 kbar kL hbar/m
        const double delta = omega + delta_omega + v_per_kbar * kbar;
        p.p_two_level = two_level_transfer(TwoLevelModel{g, delta}, duration);
        out.push_back(p);
    }
    return out;
}

}  // namespace kdi
