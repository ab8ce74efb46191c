// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code = number of failed criteria.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "kdi/errors.hpp"
#include "kdi/io.hpp"
#include "kdi/run.hpp"
#include "oracles.hpp"

using namespace kdi;

namespace {

const double k_L = 2.0 * pi / 1.064e-6;
const ScaledUnits units = ScaledUnits::for_wavenumber(k_L);
const double omega_rec = recoil_frequency(k_L);

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> details;

    void expect(bool condition, const std::string& what) {
        ok = ok && condition;
        details.push_back(std::string(condition ? "  ok  : " : "  FAIL: ") + what);
    }
};

std::vector<Criterion> results;

void report(Criterion c) {
    std::printf("[%s] %s\n", c.ok ? "PASS" : "FAIL", c.name.c_str());
    for (const auto& d : c.details) std::printf("%s\n", d.c_str());
    std::fflush(stdout);
    results.push_back(std::move(c));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double wrap_pi(double x) {
    x = std::fmod(x + pi, 2.0 * pi);
    if (x < 0.0) x += 2.0 * pi;
    return x - pi;
}

PulseSpec paper_pulse(double sign = -1.0) {
    LaserConfig laser;
    PulseSpec pulse;
    pulse.g1 = laser.g1();
    pulse.g2 = laser.g2();
    pulse.delta_omega = sign * omega_rec;
    pulse.duration = balanced_pulse_duration(pulse.g1g2());
    pulse.ladder_max = 5;
    return pulse;
}

// ---------------------------------------------------------------------------

void criterion_1_recoil() {
    Criterion c{"criterion 1: recoil shift at 1064 nm"};
    const double f_rec = recoil_frequency(k_L) / (2.0 * pi);
    c.expect(std::abs(f_rec - 1.285e9) / 1.285e9 < 1e-3,
             "omega_rec/2pi = " + fmt(f_rec) + " Hz vs 1.285 GHz");
    c.expect(std::abs(f_rec - 1.3e9) / 1.3e9 < 0.02,
             "within 2% of the rounded 1.3 GHz");
    report(std::move(c));
}

void criterion_2_coupling() {
    Criterion c{"criterion 2: coupling feasibility at 0.5 W/um^2"};
    LaserConfig laser;
    const double g1g2 = laser.g1g2();
    c.expect(std::abs(g1g2 / (2.0 * pi) - 80e6) <= 1e6,
             "g1g2/2pi = " + fmt(g1g2 / (2.0 * pi)) + " Hz vs (80 +- 1) MHz");
    const double tau = balanced_pulse_duration(g1g2);
    c.expect(std::abs(tau - 1.56e-9) < 5e-12,
             "pulse duration " + fmt(tau) + " s vs 1.56 ns");
    const double margin_1 = weak_coupling_margin(1.0e12, laser.optical_frequency(), k_L);
    const double I_crit = 1.0e12 / margin_1;
    c.expect(std::abs(I_crit - 8.0e12) <= 0.1e12,
             "critical intensity " + fmt(I_crit * 1e-12) + " W/um^2 vs 8.0 +- 0.1");
    report(std::move(c));
}

void criterion_3_balanced_splitter() {
    Criterion c{"criterion 3: balanced splitter at resonance"};
    const PulseSpec pulse = paper_pulse();
    const int N = pulse.ladder_max;
    std::vector<cdouble> psi(2 * N + 1, cdouble{0.0, 0.0});
    psi[N] = 1.0;
    evolve_ladder_column(psi, 0.0, units.to_internal_rate(pulse.g1g2()),
                         units.to_internal_frequency(pulse.delta_omega),
                         units.to_internal_time(pulse.duration));
    const double p0 = std::norm(psi[N]);
    const double p1 = std::norm(psi[N + 1]);
    double leak = 0.0;
    for (int n = -N; n <= N; ++n) {
        if (std::abs(n) >= 2) leak += std::norm(psi[n + N]);
    }
    c.expect(std::abs(p0 - 0.5) < 1e-2, "population n=0: " + fmt(p0));
    c.expect(std::abs(p1 - 0.5) < 1e-2, "population n=1: " + fmt(p1));
    c.expect(leak < 5e-3, "|n| >= 2 leakage: " + fmt(leak));
    report(std::move(c));
}

void criterion_4_oracles() {
    Criterion c{"criterion 4: oracle equivalence"};
    const PulseSpec pulse = paper_pulse();
    const int N = pulse.ladder_max;
    const double g_int = units.to_internal_rate(pulse.g1g2());
    const double tau_int = units.to_internal_time(pulse.duration);

    // dense matrix exponential per column
    double max_dev = 0.0;
    for (double kbar : {-0.15, -0.04, 0.0, 0.08, 0.18}) {
        std::vector<cdouble> psi(2 * N + 1, cdouble{0.0, 0.0});
        psi[N] = 1.0;
        std::vector<cdouble> psi0 = psi;
        evolve_ladder_column(psi, kbar, g_int, -2.0, tau_int);
        const auto oracle = oracles::expm_column(psi0, kbar, g_int, -2.0, tau_int);
        for (int j = 0; j < 2 * N + 1; ++j) {
            max_dev = std::max(max_dev, std::abs(psi[j] - oracle[j]));
        }
    }
    c.expect(max_dev < 1e-6, "max deviation vs matrix exponential: " + fmt(max_dev));

    // two-level Rabi formula for |delta| <= 4 Omega
    double max_p_dev = 0.0;
    for (double ratio = -4.0; ratio <= 4.0; ratio += 0.5) {
        const double kbar = 0.5 * ratio * g_int;  // delta = 2 kbar internally
        std::vector<cdouble> psi(2 * N + 1, cdouble{0.0, 0.0});
        psi[N] = 1.0;
        evolve_ladder_column(psi, kbar, g_int, -2.0, tau_int);
        const double p_model =
            two_level_transfer({pulse.g1g2(), ratio * pulse.g1g2()}, pulse.duration);
        max_p_dev = std::max(max_p_dev, std::abs(std::norm(psi[N + 1]) - p_model));
    }
    c.expect(max_p_dev < 1e-2,
             "max transfer deviation vs two-level model: " + fmt(max_p_dev));

    // position-space Crank-Nicolson single-pulse populations
    GridSpec grid;
    grid.kbar_points = 257;
    grid.ladder_max = 4;
    PulseSpec cn_pulse = pulse;
    cn_pulse.ladder_max = 4;
    LadderWavefunction state = init_gaussian(GaussianInit{}, grid, units);
    const Observables obs = observables(evolve_pulse(std::move(state), cn_pulse));
    oracles::CrankNicolsonPulse cn;
    const auto pops = cn.populations(
        units.to_internal_length(3e-6), units.to_internal_rate(cn_pulse.g1g2()),
        units.to_internal_frequency(cn_pulse.light_shift()),
        units.to_internal_frequency(cn_pulse.delta_omega), cn_pulse.delta_theta,
        units.to_internal_time(cn_pulse.duration), 4, 2200);
    double cn_dev = 0.0;
    for (int n = -4; n <= 4; ++n) {
        cn_dev = std::max(cn_dev, std::abs(obs.ladder_populations[n + 4] - pops[n + 4]));
    }
    c.expect(cn_dev < 1e-3, "max population deviation vs Crank-Nicolson: " + fmt(cn_dev));
    report(std::move(c));
}

void criterion_5_interference_pattern() {
    Criterion c{"criterion 5: structural reproduction of the interference pattern"};
    const RunConfig cfg;  // defaults: full grids
    const RunResult res = simulate(cfg);

    // count peaks carrying at least 1% of the electrons; fainter structure
    // is pulse leakage far below the figure's visibility. Smoothing at half
    // the packet width removes sub-packet fringes of overlapping ports.
    PeakOptions opts;
    opts.smooth_sigma = 0.5 * cfg.wavepacket.width_w_m;
    opts.min_mass = 0.01;
    const auto peaks = peak_analysis(res.density, opts);
    c.expect(peaks.size() == 8,
             "peak count (>= 1% mass): " + std::to_string(peaks.size()) +
                 " (expected 8)");
    c.expect(res.beams.size() == 8,
             "resolved beam ports: " + std::to_string(res.beams.size()));

    double worst = 0.0;
    bool order_ok = true;
    const std::vector<std::string> expected_order = {"VI", "V",  "IV",  "III",
                                                     "I",  "II", "VII", "VIII"};
    for (std::size_t i = 0; i < res.beams.size(); ++i) {
        const BeamReport& b = res.beams[i];
        worst = std::max(worst, std::abs(b.measured_position - b.predicted_position));
        if (i < expected_order.size() && b.label != expected_order[i]) order_ok = false;
    }
    c.expect(worst < 0.3e-6,
             "max |measured - classical| = " + fmt(worst * 1e6) + " um (tol 0.3)");
    c.expect(order_ok, "roman order left to right is VI V IV III I II VII VIII");
    c.expect(res.beams.back().label == "VIII", "beam VIII is rightmost");

    double total = 0.0;
    for (const auto& b : res.beams) total += b.population;
    c.expect(std::abs(total - 1.0) < 1e-3,
             "beam populations sum to " + fmt(total));

    // T'' = 0 variant: IV/V/VI merge into II/I/III -> 5 resolved peaks
    RunConfig overlap_cfg = cfg;
    overlap_cfg.sequence.T_doubleprime_ns = 0.0;
    const RunResult overlap = simulate(overlap_cfg);
    const auto overlap_peaks = peak_analysis(overlap.density, opts);
    c.expect(overlap_peaks.size() == 5,
             "T''=0 peak count (>= 1% mass): " +
                 std::to_string(overlap_peaks.size()) + " (expected 5)");
    c.expect(overlap.beams.size() == 5,
             "T''=0 resolved beam ports: " + std::to_string(overlap.beams.size()));
    bool merged_labels = true;
    int merged_found = 0;
    for (const auto& b : overlap.beams) {
        if (b.label == "I/V" || b.label == "II/IV" || b.label == "III/VI") {
            ++merged_found;
        } else if (b.label.find('/') != std::string::npos) {
            merged_labels = false;
        }
    }
    c.expect(merged_labels && merged_found == 3,
             "overlapping ports are IV/II, V/I, VI/III");
    report(std::move(c));
}

void criterion_6_phase_shift() {
    Criterion c{"criterion 6: acceleration-sweep fringe"};
    RunConfig cfg;
    cfg.numerics.kbar_points = 257;  // population extraction needs no finer grid
    const double period_expected = pi / (k_L * 12e-9 * 10e-9);  // 4.433e9 m/s^2

    const int points = 25;
    const auto fringe =
        beam_fringe(cfg, SweepParam::Acceleration, 0.0, 2.0 * period_expected, points);

    // pop_I + pop_V = 1/4 across the sweep
    double worst_sum = 0.0;
    for (const auto& p : fringe) {
        worst_sum = std::max(worst_sum, std::abs(p.pop_I + p.pop_V - 0.25));
    }
    c.expect(worst_sum < 2e-2,
             "max |pop_I + pop_V - 0.25| = " + fmt(worst_sum));

    // least-squares cosine fit pop_I(a) = C + A cos(f a) + B sin(f a) with a
    // scan over f: period and phase of the measured fringe
    auto fit_residual = [&](double f, double* amp_phase) {
        double sc = 0, ss = 0, scc = 0, sss = 0, ssc = 0, sy = 0, syc = 0, sys = 0;
        const int n = points;
        for (const auto& p : fringe) {
            const double cv = std::cos(f * p.param);
            const double sv = std::sin(f * p.param);
            sc += cv; ss += sv; scc += cv * cv; sss += sv * sv; ssc += sv * cv;
            sy += p.pop_I; syc += p.pop_I * cv; sys += p.pop_I * sv;
        }
        // normal equations for (C, A, B)
        double m[3][4] = {{double(n), sc, ss, sy},
                          {sc, scc, ssc, syc},
                          {ss, ssc, sss, sys}};
        for (int col = 0; col < 3; ++col) {
            int pivot = col;
            for (int row = col + 1; row < 3; ++row) {
                if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
            }
            std::swap(m[col], m[pivot]);
            for (int row = 0; row < 3; ++row) {
                if (row == col) continue;
                const double fct = m[row][col] / m[col][col];
                for (int k = col; k < 4; ++k) m[row][k] -= fct * m[col][k];
            }
        }
        const double C = m[0][3] / m[0][0];
        const double A = m[1][3] / m[1][1];
        const double B = m[2][3] / m[2][2];
        double res = 0.0;
        for (const auto& p : fringe) {
            const double model = C + A * std::cos(f * p.param) + B * std::sin(f * p.param);
            res += (p.pop_I - model) * (p.pop_I - model);
        }
        if (amp_phase) {
            amp_phase[0] = std::hypot(A, B);
            amp_phase[1] = std::atan2(-B, A);  // pop ~ C + R cos(f a + phase0)
        }
        return res;
    };

    const double f_expected = 2.0 * k_L * 12e-9 * 10e-9;
    double best_f = f_expected, best_res = 1e300;
    for (int i = 0; i <= 800; ++i) {
        const double f = f_expected * (0.7 + 0.6 * i / 800.0);
        const double r = fit_residual(f, nullptr);
        if (r < best_res) {
            best_res = r;
            best_f = f;
        }
    }
    const double period_measured = 2.0 * pi / best_f;
    c.expect(std::abs(period_measured - period_expected) / period_expected < 0.03,
             "fringe period " + fmt(period_measured) + " m/s^2 vs " +
                 fmt(period_expected) + " (tol 3%)");

    // fringe phase at the reference acceleration, modulo 2 pi
    double amp_phase[2];
    fit_residual(best_f, amp_phase);
    const double a_star = 1e10;
    // measured cosine argument at a*, using the sign convention that the
    // fringe argument grows with a at rate 2 k_L T T'
    const double phi_measured = best_f * a_star + amp_phase[1];
    RunConfig star_cfg;
    const double phi_predicted = phase_shift_prediction(make_setup(star_cfg).rb);
    const double err_plus = std::abs(wrap_pi(phi_measured - phi_predicted));
    const double err_minus = std::abs(wrap_pi(-phi_measured - phi_predicted));
    const double err = std::min(err_plus, err_minus);
    c.expect(std::abs(phi_predicted - 147.31) < 0.1,
             "idealized-model prediction at reference parameters: " + fmt(phi_predicted) +
                 " rad vs 147.31");
    c.expect(err <= 0.1,
             "measured fringe phase at a* (mod 2pi): " + fmt(wrap_pi(phi_measured)) +
                 " rad vs predicted " + fmt(wrap_pi(phi_predicted)) +
                 " rad; |difference| = " + fmt(err) + " (tol 0.1)");
    report(std::move(c));
}

void criterion_7_properties() {
    Criterion c{"criterion 7: property suite"};

    // norm conservation per pulse
    GridSpec grid;
    grid.kbar_points = 129;
    grid.ladder_max = 5;
    LadderWavefunction state = init_gaussian(GaussianInit{}, grid, units);
    const double norm0 = state.norm();
    const PulseSpec pulse = paper_pulse();
    LadderWavefunction after = evolve_pulse(state, pulse);
    c.expect(std::abs(after.norm() - norm0) <= 1e-8,
             "norm drift per pulse: " + fmt(std::abs(after.norm() - norm0)));

    // quasimomentum conservation: single occupied column stays isolated
    LadderWavefunction single = state;
    for (auto& v : single.amp) v = 0.0;
    single.at(0, 40) = 1.0;
    const LadderWavefunction evolved = evolve_pulse(single, pulse);
    bool isolated = true;
    for (std::size_t k = 0; k < evolved.columns(); ++k) {
        if (k == 40) continue;
        for (int n = -5; n <= 5; ++n) {
            if (evolved.at(n, k) != cdouble{0.0, 0.0}) isolated = false;
        }
    }
    c.expect(isolated, "pulses never mix quasimomentum columns");

    // frame round-trip identity
    LadderWavefunction round = state;
    round.time_stamp = units.to_internal_time(3.1e-9);
    const LadderWavefunction back = rotating_frame_map(
        rotating_frame_map(round, pulse, FrameDirection::ToRotating), pulse,
        FrameDirection::ToLab);
    double frame_dev = 0.0;
    for (std::size_t i = 0; i < round.amp.size(); ++i) {
        frame_dev = std::max(frame_dev, std::abs(back.amp[i] - round.amp[i]));
    }
    c.expect(frame_dev < 1e-13, "frame round trip deviation: " + fmt(frame_dev));

    // free-evolution composition
    LadderWavefunction split_free = free_evolve(free_evolve(state, {5e-9}), {7e-9});
    LadderWavefunction whole_free = free_evolve(state, {12e-9});
    double comp_dev = 0.0;
    for (std::size_t i = 0; i < state.amp.size(); ++i) {
        comp_dev = std::max(comp_dev, std::abs(split_free.amp[i] - whole_free.amp[i]));
    }
    c.expect(comp_dev < 1e-12, "free composition deviation: " + fmt(comp_dev));

    // Ehrenfest over an accelerated segment
    GaussianInit moving;
    moving.mean_momentum = PhysicalConstants::electron_mass * 30.0;
    LadderWavefunction ehr = init_gaussian(moving, grid, units);
    const double z_before = reconstruct_spatial(ehr, -20e-6, 20e-6, 2001).centroid();
    const double p_before = observables(ehr).mean_momentum;
    ehr = accelerated_evolve(std::move(ehr), {10e-9, 1e10});
    const double z_after = reconstruct_spatial(ehr, -20e-6, 20e-6, 2001).centroid();
    const double p_after = observables(ehr).mean_momentum;
    const double dz_expected = 30.0 * 10e-9 + 0.5 * 1e10 * 10e-9 * 10e-9;
    c.expect(std::abs((z_after - z_before) - dz_expected) < 5e-9,
             "Ehrenfest <z> step: " + fmt((z_after - z_before) * 1e6) + " um vs " +
                 fmt(dz_expected * 1e6));
    // the first moment carries the ~1e-9 grid-tail norm deficit
    c.expect(std::abs(p_after - p_before -
                      PhysicalConstants::electron_mass * 100.0) <
                 1e-8 * PhysicalConstants::electron_mass * 100.0,
             "Ehrenfest <p> step equals m a T'");

    // delta_theta insensitivity of single-pulse populations
    PulseSpec shifted = pulse;
    shifted.delta_theta = 2.345;
    const Observables obs_a = observables(evolve_pulse(state, pulse));
    const Observables obs_b = observables(evolve_pulse(state, shifted));
    double theta_dev = 0.0;
    for (std::size_t i = 0; i < obs_a.ladder_populations.size(); ++i) {
        theta_dev = std::max(theta_dev, std::abs(obs_a.ladder_populations[i] -
                                                 obs_b.ladder_populations[i]));
    }
    c.expect(theta_dev < 1e-12, "populations independent of delta_theta");

    // resonance selectivity of the second pulse pair on n = +1
    std::vector<cdouble> psi(11, cdouble{0.0, 0.0});
    psi[5 + 1] = 1.0;
    evolve_ladder_column(psi, 0.0, units.to_internal_rate(pulse.g1g2()), +2.0,
                         units.to_internal_time(pulse.duration));
    const double stay = std::norm(psi[5 + 1]);
    c.expect(1.0 - stay < 1e-2,
             "transfer out of n=+1 under +omega_rec: " + fmt(1.0 - stay));

    // determinism: identical configs give byte-identical artifacts
    RunConfig det_cfg;
    det_cfg.numerics.kbar_points = 129;
    det_cfg.numerics.ladder_max = 4;
    det_cfg.numerics.spatial_points = 1024;
    const RunResult run_a = simulate(det_cfg);
    const RunResult run_b = simulate(det_cfg);
    c.expect(density_csv(run_a.density) == density_csv(run_b.density) &&
                 summary_json(det_cfg, run_a).dump() == summary_json(det_cfg, run_b).dump(),
             "reruns are byte-identical");
    report(std::move(c));
}

}  // namespace

int main() {
    criterion_1_recoil();
    criterion_2_coupling();
    criterion_3_balanced_splitter();
    criterion_4_oracles();
    criterion_5_interference_pattern();
    criterion_6_phase_shift();
    criterion_7_properties();

    int failures = 0;
    std::printf("\n==== acceptance summary ====\n");
    for (const auto& c : results) {
        std::printf("[%s] %s\n", c.ok ? "PASS" : "FAIL", c.name.c_str());
        if (!c.ok) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}
