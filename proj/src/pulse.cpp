#include "kdi/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "kdi/errors.hpp"
#include "kdi/parallel.hpp"

namespace kdi {

namespace {

constexpr double omega_rec_internal = 2.0;  // hbar = m = k_L = 1

// Frame-map exponent for order n at internal time t:
//   beta_n(t) = (n dOmega - (g1^2+g2^2) - q^2/2) t - n dTheta
// so that psi_n = exp(i beta_n) psibar_n turns the bichromatic coupling
// phases exp(+-i (dOmega t - dTheta)) into constant couplings and leaves the
// ladder diagonal n (n w_rec + 2 kbar + dOmega). q is the offset-shifted
// quasimomentum kbar + p_off: the rigid drift advances packet positions
// during the pulse, while the resonance condition stays offset free.
double frame_exponent(int n, double q, double t, double delta_omega,
                      double delta_theta, double light_shift) {
    return (n * delta_omega - light_shift - 0.5 * q * q) * t - n * delta_theta;
}

}  // namespace

void PulseSpec::validate() const {
    if (duration < 0.0) throw ConfigError("pulse duration must be >= 0");
    if (ladder_max < 2) throw ConfigError("pulse ladder_max must be >= 2");
}

bool PulseSpec::near_resonant_multiple(double omega_rec, double tol) const {
    const double ratio = std::abs(delta_omega) / omega_rec;
    const double nearest = std::round(ratio);
    return nearest >= 1.0 && std::abs(ratio - nearest) <= tol * nearest;
}

Mat2 two_level_evolution(const TwoLevelModel& model, double t) {
    const double omega = model.coupling;
    const double delta = model.detuning;
    const double theta = std::sqrt(omega * omega + 0.25 * delta * delta);
    const double c = std::cos(theta * t);
    // sin(theta t)/theta, finite at theta -> 0
    const double s_over =
        theta * t == 0.0 ? t : std::sin(theta * t) / theta;
    const cdouble common = std::polar(1.0, -0.5 * delta * t);
    const cdouble i{0.0, 1.0};
    Mat2 m;
    m[0] = common * (c + i * (0.5 * delta) * s_over);
    m[1] = common * (-i * omega * s_over);
    m[2] = m[1];
    m[3] = common * (c - i * (0.5 * delta) * s_over);
    return m;
}

double two_level_transfer(const TwoLevelModel& model, double t) {
    const Mat2 m = two_level_evolution(model, t);
    return std::norm(m[2]);
}

LadderWavefunction rotating_frame_map(LadderWavefunction state,
                                      const PulseSpec& pulse,
                                      FrameDirection direction) {
    const ScaledUnits& u = state.units;
    const double d_omega = u.to_internal_frequency(pulse.delta_omega);
    const double d_theta = pulse.delta_theta;
    const double shift = u.to_internal_frequency(pulse.light_shift());
    const double t = state.time_stamp;

    if (direction == FrameDirection::ToRotating) {
        state.require_frame(Frame::Lab, "rotating_frame_map(to_rotating)");
    } else {
        state.require_frame(Frame::Rotating, "rotating_frame_map(to_lab)");
        const RotatingContext expected{d_omega, d_theta, shift};
        if (!state.rotating || !(*state.rotating == expected)) {
            throw FrameMismatch("rotating_frame_map(to_lab): pulse does not match the rotating context");
        }
    }

    const double sign = direction == FrameDirection::ToLab ? 1.0 : -1.0;
    for (int n = -state.ladder_max; n <= state.ladder_max; ++n) {
        for (std::size_t k = 0; k < state.columns(); ++k) {
            const double beta =
                frame_exponent(n, state.kbar[k] + state.momentum_offset, t,
                               d_omega, d_theta, shift);
            state.at(n, k) *= std::polar(1.0, sign * beta);
        }
    }

    if (direction == FrameDirection::ToRotating) {
        state.frame = Frame::Rotating;
        state.rotating = RotatingContext{d_omega, d_theta, shift};
    } else {
        state.frame = Frame::Lab;
        state.rotating.reset();
    }
    return state;
}

void evolve_ladder_column(std::vector<cdouble>& psi, double kbar,
                          double g_product, double delta_omega,
                          double duration, double max_step) {
    if (duration == 0.0) return;
    const int orders = static_cast<int>(psi.size());
    const int N = (orders - 1) / 2;

    std::vector<double> diag(orders);
    for (int n = -N; n <= N; ++n) {
        diag[n + N] = n * (n * omega_rec_internal + 2.0 * kbar + delta_omega);
    }

    double bound = 0.02 / (N * N * omega_rec_internal + std::abs(delta_omega) +
                           std::abs(g_product));
    bound = std::min(bound, duration / 200.0);
    if (max_step > 0.0) bound = std::min(bound, max_step);
    const long steps = std::max(1L, static_cast<long>(std::ceil(duration / bound)));
    const double h = duration / static_cast<double>(steps);

    const cdouble minus_i{0.0, -1.0};
    std::vector<cdouble> k1(orders), k2(orders), k3(orders), k4(orders), tmp(orders);

    auto rhs = [&](const std::vector<cdouble>& y, std::vector<cdouble>& dy) {
        for (int j = 0; j < orders; ++j) {
            cdouble v = diag[j] * y[j];
            if (j > 0) v += g_product * y[j - 1];
            if (j + 1 < orders) v += g_product * y[j + 1];
            dy[j] = minus_i * v;
        }
    };

    for (long s = 0; s < steps; ++s) {
        rhs(psi, k1);
        for (int j = 0; j < orders; ++j) tmp[j] = psi[j] + 0.5 * h * k1[j];
        rhs(tmp, k2);
        for (int j = 0; j < orders; ++j) tmp[j] = psi[j] + 0.5 * h * k2[j];
        rhs(tmp, k3);
        for (int j = 0; j < orders; ++j) tmp[j] = psi[j] + h * k3[j];
        rhs(tmp, k4);
        for (int j = 0; j < orders; ++j) {
            psi[j] += (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
        }
    }
}

LadderWavefunction evolve_pulse(LadderWavefunction state, const PulseSpec& pulse) {
    pulse.validate();
    state.require_frame(Frame::Lab, "evolve_pulse");
    if (pulse.ladder_max != state.ladder_max) {
        throw ConfigError("pulse ladder_max does not match the state ladder");
    }
    if (pulse.duration == 0.0) return state;

    const StepControl& ctl = pulse.step_control;
    if (state.edge_population() > ctl.truncation_tolerance) {
        throw TruncationOverflow("edge-order population above tolerance on pulse entry; raise ladder_max");
    }
    const double norm_before = state.norm();

    const ScaledUnits u = state.units;
    const double duration = u.to_internal_time(pulse.duration);
    const double d_omega = u.to_internal_frequency(pulse.delta_omega);
    const double g = u.to_internal_rate(pulse.g1g2());
    const double max_step =
        ctl.max_step > 0.0 ? u.to_internal_time(ctl.max_step) : 0.0;

    state = rotating_frame_map(std::move(state), pulse, FrameDirection::ToRotating);

    const std::size_t cols = state.columns();
    const int orders = state.orders();
    parallel_for(cols, [&](std::size_t k) {
        std::vector<cdouble> psi(orders);
        for (int j = 0; j < orders; ++j) psi[j] = state.amp[j * cols + k];
        evolve_ladder_column(psi, state.kbar[k], g, d_omega, duration, max_step);
        for (int j = 0; j < orders; ++j) state.amp[j * cols + k] = psi[j];
    });

    state.time_stamp += duration;
    state = rotating_frame_map(std::move(state), pulse, FrameDirection::ToLab);

    const double drift = std::abs(state.norm() - norm_before);
    if (drift > ctl.norm_tolerance) {
        throw NormDrift("norm drift " + std::to_string(drift) + " exceeds tolerance");
    }
    if (state.edge_population() > ctl.truncation_tolerance) {
        throw TruncationOverflow("edge-order population above tolerance on pulse exit; raise ladder_max");
    }
    return state;
}

LadderWavefunction ideal_splitter(LadderWavefunction state, SplitterSign sign) {
    state.require_frame(Frame::Lab, "ideal_splitter");
    const int partner = sign == SplitterSign::Minus ? 1 : -1;
    if (state.ladder_max < 1) {
        throw ConfigError("ideal_splitter needs ladder_max >= 1");
    }

    const double dk = state.dkbar();
    double outside = 0.0;
    for (int n = -state.ladder_max; n <= state.ladder_max; ++n) {
        if (n == 0 || n == partner) continue;
        for (std::size_t k = 0; k < state.columns(); ++k) {
            outside += state.column_weight(k) * std::norm(state.at(n, k));
        }
    }
    if (outside * dk > 1e-3) {
        throw PopulationOutsideModel("population outside the coupled order pair exceeds 1e-3");
    }

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < state.columns(); ++k) {
        const cdouble c0 = state.at(0, k);
        const cdouble cp = state.at(partner, k);
        state.at(0, k) = inv_sqrt2 * (c0 - cp);
        state.at(partner, k) = inv_sqrt2 * (c0 + cp);
    }
    return state;
}

namespace {

// Rotating-frame populations per order after one pulse on a pure n=0 column.
std::map<int, double> column_populations(const PulseSpec& pulse, double kbar_internal,
                                         const ScaledUnits& units, int N) {
    std::vector<cdouble> psi(2 * N + 1, cdouble{0.0, 0.0});
    psi[N] = 1.0;
    evolve_ladder_column(psi, kbar_internal,
                         units.to_internal_rate(pulse.g1g2()),
                         units.to_internal_frequency(pulse.delta_omega),
                         units.to_internal_time(pulse.duration),
                         pulse.step_control.max_step > 0.0
                             ? units.to_internal_time(pulse.step_control.max_step)
                             : 0.0);
    std::map<int, double> pops;
    for (int n = -N; n <= N; ++n) pops[n] = std::norm(psi[n + N]);
    return pops;
}

double max_population_difference(const std::map<int, double>& a,
                                 const std::map<int, double>& b) {
    double diff = 0.0;
    for (const auto& [n, pa] : a) {
        const auto it = b.find(n);
        diff = std::max(diff, std::abs(pa - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [n, pb] : b) {
        if (!a.count(n)) diff = std::max(diff, pb);
    }
    return diff;
}

}  // namespace

int truncation_convergence(const PulseSpec& pulse, double kbar,
                           const ScaledUnits& units) {
    constexpr int max_N = 64;
    constexpr double tol = 1e-8;
    const double kb = units.to_internal_wavenumber(kbar);

    int ref_N = 0;
    std::map<int, double> ref;
    std::map<int, double> prev = column_populations(pulse, kb, units, 1);
    for (int N = 2; N <= max_N; N *= 2) {
        std::map<int, double> cur = column_populations(pulse, kb, units, N);
        if (max_population_difference(prev, cur) < tol) {
            ref_N = N;
            ref = std::move(cur);
            break;
        }
        prev = std::move(cur);
    }
    if (ref_N == 0) {
        throw NoConvergence("ladder populations not converged at N = 64");
    }
    for (int N = 1; N < ref_N; ++N) {
        if (max_population_difference(column_populations(pulse, kb, units, N), ref) < tol) {
            return N;
        }
    }
    return ref_N;
}

}  // namespace kdi
