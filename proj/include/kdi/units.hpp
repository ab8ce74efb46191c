#pragma once

#include <string>

#include "kdi/constants.hpp"

namespace kdi {

// Recoil shift omega_rec = 2 hbar kL^2 / m: the kinetic-energy change (in
// angular-frequency units) associated with a 2 hbar kL momentum kick.
double recoil_frequency(double k_L);

// Two-photon coupling amplitude g = q E / (4 omega sqrt(m hbar)) with the
// field amplitude from the intensity, E = sqrt(I / (2 c eps0)). g^2 carries
// units of rad/s.
double coupling_from_intensity(double intensity, double omega);

// Ratio of the coupling rate q^2 I / (32 omega^2 m hbar c eps0) to the recoil
// frequency. Callers treat >= 0.1 as a weak-coupling warning threshold.
double weak_coupling_margin(double intensity, double omega, double k_L);

// Duration pi / (4 g1 g2) of a balanced (50/50) resonant pulse.
double balanced_pulse_duration(double g1g2);

// Laboratory laser parameters. The two counter-propagating lasers differ in
// frequency by ~omega_rec, a sub-ppm fraction of the optical frequency, so a
// single mean wavenumber k_L is used for both.
struct LaserConfig {
    double wavelength = 1.064e-6;  // m
    double intensity_1 = 5.0e11;   // W/m^2
    double intensity_2 = 5.0e11;   // W/m^2
    double phase_1 = 0.0;          // rad
    double phase_2 = 0.0;          // rad
    std::string polarization = "xy";  // descriptive tag, no dynamical role

    double mean_wavenumber() const { return 2.0 * pi / wavelength; }
    double optical_frequency() const {
        return 2.0 * pi * PhysicalConstants::light_speed / wavelength;
    }
    double recoil() const { return recoil_frequency(mean_wavenumber()); }
    double g1() const { return coupling_from_intensity(intensity_1, optical_frequency()); }
    double g2() const { return coupling_from_intensity(intensity_2, optical_frequency()); }
    double g1g2() const { return g1() * g2(); }
    double delta_theta() const { return phase_2 - phase_1; }

    // wavelength > 0, intensities >= 0, optical frequency must dominate the
    // recoil scale (omega / omega_rec > 1e3).
    void validate() const;
};

// Conversion between SI and the dimensionless solver units hbar = m = 1,
// k_L = 1. In these units omega_rec = 2 and the two-photon momentum kick is
// exactly 2.
struct ScaledUnits {
    double length_unit;    // m       (1 / k_L)
    double time_unit;      // s       (m / (hbar k_L^2) = 2 / omega_rec)
    double momentum_unit;  // kg m/s  (hbar k_L)

    static ScaledUnits for_wavenumber(double k_L);

    double to_internal_length(double z) const { return z / length_unit; }
    double from_internal_length(double z) const { return z * length_unit; }
    double to_internal_time(double t) const { return t / time_unit; }
    double from_internal_time(double t) const { return t * time_unit; }
    double to_internal_momentum(double p) const { return p / momentum_unit; }
    double from_internal_momentum(double p) const { return p * momentum_unit; }
    // rad/s -> rad per internal time unit
    double to_internal_frequency(double omega) const { return omega * time_unit; }
    double from_internal_frequency(double omega) const { return omega / time_unit; }
    // m/s^2 -> internal acceleration
    double to_internal_acceleration(double a) const {
        return a * time_unit * time_unit / length_unit;
    }
    double from_internal_acceleration(double a) const {
        return a * length_unit / (time_unit * time_unit);
    }
    // 1/m -> units of k_L
    double to_internal_wavenumber(double k) const { return k * length_unit; }
    double from_internal_wavenumber(double k) const { return k / length_unit; }
    // sqrt-coupling g (s^-1/2): only g products (rad/s) are ever scaled.
    double to_internal_rate(double rate) const { return rate * time_unit; }
};

}  // namespace kdi
