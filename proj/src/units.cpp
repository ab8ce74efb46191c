#include "kdi/units.hpp"

#include <cmath>

#include "kdi/errors.hpp"

namespace kdi {

double recoil_frequency(double k_L) {
    return 2.0 * PhysicalConstants::hbar * k_L * k_L / PhysicalConstants::electron_mass;
}

double coupling_from_intensity(double intensity, double omega) {
    const double field = std::sqrt(
        intensity / (2.0 * PhysicalConstants::light_speed * PhysicalConstants::vacuum_permittivity));
    return PhysicalConstants::elementary_charge * field /
           (4.0 * omega * std::sqrt(PhysicalConstants::electron_mass * PhysicalConstants::hbar));
}

double weak_coupling_margin(double intensity, double omega, double k_L) {
    const double q = PhysicalConstants::elementary_charge;
    const double rate = q * q * intensity /
                        (32.0 * omega * omega * PhysicalConstants::electron_mass *
                         PhysicalConstants::hbar * PhysicalConstants::light_speed *
                         PhysicalConstants::vacuum_permittivity);
    return rate / recoil_frequency(k_L);
}

double balanced_pulse_duration(double g1g2) {
    return pi / (4.0 * g1g2);
}

void LaserConfig::validate() const {
    if (!(wavelength > 0.0)) {
        throw ConfigError("laser.wavelength_m must be > 0");
    }
    if (intensity_1 < 0.0 || intensity_2 < 0.0) {
        throw ConfigError("laser intensities must be >= 0");
    }
    if (optical_frequency() <= 1e3 * recoil()) {
        throw ConfigError("laser.wavelength_m: optical frequency does not dominate the recoil scale");
    }
}

ScaledUnits ScaledUnits::for_wavenumber(double k_L) {
    ScaledUnits u;
    u.length_unit = 1.0 / k_L;
    u.time_unit = PhysicalConstants::electron_mass /
                  (PhysicalConstants::hbar * k_L * k_L);  // = 2 / omega_rec
    u.momentum_unit = PhysicalConstants::hbar * k_L;
    return u;
}

}  // namespace kdi
