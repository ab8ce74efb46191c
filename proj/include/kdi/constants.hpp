#pragma once

namespace kdi {

// CODATA-2018 values, SI. Fixed at compile time; never user-settable.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;               // J s
    static constexpr double electron_mass = 9.109383702e-31;      // kg
    static constexpr double elementary_charge = 1.602176634e-19;  // C
    static constexpr double light_speed = 2.99792458e8;           // m/s
    static constexpr double vacuum_permittivity = 8.854187813e-12;  // F/m
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace kdi
