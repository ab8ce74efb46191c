#pragma once

#include "kdi/state.hpp"

namespace kdi {

struct FreeSegment {
    double duration = 0.0;  // s
};

struct AcceleratedSegment {
    double duration = 0.0;      // s
    double acceleration = 0.0;  // m/s^2 (a = eE/m for a constant field E)
};

// Multiplies each amplitude by exp(-i T E(p)/hbar), E(p) = p^2/(2m), with
// p = hbar(kbar + 2 n k_L) + p_offset. Exactly norm preserving.
LadderWavefunction free_evolve(LadderWavefunction state, const FreeSegment& seg);

// exp(-i T' H_a / hbar) phi_p = exp(-i tau(p)) phi_{p + m a T'}: diagonal
// phase tau(p) plus a rigid momentum offset shift by m a T'.
LadderWavefunction accelerated_evolve(LadderWavefunction state,
                                      const AcceleratedSegment& seg);

// tau(p) = [p^2 T'/(2m) + p a T'^2/2 + m a^2 T'^3/6] / hbar, the closed form
// of (1/hbar) integral_0^T' E(p + m a t') dt'. SI in, radians out.
double tau_phase(double p, const AcceleratedSegment& seg);

}  // namespace kdi
