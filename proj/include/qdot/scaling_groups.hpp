#pragma once

// Two one-parameter scaling actions that leave the dimensionless physics
// invariant:
//
//   G4: (m*, |g*|, alpha_M, B) -> (a^2 m*, a^-2 |g*|, a^-M alpha_M, a^2 B)
//       at fixed trap frequencies. Conjugates systems with different
//       effective masses; (u, v, q_dia, E_S) are unchanged.
//
//   G7: maps the interaction exponent M -> L while holding (gamma, q_dia)
//       fixed, transforming beta accordingly. Lets spectra for different
//       power-law repulsions be compared on one plot.

#include "qdot/units.hpp"

namespace qdot {

struct G4Result {
    MaterialSpec material;
    TrapSpec trap;
    double b_tesla;
};

/// Apply the mass/field rescaling with parameter a > 0. The returned trap
/// carries the transformed interaction strength as an explicit beta_override.
G4Result g4_action(double a, const MaterialSpec& mat, const TrapSpec& trap, double B_tesla);

/// Map the trap to interaction exponent target_M, transforming beta so that
/// q_dia is preserved. Frequencies and material are untouched.
TrapSpec g7_map(double target_M, const MaterialSpec& mat, const TrapSpec& trap);

/// Display factor g_M = 3/(1 + M/2) as printed in the source analysis.
/// Note: at M = 1 this gives 2, while the accompanying text asserts g_1 = 1;
/// the self-consistent normalizer is classical_limit_factor below. Kept as
/// printed, not renormalized.
double display_factor(double M);

/// 3M/(M+2): multiplies the minimal-band energy (1/2)(1+2/M) to 3/2 for every
/// M, so additional-energy curves for different exponents share one classical
/// asymptote. This is the factor applied to cross-M additional-energy output.
double classical_limit_factor(double M);

} // namespace qdot
