#pragma once

// Harmonic normal modes about the classical equilibria, stability
// classification, and the square-root cusp of the soft mode at the critical
// field.
//
// Stability of the symmetric family follows the sign of v - v*:
//   S_plus (stable) / S_zero (bifurcation, one zero mode) / S_minus (saddle).
// Asymmetric states are minima everywhere inside their existence domain.

#include <utility>

#include "qdot/units.hpp"

namespace qdot {

enum class StabilityTag { A, S_plus, S_zero, S_minus };

struct ModeSet {
    double omega_hi;      // larger frequency, >= omega_lo
    double omega_lo;      // smaller frequency; 0 for S_minus saddles
    double mixing_angle;  // rho-z rotation of the normal axes (A family; 0 for S)
    StabilityTag stability;
    double soft_sq;       // signed square of the soft mode (z-like for S);
                          // negative exactly for S_minus
};

/// Center-of-mass pair (2 sqrt(1+u^2), v).
std::pair<double, double> cm_modes(double u, double v);

/// Modes of an asymmetric equilibrium; throws out_of_family_error outside the
/// A domain.
ModeSet a_modes(double u, double v, double p_phi, double M);

/// Modes of the symmetric equilibrium at (p_phi, u), classified against v.
/// For saddles (v < v*) omega_lo is reported as 0 and the unstable squared
/// frequency is carried in soft_sq.
ModeSet s_modes(double u, double v, double p_phi, double M);

/// A when G_M(p, u, v) < 1, else the S sub-tag by sign(v - v*).
StabilityTag classify_state(double u, double v, double p_phi, double M);

/// Leading behaviour of the soft z mode on both sides of the critical field
/// u_crit(v, p, M): returns (omega on the S side at u_crit - delta_u,
/// omega on the A side at u_crit + delta_u) for delta_u >= 0. The two slopes
/// differ by sqrt(2), tracing a lambda-shaped profile.
std::pair<double, double> lambda_profile(double v, double p_phi, double M, double delta_u);

} // namespace qdot
