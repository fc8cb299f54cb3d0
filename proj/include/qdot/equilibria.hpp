#pragma once

// Equilibrium configurations of the relative motion at fixed angular momentum
// p_phi. Two families exist:
//
//   A (asymmetric): off-plane pair (rho_A, +/-z_A), breaking the reflection
//     (rho, z) -> (rho, -z). Requires d^2(u,v) = 1 + u^2 - v^2 > 0 and
//     |p_phi| < p_max(u, v, M). The canonical representative has z >= 0.
//
//   S (symmetric): in-plane (z = 0). Parameterized by the auxiliary v*, the
//     anisotropy at which the state would sit exactly on the family boundary
//     G_M = 1. v* solves h_{M,8}(v*) p^2 + v*^2 = 1 + u^2 and is unique in
//     (0, sqrt(1+u^2)].
//
// Energies are in E_dia units throughout.

#include "qdot/units.hpp"

namespace qdot {

enum class Family { A, S };

struct AsymmetricState {
    double p_phi;
    double rho;     // >= 0
    double z;       // canonical z >= 0; the -z partner is degenerate
    double r;       // sqrt(rho^2 + z^2) = h_{M,-2}(v)
    double energy;  // E_dia units
};

struct SymmetricState {
    double p_phi;
    double v_star;
    double rho;     // = h_{M,-2}(v_star)
    double energy;  // E_dia units
};

struct MinimalState {
    double p_phi;
    double rho_sq;
    double energy;
    Family family;
};

/// d(u,v) = sqrt(1 + u^2 - v^2). Domain error when 1 + u^2 < v^2 (the
/// asymmetric family is absent there).
double deficit(double u, double v);

/// Family boundary function G_M = h_{M,8}(v) p^2 - u^2 + v^2; G_M = 1 is the
/// transition hypersurface, G_M < 1 the asymmetric side.
double gm_value(double p_phi, double u, double v, double M);

/// Critical field ratio: G_M(p, u_crit, v) = 1.
double u_crit(double v, double p_phi, double M);

/// Boundary angular momentum of the A family: p_max = d(u,v) h_{M,-4}(v).
double p_max(double u, double v, double M);

AsymmetricState asymmetric_state(double u, double v, double p_phi, double M);

enum class VstarMethod { Bisect, ClosedM1, Series };

/// The unique v* in (0, sqrt(1+u^2)] with G_M(p, u, v*) = 1.
///   Bisect   — monotone bisection, works everywhere (default).
///   ClosedM1 — M = 1 quartic resolvent in closed form.
///   Series   — truncated inverse-series branches; outside their validated
///              region this falls back to bisection.
double vstar(double p_phi, double u, double M, VstarMethod method = VstarMethod::Bisect);

SymmetricState symmetric_state(double p_phi, double u, double M);

/// Classical center-of-mass equilibrium energy sqrt(1+u^2)|p*| - u p*.
double cm_equilibrium_energy(double p_phi_star, double u);

/// Ground configuration over p_phi at fixed (u, v): the A state at p = 0 for
/// v <= 1, else the diamagnetic S band state at p = u.
MinimalState minimal_state(double u, double v, double M);

/// Field increment that advances L_z by one hbar on the minimal band:
/// B_bullet = q_dia * B_dia, in Tesla.
double b_bullet(const MaterialSpec& mat, const TrapSpec& trap);

/// Effective potential of the reduced relative motion,
///   V = p^2/(2 rho^2) + (1+u^2) rho^2/2 - u p + v^2 z^2/2 + r^-M / M.
/// The centrifugal term is dropped identically at p_phi = 0.
double reduced_potential(double rho, double z, double p_phi, double u, double v, double M);

} // namespace qdot
