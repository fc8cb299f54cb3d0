#pragma once

// Harmonically quantized level energies and the ground-state scan over the
// magnetic field. Angular momenta are quantized as p_phi = m q_dia and
// p_phi* = m* q_dia; the center-of-mass ladder is the Fock-Darwin spectrum.
// The additional (charging) energy is
//
//   E_add = -E_CM(k* = 0) + E_rel(k, m) + u E_S M_S        [E_dia units]
//
// and antisymmetric ground levels with k_z = 0 carry M_S = -mod2(m).

#include <span>
#include <vector>

#include "qdot/equilibria.hpp"
#include "qdot/units.hpp"

namespace qdot {

struct LevelIndex {
    int k_rho = 0, k_z = 0;           // relative-motion oscillator numbers
    int m = 0;                        // relative orbital quantum number
    int k_rho_star = 0, k_z_star = 0; // center-of-mass oscillator numbers
    int m_star = 0;                   // center-of-mass orbital quantum number
    int M_S = 0;                      // total-spin projection, 0 or +/-1
};

struct LevelEnergy {
    double total;       // cm_part + rel_part + zeeman_part
    double cm_part;
    double rel_part;
    double zeeman_part;
    Family family;
};

/// Fock-Darwin ladder of the center of mass:
/// [sqrt(1+u^2)(|m*| + 2 k_rho* + 1) - u m* + (1/2 + k_z*) v] q_dia.
double cm_level_energy(const LevelIndex& idx, double u, double v, double q_dia);

struct RelLevel {
    double energy;
    Family family;
};

/// Classical family energy at p = m q_dia plus the harmonic ladder
/// q_dia * sum Omega (k + 1/2). Saddles (S_minus) and boundary zero modes
/// cannot be quantized and raise unstable_state_error.
RelLevel relative_level_energy(const LevelIndex& idx, const ModelPoint& pt);

LevelEnergy total_energy(const LevelIndex& idx, const ModelPoint& pt, double E_S);

/// E_add in E_dia units; the CM reference level uses k* = (0,0,0).
double additional_energy(const LevelIndex& idx, const ModelPoint& pt, double E_S);

struct GroundPoint {
    double u;
    int m;
    int M_S;
    double e_add;        // E_dia units
    bool near_critical;  // |u - u_crit(v, m q_dia, M)| < 0.05: harmonic result advisory
    bool window_warning; // argmin hit the scan ceiling m_max
};

/// Ground state at a single field point: minimize the total energy over
/// m in [0, m_max] with k = 0, k_z = 0, M_S = -mod2(m). Ties break toward
/// smaller m. m_max defaults to ceil(3u/q_dia) + 20 when negative.
GroundPoint ground_state_at(double u, double v, double q_dia, double M, double E_S,
                            int m_max = -1);

/// Ground-state scan over an ascending u grid.
std::vector<GroundPoint> ground_state_scan(std::span<const double> u_grid, double v,
                                           double q_dia, double M, double E_S);

/// Field at which the minimal band carries L_z = n hbar: B = n * B_bullet.
double momentum_staircase(const ScaleSet& s, int L_z_over_hbar);

} // namespace qdot
