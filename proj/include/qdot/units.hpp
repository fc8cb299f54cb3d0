#pragma once

// Conversion between physical trap/material parameters and the dimensionless
// working scales. Two identical charged particles in a 3D axially symmetric
// parabolic trap, repelling through alpha_M * r^-M, in a perpendicular
// magnetic field.  The working variables are
//
//   u = omega_L / omega_rho      (Larmor over lateral confinement)
//   v = omega_z / omega_rho      (trap anisotropy)
//   q_dia = hbar / L_dia         (quantum-strength factor; q_dia -> 0 is the
//                                 classical limit)
//
// with the action scale L_dia = h_{M,2}(M) beta^{2/(M+2)} gamma^{M/(M+2)} hbar
// built from the dimensionless interaction strength beta and
// gamma = m* c^2 / (2 hbar omega_rho).  Energies are quoted in
// E_dia = hbar omega_rho / q_dia and fields in B_dia = 2 m* omega_rho / e.

#include <optional>

namespace qdot {

/// Material parameters; GaAs bulk values are mass_ratio = 0.067,
/// epsilon_r = 12, g_star_abs = 0.3.
struct MaterialSpec {
    double mass_ratio;  // m*/m_e
    double epsilon_r;   // relative permittivity
    double g_star_abs;  // |g*|
};

/// Trap and interaction parameters. For M = 1 (Coulomb) beta defaults to
/// alpha/epsilon_r; any other exponent requires beta_override.
struct TrapSpec {
    double hw_rho_mev;  // hbar omega_rho [meV]
    double hw_z_mev;    // hbar omega_z  [meV]
    double M;           // interaction exponent, > 0
    std::optional<double> beta_override;
};

/// Derived dimensionless scales of one (material, trap) pair.
struct ScaleSet {
    double beta;
    double gamma;
    double L_dia_over_hbar;
    double q_dia;        // hbar / L_dia
    double E_dia_mev;    // energy unit
    double B_dia_tesla;  // magnetic unit
    double E_S;          // Zeeman scale |g*| q_dia (m*/m_e)
};

/// The dimensionless working point consumed by the spectra layer.
struct ModelPoint {
    double u;      // >= 0 (reflection (p,u) -> (-p,-u) is left to callers)
    double v;      // > 0
    double M;      // > 0
    double q_dia;  // > 0
};

/// Auxiliary exponent of the scale family; all printed equilibrium formulas
/// assume this value. Not a parameter.
inline constexpr double scale_exponent_s = -1.0;

/// h_{M,k}(x) = x^(k/(M+2)). Requires x > 0, M > -2.
double power_scale(double M, double k, double x);

/// h_{M,k} evaluated at x = M itself.
double power_scale(double M, double k);

/// beta from the override, or alpha/epsilon_r when M = 1.
double resolve_beta(const MaterialSpec& mat, const TrapSpec& trap);

ScaleSet scales_from_physical(const MaterialSpec& mat, const TrapSpec& trap);

/// u = B / B_dia.  B >= 0.
double field_to_u(double B_tesla, const ScaleSet& s);

/// B = u * B_dia.  u >= 0.
double u_to_field(double u, const ScaleSet& s);

/// Bundle (u, v, M, q_dia) for a physical configuration at field B.
ModelPoint model_point(const MaterialSpec& mat, const TrapSpec& trap, double B_tesla);

} // namespace qdot
