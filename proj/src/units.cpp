#include "qdot/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdot/constants.hpp"
#include "qdot/errors.hpp"

namespace qdot {

namespace {

void require_positive(double x, const char* name) {
    if (!(x > 0.0))
        throw std::domain_error(std::string(name) + " must be positive");
}

void validate(const MaterialSpec& mat) {
    require_positive(mat.mass_ratio, "mass_ratio");
    require_positive(mat.epsilon_r, "epsilon_r");
    require_positive(mat.g_star_abs, "g_star_abs");
}

void validate(const TrapSpec& trap) {
    require_positive(trap.hw_rho_mev, "hw_rho_mev");
    require_positive(trap.hw_z_mev, "hw_z_mev");
    require_positive(trap.M, "M");
    if (trap.beta_override && !(*trap.beta_override > 0.0))
        throw std::domain_error("beta must be positive");
}

} // namespace

double power_scale(double M, double k, double x) {
    if (!(x > 0.0))
        throw std::domain_error("power_scale: x must be positive");
    if (!(M > -2.0))
        throw std::domain_error("power_scale: M must exceed -2");
    return std::pow(x, k / (M + 2.0));
}

double power_scale(double M, double k) { return power_scale(M, k, M); }

double resolve_beta(const MaterialSpec& mat, const TrapSpec& trap) {
    validate(mat);
    validate(trap);
    if (trap.beta_override)
        return *trap.beta_override;
    if (trap.M == 1.0)
        return constants::fine_structure / mat.epsilon_r;
    throw std::domain_error("beta_override is required for M != 1");
}

ScaleSet scales_from_physical(const MaterialSpec& mat, const TrapSpec& trap) {
    const double beta = resolve_beta(mat, trap);
    const double M = trap.M;

    const double gamma =
        mat.mass_ratio * constants::electron_rest_energy_mev / (2.0 * trap.hw_rho_mev);

    // L_dia/hbar = h_{M,-2s} beta^{2/(M+2)} gamma^{M/(M+2)} with s = -1.
    const double L = power_scale(M, -2.0 * scale_exponent_s) *
                     power_scale(M, 2.0, beta) * power_scale(M, M, gamma);

    const double q_dia = 1.0 / L;
    const double E_dia_mev = trap.hw_rho_mev / q_dia;

    // B_dia = 2 m* omega_rho / e, with omega_rho = (hbar omega_rho)/hbar.
    const double omega_rho = trap.hw_rho_mev * constants::mev_to_joule / constants::hbar_js;
    const double B_dia = 2.0 * mat.mass_ratio * constants::electron_mass_kg * omega_rho /
                         constants::elementary_charge_c;

    const double E_S = (mat.g_star_abs * q_dia) * mat.mass_ratio;

    return ScaleSet{beta, gamma, L, q_dia, E_dia_mev, B_dia, E_S};
}

double field_to_u(double B_tesla, const ScaleSet& s) {
    if (B_tesla < 0.0)
        throw std::domain_error("field_to_u: B must be >= 0 (apply the (p,u) -> (-p,-u) reflection instead)");
    return B_tesla / s.B_dia_tesla;
}

double u_to_field(double u, const ScaleSet& s) {
    if (u < 0.0)
        throw std::domain_error("u_to_field: u must be >= 0");
    return u * s.B_dia_tesla;
}

ModelPoint model_point(const MaterialSpec& mat, const TrapSpec& trap, double B_tesla) {
    const ScaleSet s = scales_from_physical(mat, trap);
    return ModelPoint{field_to_u(B_tesla, s), trap.hw_z_mev / trap.hw_rho_mev, trap.M, s.q_dia};
}

} // namespace qdot
