#include "qdot/modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdot/equilibria.hpp"
#include "qdot/errors.hpp"

namespace qdot {

namespace {

// v = v* sits exactly on the bifurcation set; classify within this band so a
// floating-point p_max lands on S_zero. A few ulps of v* resolution suffice;
// wider bands would swallow legitimately soft neighbours.
constexpr double kZeroBand = 1e-14;

StabilityTag s_subtag(double v, double v_star) {
    const double diff = v - v_star;
    if (std::fabs(diff) <= kZeroBand * std::max(1.0, v))
        return StabilityTag::S_zero;
    return diff > 0.0 ? StabilityTag::S_plus : StabilityTag::S_minus;
}

} // namespace

std::pair<double, double> cm_modes(double u, double v) {
    if (u < 0.0)
        throw std::domain_error("cm_modes: u must be >= 0");
    return {2.0 * std::sqrt(1.0 + u * u), v};
}

ModeSet a_modes(double u, double v, double p_phi, double M) {
    const AsymmetricState st = asymmetric_state(u, v, p_phi, M); // validates the domain
    const double d = deficit(u, v);
    const double ap = std::fabs(p_phi);

    const double W = (M + 2.0) * power_scale(M, 2.0 * (4.0 + M), v);
    const double trace = 4.0 * (1.0 + u * u) + (M - 2.0) * v * v;
    const double diag_gap = 4.0 * (1.0 + u * u) - (6.0 + M) * v * v;
    const double delta_sq = 16.0 * (M + 2.0) * power_scale(M, 2.0 * (4.0 + M), v) * d * ap;

    const double disc = std::sqrt(diag_gap * diag_gap + delta_sq);
    const double hi_sq = 0.5 * (trace + disc);
    // det = 4 d W (p_max - |p|) vanishes linearly at the boundary; dividing it
    // out beats the cancellation in (trace - disc)/2
    const double det = 4.0 * d * W * (p_max(u, v, M) - ap);
    const double lo_sq = std::max(det / hi_sq, 0.0);

    // Hessian elements for the mixing angle
    const double a_el = W * st.rho * st.rho;
    const double k_rr = a_el + 4.0 * d * d;
    const double k_zz = (M + 2.0) * v * v - a_el;
    const double k_rz = W * st.rho * st.z;
    const double phi = 0.5 * std::atan2(2.0 * k_rz, k_rr - k_zz);

    return ModeSet{std::sqrt(hi_sq), std::sqrt(lo_sq), phi, StabilityTag::A, lo_sq};
}

ModeSet s_modes(double u, double v, double p_phi, double M) {
    if (!(v > 0.0))
        throw std::domain_error("s_modes: v must be positive");
    const double vs = vstar(p_phi, u, M);
    const double omega_z_sq = v * v - vs * vs; // signed
    const double omega_rho = std::sqrt(4.0 * (1.0 + u * u) + (M - 2.0) * vs * vs);

    const StabilityTag tag = s_subtag(v, vs);
    if (tag == StabilityTag::S_minus)
        return ModeSet{omega_rho, 0.0, 0.0, tag, omega_z_sq};

    const double omega_z = std::sqrt(std::max(omega_z_sq, 0.0));
    return ModeSet{std::max(omega_rho, omega_z), std::min(omega_rho, omega_z), 0.0, tag,
                   omega_z_sq};
}

StabilityTag classify_state(double u, double v, double p_phi, double M) {
    if (u < 0.0)
        throw std::domain_error("classify_state: u must be >= 0");
    if (!(v > 0.0))
        throw std::domain_error("classify_state: v must be positive");
    if (gm_value(p_phi, u, v, M) < 1.0)
        return StabilityTag::A;
    return s_subtag(v, vstar(p_phi, u, M));
}

std::pair<double, double> lambda_profile(double v, double p_phi, double M, double delta_u) {
    if (delta_u < 0.0)
        throw std::domain_error("lambda_profile: delta_u must be >= 0");
    const double u_bar = u_crit(v, p_phi, M); // throws when undefined

    const double z_m = 4.0 * p_phi * p_phi * power_scale(M, 8.0, v) / (2.0 + M);
    const double v_prime = u_bar * v / (v * v + z_m);
    const double amp = std::sqrt(v * v_prime);

    const double s_side = amp * std::sqrt(2.0 * delta_u);
    const double a_side = amp * 2.0 * std::sqrt(delta_u);
    return {s_side, a_side};
}

} // namespace qdot
