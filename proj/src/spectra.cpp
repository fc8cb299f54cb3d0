#include "qdot/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "qdot/errors.hpp"
#include "qdot/modes.hpp"

namespace qdot {

double cm_level_energy(const LevelIndex& idx, double u, double v, double q_dia) {
    if (u < 0.0)
        throw std::domain_error("cm_level_energy: u must be >= 0");
    if (idx.k_rho_star < 0 || idx.k_z_star < 0)
        throw std::domain_error("cm_level_energy: oscillator numbers must be >= 0");
    return (std::sqrt(1.0 + u * u) * (std::abs(idx.m_star) + 2 * idx.k_rho_star + 1) -
            u * idx.m_star + (0.5 + idx.k_z_star) * v) *
           q_dia;
}

RelLevel relative_level_energy(const LevelIndex& idx, const ModelPoint& pt) {
    if (idx.k_rho < 0 || idx.k_z < 0)
        throw std::domain_error("relative_level_energy: oscillator numbers must be >= 0");
    const double p = idx.m * pt.q_dia;

    if (gm_value(p, pt.u, pt.v, pt.M) < 1.0) {
        const AsymmetricState st = asymmetric_state(pt.u, pt.v, p, pt.M);
        const ModeSet ms = a_modes(pt.u, pt.v, p, pt.M);
        const double e = st.energy + pt.q_dia * (ms.omega_hi * (idx.k_rho + 0.5) +
                                                 ms.omega_lo * (idx.k_z + 0.5));
        return RelLevel{e, Family::A};
    }

    const SymmetricState st = symmetric_state(p, pt.u, pt.M);
    const ModeSet ms = s_modes(pt.u, pt.v, p, pt.M);
    if (ms.stability != StabilityTag::S_plus)
        throw unstable_state_error(
            ms.stability == StabilityTag::S_minus
                ? "relative_level_energy: cannot quantize a saddle (S_minus)"
                : "relative_level_energy: zero mode at the family boundary");

    const double omega_rho = std::sqrt(4.0 * (1.0 + pt.u * pt.u) +
                                       (pt.M - 2.0) * st.v_star * st.v_star);
    const double omega_z = std::sqrt(ms.soft_sq);
    const double e = st.energy + pt.q_dia * (omega_rho * (idx.k_rho + 0.5) +
                                             omega_z * (idx.k_z + 0.5));
    return RelLevel{e, Family::S};
}

LevelEnergy total_energy(const LevelIndex& idx, const ModelPoint& pt, double E_S) {
    const double cm = cm_level_energy(idx, pt.u, pt.v, pt.q_dia);
    const RelLevel rel = relative_level_energy(idx, pt);
    const double zeeman = pt.u * E_S * idx.M_S;
    return LevelEnergy{cm + rel.energy + zeeman, cm, rel.energy, zeeman, rel.family};
}

double additional_energy(const LevelIndex& idx, const ModelPoint& pt, double E_S) {
    LevelIndex ref; // k* = (0,0,0)
    const double cm_ref = cm_level_energy(ref, pt.u, pt.v, pt.q_dia);
    const RelLevel rel = relative_level_energy(idx, pt);
    return -cm_ref + rel.energy + pt.u * E_S * idx.M_S;
}

GroundPoint ground_state_at(double u, double v, double q_dia, double M, double E_S,
                            int m_max) {
    if (u < 0.0)
        throw std::domain_error("ground_state_at: u must be >= 0");
    if (m_max < 0)
        m_max = static_cast<int>(std::ceil(3.0 * u / q_dia)) + 20;

    int best_m = -1;
    double best = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        LevelIndex idx;
        idx.m = m;
        idx.M_S = -(m % 2);
        double e;
        try {
            e = additional_energy(idx, ModelPoint{u, v, M, q_dia}, E_S);
        } catch (const unstable_state_error&) {
            continue; // saddles are not valid levels
        }
        if (best_m < 0 || e < best) { // strict: ties keep the smaller m
            best_m = m;
            best = e;
        }
    }
    if (best_m < 0)
        throw std::runtime_error("ground_state_at: no quantizable level in the window");

    bool near_crit = false;
    try {
        near_crit = std::fabs(u - u_crit(v, best_m * q_dia, M)) < 0.05;
    } catch (const std::domain_error&) {
        near_crit = false;
    }
    return GroundPoint{u, best_m, -(best_m % 2), best, near_crit, best_m == m_max};
}

std::vector<GroundPoint> ground_state_scan(std::span<const double> u_grid, double v,
                                           double q_dia, double M, double E_S) {
    std::vector<GroundPoint> out;
    out.reserve(u_grid.size());
    for (double u : u_grid)
        out.push_back(ground_state_at(u, v, q_dia, M, E_S));
    return out;
}

double momentum_staircase(const ScaleSet& s, int L_z_over_hbar) {
    if (L_z_over_hbar < 0)
        throw std::domain_error("momentum_staircase: L_z must be >= 0");
    return L_z_over_hbar * (s.q_dia * s.B_dia_tesla);
}

} // namespace qdot
