#include "qdot/scaling_groups.hpp"

#include <cmath>
#include <stdexcept>

namespace qdot {

G4Result g4_action(double a, const MaterialSpec& mat, const TrapSpec& trap, double B_tesla) {
    if (!(a > 0.0))
        throw std::domain_error("g4_action: a must be positive");

    const double beta = resolve_beta(mat, trap);

    MaterialSpec m2 = mat;
    m2.mass_ratio *= a * a;
    m2.g_star_abs /= a * a;

    TrapSpec t2 = trap;
    t2.beta_override = beta * std::pow(a, -trap.M);

    return G4Result{m2, t2, B_tesla * a * a};
}

TrapSpec g7_map(double target_M, const MaterialSpec& mat, const TrapSpec& trap) {
    if (!(target_M > 0.0))
        throw std::domain_error("g7_map: target_M must be positive");

    const double M = trap.M;
    const double L = target_M;
    const double beta = resolve_beta(mat, trap);
    const double gamma = scales_from_physical(mat, trap).gamma;

    // beta_L = L^s h_{M,-L-2}^s h_{M,M-L}(gamma/beta) beta, s = -1.  Holding
    // gamma fixed this keeps L_dia (hence q_dia) invariant, which is the
    // defining property of the map.
    const double beta_L = power_scale(M, L + 2.0) / L *
                          power_scale(M, M - L, gamma / beta) * beta;

    TrapSpec t2 = trap;
    t2.M = L;
    t2.beta_override = beta_L;
    return t2;
}

double display_factor(double M) {
    if (!(M > 0.0))
        throw std::domain_error("display_factor: M must be positive");
    return 3.0 / (1.0 + M / 2.0);
}

double classical_limit_factor(double M) {
    if (!(M > 0.0))
        throw std::domain_error("classical_limit_factor: M must be positive");
    return 3.0 * M / (M + 2.0);
}

} // namespace qdot
