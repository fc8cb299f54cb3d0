#include "qdot/equilibria.hpp"

#include <cmath>
#include <stdexcept>

#include "qdot/errors.hpp"
#include "qdot/series.hpp"

namespace qdot {

namespace {

void require_u_nonneg(double u) {
    if (u < 0.0)
        throw std::domain_error("u must be >= 0; apply the (p,u) -> (-p,-u) reflection");
}

double rel_energy_prefactor(double M) { return 0.5 * (1.0 + 2.0 / M); }

} // namespace

double deficit(double u, double v) {
    const double d2 = 1.0 + u * u - v * v;
    if (d2 < 0.0)
        throw out_of_family_error(out_of_family_error::Reason::no_deficit,
                                  "deficit: 1 + u^2 < v^2, asymmetric family absent");
    return std::sqrt(d2);
}

double gm_value(double p_phi, double u, double v, double M) {
    return power_scale(M, 8.0, v) * p_phi * p_phi - u * u + v * v;
}

double u_crit(double v, double p_phi, double M) {
    const double arg = power_scale(M, 8.0, v) * p_phi * p_phi - 1.0 + v * v;
    if (arg < 0.0)
        throw std::domain_error("u_crit: no critical field, G_M < 1 already at u = 0");
    return std::sqrt(arg);
}

double p_max(double u, double v, double M) {
    require_u_nonneg(u);
    const double d = deficit(u, v);
    if (d == 0.0)
        throw out_of_family_error(out_of_family_error::Reason::no_deficit,
                                  "p_max: d(u,v) = 0, asymmetric family absent");
    return d * power_scale(M, -4.0, v);
}

AsymmetricState asymmetric_state(double u, double v, double p_phi, double M) {
    require_u_nonneg(u);
    const double d = deficit(u, v); // throws when d^2 < 0
    if (d == 0.0)
        throw out_of_family_error(out_of_family_error::Reason::no_deficit,
                                  "asymmetric_state: d(u,v) = 0");

    const double pm = d * power_scale(M, -4.0, v);
    const double ap = std::fabs(p_phi);
    if (ap >= pm)
        throw out_of_family_error(out_of_family_error::Reason::momentum_at_boundary,
                                  "asymmetric_state: |p_phi| >= p_max(u,v,M)");

    const double rho = std::sqrt(ap / d);
    const double z = std::sqrt((pm - ap) / d);
    const double r = power_scale(M, -2.0, v);
    const double energy =
        rel_energy_prefactor(M) * power_scale(M, 2.0 * M, v) + d * ap - u * p_phi;
    return AsymmetricState{p_phi, rho, z, r, energy};
}

namespace {

// Monotone bracket function for v*: h_{M,8}(w) p^2 + w^2, strictly increasing
// on (0, sqrt(1+u^2)].
double vstar_bisect(double p_phi, double u, double M) {
    const double A = 1.0 + u * u;
    const double hi0 = std::sqrt(A);
    const double p2 = p_phi * p_phi;
    if (p2 == 0.0)
        return hi0;

    const double e8 = 8.0 / (M + 2.0);
    auto f = [&](double w) { return std::pow(w, e8) * p2 + w * w - A; };

    double lo = 1e-12 * hi0;
    double hi = hi0;
    if (f(lo) >= 0.0)
        return lo; // p astronomically large; clamp at the bracket edge
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Closed-form v* for M = 1 via the resolvent of A Z^4 - Z - p^2 = 0,
// Z = v*^{-2/3}. The auxiliary s is evaluated in rationalized form,
//   s = 18 Q^2 / (2^{1/3} (Q^4 + Q^2 c + c^2)),  c = 12 * 2^{2/3} A p^2,
// which avoids the catastrophic cancellation of the printed difference at
// large p (s > 0 holds identically).
double vstar_closed_m1(double p_phi, double u) {
    const double A = 1.0 + u * u;
    const double p2 = p_phi * p_phi;
    if (p2 == 0.0)
        return std::sqrt(A);

    const double p6 = p2 * p2 * p2;
    const double W = std::sqrt(729.0 * A * A + 6912.0 * p6 * A * A * A);
    const double Q = std::cbrt(27.0 * A + W);
    const double Q2 = Q * Q;
    const double c = 12.0 * std::cbrt(4.0) * A * p2;
    const double s = 18.0 * Q2 / (std::cbrt(2.0) * (Q2 * Q2 + Q2 * c + c * c));

    const double rs = std::sqrt(s);
    const double Z = 0.5 * rs + 0.5 * std::sqrt(-s + 2.0 / (rs * A));
    return std::pow(Z, -1.5);
}

} // namespace

double vstar(double p_phi, double u, double M, VstarMethod method) {
    require_u_nonneg(u);
    if (!(M > 0.0))
        throw std::domain_error("vstar: M must be positive");

    switch (method) {
    case VstarMethod::Bisect:
        return vstar_bisect(p_phi, u, M);
    case VstarMethod::ClosedM1:
        if (M != 1.0)
            throw std::invalid_argument("vstar: closed form is specific to M = 1");
        return vstar_closed_m1(p_phi, u);
    case VstarMethod::Series:
        try {
            return vstar_series_auto(p_phi, u, M);
        } catch (const series_domain_error&) {
            // outside the validated truncation region; bisection always works
            return vstar_bisect(p_phi, u, M);
        }
    }
    throw std::logic_error("vstar: unknown method");
}

SymmetricState symmetric_state(double p_phi, double u, double M) {
    require_u_nonneg(u);
    const double vs = vstar(p_phi, u, M);
    const double rho = power_scale(M, -2.0, vs);

    const double d2 = 1.0 + u * u - vs * vs;
    const double d = std::sqrt(d2 > 0.0 ? d2 : 0.0);
    const double eps = (p_phi < 0.0) ? -1.0 : 1.0; // sign(0) := +1; d = 0 there anyway
    const double energy = rel_energy_prefactor(M) * power_scale(M, 2.0 * M, vs) +
                          power_scale(M, -4.0, vs) * d * (d - eps * u);
    return SymmetricState{p_phi, vs, rho, energy};
}

double cm_equilibrium_energy(double p_phi_star, double u) {
    require_u_nonneg(u);
    return std::sqrt(1.0 + u * u) * std::fabs(p_phi_star) - u * p_phi_star;
}

MinimalState minimal_state(double u, double v, double M) {
    require_u_nonneg(u);
    if (!(v > 0.0))
        throw std::domain_error("minimal_state: v must be positive");
    if (v <= 1.0)
        return MinimalState{0.0, 0.0, rel_energy_prefactor(M) * power_scale(M, 2.0 * M, v),
                            Family::A};
    return MinimalState{u, 1.0, rel_energy_prefactor(M), Family::S};
}

double b_bullet(const MaterialSpec& mat, const TrapSpec& trap) {
    const ScaleSet s = scales_from_physical(mat, trap);
    return s.q_dia * s.B_dia_tesla;
}

double reduced_potential(double rho, double z, double p_phi, double u, double v, double M) {
    const double r2 = rho * rho + z * z;
    if (r2 == 0.0)
        throw std::domain_error("reduced_potential: singular at r = 0");
    if (p_phi != 0.0 && !(rho > 0.0))
        throw std::domain_error("reduced_potential: rho must be > 0 when p_phi != 0");

    double val = 0.5 * (1.0 + u * u) * rho * rho - u * p_phi + 0.5 * v * v * z * z +
                 std::pow(r2, -0.5 * M) / M;
    if (p_phi != 0.0)
        val += 0.5 * p_phi * p_phi / (rho * rho);
    return val;
}

} // namespace qdot
