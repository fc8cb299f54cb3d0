#pragma once

// Independent brute-force verification of the analytic results: grid search
// plus derivative-free local refinement of the reduced potential, central
// finite differences, and numerical normal modes. Used by the test suite and
// the `verify` subcommand; never by production paths.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qdot::oracle {

using Fn2 = std::function<double(double, double)>;

struct GridSpec {
    double rho_lo = 1e-3;
    double rho_hi = 5.0;
    int n_rho = 400; // log-spaced
    int n_z = 400;   // linear on [0, 3 * r_A guess]
};

struct MinimizeResult {
    double rho;
    double z;
    double energy;
    double grad_norm;
    bool converged; // gradient norm below 1e-8 after refinement
};

/// Global minimum of the reduced potential over the z = 0 line and the
/// interior (and the rho = 0 axis when p_phi = 0).
MinimizeResult minimize_veff(double u, double v, double p_phi, double M,
                             const GridSpec& grid = {});

/// Central-difference gradient; h_i defaults to 1e-5 max(1, |x_i|) when h <= 0.
std::array<double, 2> fd_gradient(const Fn2& f, std::array<double, 2> x, double h = 0.0);

/// Central-difference Hessian, same stepping convention.
std::array<std::array<double, 2>, 2> fd_hessian(const Fn2& f, std::array<double, 2> x,
                                                double h = 0.0);

/// Frequencies from the FD Hessian of the reduced potential at a given point
/// (the kinetic part is (p_rho^2 + p_z^2)/2, so frequencies^2 are the Hessian
/// eigenvalues). A negative eigenvalue lambda is reported as -sqrt(-lambda).
std::pair<double, double> numeric_modes(double u, double v, double p_phi, double M,
                                        double rho, double z);

struct CheckRow {
    std::string name;
    double worst;
    double tolerance;
    bool pass;
};

struct VerifyReport {
    std::vector<CheckRow> rows;
    bool all_pass;
};

/// Seeded randomized equivalence suite: analytic equilibria and modes of both
/// families against brute-force minimization and FD Hessians. Deterministic
/// for a fixed seed.
VerifyReport run_verification(std::uint64_t seed = 20240915, int n_samples = 200);

} // namespace qdot::oracle
