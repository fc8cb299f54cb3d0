#pragma once

// Table and scalar-report builders behind the CLI subcommands. Everything is
// returned as a string so the emitters stay testable; numeric fields go
// through fmt_g12 (12 significant digits, deterministic bytes).

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qdot/config_io.hpp"
#include "qdot/units.hpp"

namespace qdot::reports {

struct Range {
    double lo, hi;
    int n; // inclusive point count, >= 1
};

struct StepRange {
    double lo, hi, step;
};

struct SurfaceGrid {
    Range rho;
    Range z;
};

Range parse_range(const std::string& s);           // "lo:hi:n"
StepRange parse_step_range(const std::string& s);  // "lo:hi:step"
SurfaceGrid parse_grid(const std::string& s);      // "rho:lo:hi:n,z:lo:hi:n"

/// Scale report: q_dia, E_dia, B_dia, B_bullet, E_S, beta, gamma, L_dia/hbar.
/// Optional G4 parameter and/or G7 target exponent are applied first.
std::string convert_json(const PhysicalConfig& cfg, std::optional<double> g4_a = {},
                         std::optional<double> map_M = {});

/// CSV (rho, z, E_Edia) of the reduced potential on a grid.
std::string surface_csv(double u, double v, double p_phi, double M, const SurfaceGrid& g);

/// CSV (v, z, E_Edia) at fixed rho = rho_S(v*) and p = p_max(u, v*, M):
/// the section used to display the bifurcation in the (v, z) plane.
std::string surface_section_csv(double u, double v_star, double M, const Range& v_range,
                                const Range& z_range);

/// CSV (u, p_phi, E_S_Edia) over a grid, followed by a blank line and a
/// contour table (kind, v_star, u, p_phi) holding the requested v* contours
/// plus the minimal band p = u.
std::string phase_diagram_csv(const Range& u_range, const Range& p_range, double M,
                              const std::vector<double>& vstar_contours);

/// CSV (B_tesla, u, M, m_opt, M_S, E_add_mev, E_add_Edia, E_add_norm) of the
/// ground-state additional energy versus field. With map_M, one block per
/// exponent (the trap mapped by G7); E_add_norm carries the cross-M
/// normalization classical_limit_factor(M) * E_add.
std::string eadd_csv(const PhysicalConfig& cfg, const StepRange& b_range,
                     const std::vector<double>& map_M = {});

/// CSV (B_tesla, u, m, M_S, family, E_add_Edia, E_add_mev, near_critical) of
/// every quantizable m branch, so level crossings are recoverable.
std::string spectrum_csv(const PhysicalConfig& cfg, const StepRange& b_range, int m_max);

/// v* by one method, or all applicable methods with deltas when compare.
std::string vstar_json(double p_phi, double u, double M, const std::string& method,
                       bool compare);

/// Family, frequencies, mixing angle, stability tag, CM modes.
std::string modes_json(double u, double v, double p_phi, double M);

/// Coefficient table of the principal inverse branch for exponent M; exact
/// integers/rationals when the forward coefficients are integral, else
/// 12-significant-digit decimals.
std::string series_table(double M, int terms);

/// Reversion table for a user-supplied coefficient list.
std::string series_table_coeffs(const std::vector<double>& coeffs);

/// Run the randomized oracle suite, print the pass/fail table; returns the
/// process exit code (0 or 4).
int run_verify(std::ostream& os, std::uint64_t seed, int n_samples);

} // namespace qdot::reports
