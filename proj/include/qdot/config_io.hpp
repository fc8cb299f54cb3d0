#pragma once

// Flat key-value config files and deterministic numeric formatting.
//
// Config keys: m_star_ratio, epsilon_r, g_star, hw_rho_mev, hw_z_mev, M,
// beta (optional). Lines are `key = value` or `key value`; '#' starts a
// comment. Parse failures throw config_error carrying the 1-based line.

#include <string>

#include "qdot/units.hpp"

namespace qdot {

struct PhysicalConfig {
    MaterialSpec material;
    TrapSpec trap;
};

PhysicalConfig parse_config_text(const std::string& text);
PhysicalConfig load_config(const std::string& path);

/// 12 significant digits, C locale, always with a decimal point. Identical
/// bytes across runs.
std::string fmt_g12(double x);

} // namespace qdot
