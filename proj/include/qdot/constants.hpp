#pragma once

// Frozen CODATA 2018 values. Everything downstream derives from this table so
// outputs are bit-reproducible across builds.

namespace qdot::constants {

/// m_e c^2 in meV (0.51099895000 MeV).
inline constexpr double electron_rest_energy_mev = 5.1099895000e8;

/// hbar [J s]
inline constexpr double hbar_js = 1.054571817e-34;

/// elementary charge [C]
inline constexpr double elementary_charge_c = 1.602176634e-19;

/// electron mass [kg]
inline constexpr double electron_mass_kg = 9.1093837015e-31;

/// fine-structure constant (1/137.035999084)
inline constexpr double fine_structure = 7.2973525693e-3;

/// meV -> Joule
inline constexpr double mev_to_joule = 1.0e-3 * elementary_charge_c;

} // namespace qdot::constants
