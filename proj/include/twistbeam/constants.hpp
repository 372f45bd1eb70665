#pragma once

// Hartree atomic units throughout: a0 = hbar = m_e = 1, charges in units of e.
// Lengths are in a0, wavenumbers in 1/a0, energies in Hartree.

namespace twistbeam::constants {

inline constexpr double speed_of_light = 137.035999;            // 1/alpha
inline constexpr double proton_electron_mass_ratio = 1836.15267;
inline constexpr double atom_total_mass = 1.0 + proton_electron_mass_ratio;

} // namespace twistbeam::constants
