#pragma once

namespace vacqkd {

// SI constants, pinned here and nowhere else. They enter only through
// temperature / thermal-occupancy conversions; everything else works in
// natural units (hbar = c = 1) with angular frequencies in rad/s.
inline constexpr double hbar_si = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann_si = 1.380649e-23;  // J / K

inline constexpr double pi = 3.14159265358979323846;

}  // namespace vacqkd
