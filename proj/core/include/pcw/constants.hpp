#pragma once

#include <numbers>

namespace pcw::constants {

// All unit conversions live here; lengths are nm and angles are rad everywhere
// inside the library, frequencies are rad/s in SI.
inline constexpr double speed_of_light_mps = 299792458.0;
inline constexpr double nm_to_m = 1e-9;
inline constexpr double m_to_nm = 1e9;
inline constexpr double nm3_to_m3 = 1e-27;
inline constexpr double um_to_nm = 1e3;
inline constexpr double nm_to_um = 1e-3;

inline constexpr double pi = std::numbers::pi;

inline constexpr double degrees_to_radians(double deg) { return deg * pi / 180.0; }
inline constexpr double radians_to_degrees(double rad) { return rad * 180.0 / pi; }

} // namespace pcw::constants
