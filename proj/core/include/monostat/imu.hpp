#pragma once

#include <cmath>
#include <stdexcept>

namespace monostat {

/// Passive-fixture angular precision: arctan(tolerance / scale), in degrees.
inline double imu_precision_degrees(double tolerance_mm, double scale_mm) {
    if (!(scale_mm > 0.0)) throw std::invalid_argument("imu: scale must be > 0");
    if (!(tolerance_mm >= 0.0)) throw std::invalid_argument("imu: tolerance must be >= 0");
    return std::atan2(tolerance_mm, scale_mm) * 180.0 / M_PI;
}

inline double degrees_to_arcsec(double degrees) { return degrees * 3600.0; }

}  // namespace monostat
