#pragma once

#include <cmath>
#include <string>

namespace ffgain {

// Exact SI value; every wavelength in the library derives from this.
constexpr double speed_of_light() { return 299792458.0; }

constexpr double pi = 3.14159265358979323846;

inline double wavelength(double frequency_hz) {
    return speed_of_light() / frequency_hz;
}

inline double db_from_linear_power(double p) { return 10.0 * std::log10(p); }
inline double linear_power_from_db(double db) { return std::pow(10.0, db / 10.0); }

// Field (magnitude) quantities: |S21| <-> dB.
inline double db_from_linear_mag(double m) { return 20.0 * std::log10(m); }
inline double linear_mag_from_db(double db) { return std::pow(10.0, db / 20.0); }

inline double degrees_from_radians(double rad) { return rad * (180.0 / pi); }
inline double radians_from_degrees(double deg) { return deg * (pi / 180.0); }

// Parses "22.678 mm", "170 GHz", "0.05 dB" or a bare number already in the
// base unit. `dimension` is one of "length", "frequency", "db",
// "dimensionless". Throws validation_error on unknown suffixes.
double parse_quantity(const std::string& text, const std::string& dimension);

}  // namespace ffgain
