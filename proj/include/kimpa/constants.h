#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace kimpa {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;  // J s
inline constexpr double kBoltzmann = 1.380649e-23;  // J/K
inline constexpr Complex kI{0.0, 1.0};

inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
inline double power_to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

}  // namespace kimpa
